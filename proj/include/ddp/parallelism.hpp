#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddp/context.hpp"

namespace ddp {

// PARA: prefers the candidate realized in the LF register with the same
// grammatical function as the pronoun (property-sharing subcase of the
// parallelism preference). Returns nothing when the register offers no
// unique GF-matched antecedent among the candidates.
std::optional<EntityId> para_preference(const LfRegister& reg,
                                        const SurfaceInfo& current_surface,
                                        const std::string& pronoun_var,
                                        const std::vector<EntityId>& candidates);

}  // namespace ddp
