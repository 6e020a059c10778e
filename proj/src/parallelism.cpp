#include "ddp/parallelism.hpp"

#include <algorithm>
#include <set>

namespace ddp {

std::optional<EntityId> para_preference(const LfRegister& reg,
                                        const SurfaceInfo& current_surface,
                                        const std::string& pronoun_var,
                                        const std::vector<EntityId>& candidates) {
  auto it = current_surface.nominals.find(pronoun_var);
  if (it == current_surface.nominals.end()) return std::nullopt;
  const GrammaticalFunction gf = it->second.gf;

  std::set<EntityId> matched;
  for (const auto& [var, info] : reg.surface.nominals) {
    if (info.gf != gf) continue;
    auto ent = reg.resolved.entity_of_var.find(var);
    if (ent != reg.resolved.entity_of_var.end()) matched.insert(ent->second);
  }
  if (matched.size() != 1) return std::nullopt;
  const EntityId& pick = *matched.begin();
  if (std::find(candidates.begin(), candidates.end(), pick) == candidates.end())
    return std::nullopt;
  return pick;
}

}  // namespace ddp
