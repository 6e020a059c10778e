#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddp/context.hpp"

namespace ddp {

struct SemDecision {
  bool accepted = true;
  std::string reason;
};

// Similarity presupposed by 'too': the number of shared components among
// {predicate, agent, theme}. Symmetric.
int too_similarity(const Eventuality& a, const Eventuality& b);

// Indefeasible presupposition filter over candidate assignments.
// current_events[i] holds the utterance's eventualities ground under
// assignment i; events carrying an adverb trigger its presupposition.
//
//   TOO  — accept the assignments whose triggering event maximizes
//          similarity with a register eventuality (ties accept several).
//   BACK — accept iff the discourse model contains a prior eventuality with
//          the same predicate and agent/theme swapped. Throws ResolveError
//          when no same-predicate eventuality exists at all.
//
// Utterances without adverbs are accepted vacuously.
std::vector<SemDecision> sem_filter(
    const std::vector<std::vector<Eventuality>>& current_events,
    const std::optional<LfRegister>& reg, const DiscourseModel& model,
    const Lexicon& lexicon);

}  // namespace ddp
