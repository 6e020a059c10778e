#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddp/context.hpp"
#include "ddp/worldkb.hpp"

namespace ddp {

enum class Status { Determinate, Ambiguous, InfelicitousTie };
enum class Winner { Sem, Att, Lf, AttLf, Wk, None };

std::string to_string(Status s);
std::string to_string(Winner w);

struct TraceStep {
  std::string source;   // SEM | LF | ATT | WK
  std::string verdict;
  std::string action;   // filter | set | override | join | tie
};

// Ranked combination of the LF and ATT preferences over the sem-surviving
// assignments. ATT re-ranks what it distinguishes; LF breaks ATT's ties.
// When the per-pronoun maxima cannot be satisfied jointly (two pronouns
// competing for one maximally salient entity), ATT is self-conflicted and
// contributes nothing, leaving LF in charge.
struct CombinedGrammatical {
  std::vector<std::vector<size_t>> groups;  // assignment indices, best first
  bool joined = false;        // ATT determinate and LF picked the same
  bool tiebreak = false;      // ATT top tie broken by LF
  bool att_self_conflict = false;
  bool att_determinate = false;  // ATT alone has a singleton top
  bool att_informative = false;  // ATT distinguishes some assignments
  bool lf_informative = false;   // LF distinguishes some assignments

  bool determinate() const {
    return !groups.empty() && groups.front().size() == 1;
  }
};

struct PreferenceVerdict {
  std::vector<std::string> pronoun_order;   // pronoun vars by position
  std::vector<Assignment> assignments;      // sem survivors, stable order
  std::vector<std::vector<size_t>> groups;  // final ranked groups (indices)
  Status status = Status::Determinate;
  Winner winner = Winner::None;
  bool garden_path = false;
  std::vector<TraceStep> trace;

  const Assignment& top_assignment() const { return assignments[groups[0][0]]; }
  // Entities of the top group, deduplicated in rank order: "John" or the
  // members of a tie.
  std::vector<EntityId> top_entities() const;
};

struct ResolveResult {
  PreferenceVerdict verdict;
  ResolvedLf resolved;  // specialization under the top assignment
  Context output;
};

CombinedGrammatical combine_grammatical(
    const std::vector<Assignment>& assignments,
    const std::vector<std::string>& pronouns,
    const std::map<std::string, std::vector<std::vector<EntityId>>>& att_groups,
    const std::map<std::string, std::optional<EntityId>>& lf_picks);

// The full pipeline for one utterance: enumerate assignments, apply the
// indefeasible SEM filter, combine LF and ATT, let WK override, specialize
// the winner and produce the output context.
ResolveResult resolve(const Context& ctx, const Ilf& ilf);

std::vector<ResolveResult> resolve_discourse(const Context& initial,
                                             const std::vector<Ilf>& utterances);

std::string render_assignment(const Assignment& a,
                              const std::vector<std::string>& pronoun_order);

}  // namespace ddp
