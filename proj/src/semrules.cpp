#include "ddp/semrules.hpp"

#include <algorithm>

namespace ddp {

int too_similarity(const Eventuality& a, const Eventuality& b) {
  int score = 0;
  if (a.pred == b.pred) ++score;
  if (a.agent && b.agent && *a.agent == *b.agent) ++score;
  if (a.theme && b.theme && *a.theme == *b.theme) ++score;
  return score;
}

namespace {

int best_register_similarity(const Eventuality& trigger,
                             const std::optional<LfRegister>& reg) {
  if (!reg) return 0;
  int best = 0;
  for (const Eventuality& ev : reg->resolved.ground_events())
    best = std::max(best, too_similarity(trigger, ev));
  return best;
}

bool back_satisfied(const Eventuality& trigger, const DiscourseModel& model) {
  for (const Eventuality& prior : model.eventualities) {
    if (prior.pred != trigger.pred) continue;
    if (prior.agent && prior.theme && trigger.agent && trigger.theme &&
        *prior.agent == *trigger.theme && *prior.theme == *trigger.agent)
      return true;
  }
  return false;
}

}  // namespace

std::vector<SemDecision> sem_filter(
    const std::vector<std::vector<Eventuality>>& current_events,
    const std::optional<LfRegister>& reg, const DiscourseModel& model,
    const Lexicon& lexicon) {
  std::vector<SemDecision> out(current_events.size());
  if (current_events.empty()) return out;

  // Trigger positions are assignment-independent; inspect the first grounding.
  for (size_t ev_index = 0; ev_index < current_events[0].size(); ++ev_index) {
    if (!current_events[0][ev_index].adverb) continue;
    const AdverbTrigger trigger = *current_events[0][ev_index].adverb;
    auto kind = lexicon.triggers.find(trigger);
    if (kind == lexicon.triggers.end()) continue;

    if (kind->second == PresuppositionKind::Similarity) {
      std::vector<int> scores(current_events.size());
      int best = 0;
      for (size_t a = 0; a < current_events.size(); ++a) {
        scores[a] = best_register_similarity(current_events[a][ev_index], reg);
        best = std::max(best, scores[a]);
      }
      if (best == 0) continue;  // nothing similar anywhere; uninformative
      for (size_t a = 0; a < current_events.size(); ++a) {
        if (scores[a] < best && out[a].accepted) {
          out[a].accepted = false;
          out[a].reason = "too: similarity " + std::to_string(scores[a]) +
                          " below maximum " + std::to_string(best);
        }
      }
    } else {  // ReverseParallel
      bool any_same_pred = false;
      for (const Eventuality& prior : model.eventualities)
        if (prior.pred == current_events[0][ev_index].pred) any_same_pred = true;
      if (!any_same_pred)
        throw ResolveError(
            "back: no prior '" + current_events[0][ev_index].pred +
            "' eventuality in the discourse model (presupposition failure)");
      for (size_t a = 0; a < current_events.size(); ++a) {
        if (!back_satisfied(current_events[a][ev_index], model) &&
            out[a].accepted) {
          out[a].accepted = false;
          out[a].reason = "back: no prior reversed eventuality";
        }
      }
    }
  }
  return out;
}

}  // namespace ddp
