#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddp/discourse_model.hpp"

namespace ddp {

// A ground literal: (hurt bill) or (not (hurt bill)). Predicates are
// alias-canonicalized before evaluation.
struct GroundLiteral {
  std::string pred;
  std::vector<std::string> args;
  bool negated = false;

  bool operator==(const GroundLiteral&) const = default;
  auto operator<=>(const GroundLiteral&) const = default;
  GroundLiteral negation() const { return {pred, args, !negated}; }
  GroundLiteral positive() const { return {pred, args, false}; }
  std::string str() const;
};

// Antecedent/consequent pattern: arguments are '?'-prefixed variables or
// constants. Antecedents are positive; consequents may be negated.
struct Pattern {
  std::string pred;
  std::vector<std::string> args;
  bool negated = false;
  std::string str() const;
};

struct Rule {
  std::string id;
  std::vector<Pattern> antecedent;  // empty for an unconditional default
  Pattern consequent;
  bool defeasible = true;
  std::vector<std::string> more_specific_than;
  bool is_default() const { return antecedent.empty(); }
};

// Declarative world knowledge, immutable after load. File format, one form
// per line (';' comments):
//
//   (rule HIT defeasible (hit ?e ?x ?y) (hurt ?y))
//   (rule STRONG-HIT defeasible (and (hit ?e ?x ?y) (abnormally-strong ?y))
//         (hurt ?x) (more-specific-than HIT))
//   (fact (abnormally-strong terminator))
//   (default (abnormally-strong arnold))
//   (alias injured hurt)
//
// Load-time validation: unique ids, ground facts and defaults, positive
// antecedents, acyclic specificity, and the Penguin side condition (a rule's
// antecedent must subsume every declared parent's antecedent by pattern
// matching).
class KnowledgeBase {
 public:
  static KnowledgeBase parse(std::string_view text);
  static KnowledgeBase load_file(const std::string& path);

  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<GroundLiteral>& facts() const { return facts_; }

  std::string canon(const std::string& pred) const;
  GroundLiteral canon(const GroundLiteral& lit) const;
  const Rule* find_rule(const std::string& id) const;

  // True iff a path of more-specific-than declarations leads a -> b.
  bool more_specific(const std::string& a, const std::string& b) const;

  // Subsumption witness computed at load: parent antecedent variable ->
  // child antecedent term, keyed by (child id, parent id).
  const std::map<std::string, std::string>* subsumption_witness(
      const std::string& child, const std::string& parent) const;

  bool empty() const { return rules_.empty() && facts_.empty(); }

 private:
  void validate();

  std::vector<Rule> rules_;
  std::vector<GroundLiteral> facts_;
  std::map<std::string, std::string> aliases_;
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>>
      witnesses_;
};

enum class WkSupport { Supported, Opposed, Neutral, Conflicted };
enum class WkOverall { Determinate, Indeterminate, Abstain };

struct WkActivation {
  std::string rule_id;
  GroundLiteral conclusion;
  enum Status { Fired, Silenced, Conditional } status = Fired;
  std::string silenced_by;  // rule id (or "fact") when Silenced
  int world = -1;           // branch index, -1 when unconditional
};

struct WkVerdict {
  std::vector<WkSupport> support;  // aligned with the hypothesis list
  WkOverall overall = WkOverall::Abstain;
  std::vector<size_t> top;  // winner (determinate) or tied set (indeterminate)
  bool nixon = false;
  std::vector<WkActivation> trace;

  std::optional<size_t> winner() const {
    if (overall == WkOverall::Determinate && top.size() == 1) return top[0];
    return std::nullopt;
  }
};

// Evaluates the knowledge base against the discourse model for each
// hypothesized specialization of the current utterance. hypotheses[i] holds
// the ground literals asserted by candidate assignment i.
//
// Rules chain one step over the prior discourse model plus fact lookup.
// Contradictory defaults branch the evaluation (Nixon Diamond at the fact
// level); declared specificity silences the more general rule instance
// (Penguin Principle). An assignment is supported when some branch derives
// one of its literals, opposed when some branch derives a negation.
WkVerdict wk_preference(const std::vector<std::vector<GroundLiteral>>& hypotheses,
                        const DiscourseModel& model, const KnowledgeBase& kb);

}  // namespace ddp
