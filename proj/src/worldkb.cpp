#include "ddp/worldkb.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace ddp {
namespace {

// Minimal s-expression reader for the KB format.
struct Sexp {
  std::string atom;  // valid when leaf
  std::vector<Sexp> items;
  bool leaf = false;

  const std::string& head() const {
    static const std::string empty;
    if (leaf || items.empty()) return empty;
    return items.front().leaf ? items.front().atom : empty;
  }
};

class SexpReader {
 public:
  explicit SexpReader(std::string_view src) : src_(src) {}

  std::vector<Sexp> read_all() {
    std::vector<Sexp> out;
    skip();
    while (pos_ < src_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  Sexp read() {
    skip();
    if (pos_ >= src_.size()) throw KbError("unexpected end of KB input");
    if (src_[pos_] == '(') {
      ++pos_;
      Sexp s;
      skip();
      while (pos_ < src_.size() && src_[pos_] != ')') {
        s.items.push_back(read());
        skip();
      }
      if (pos_ >= src_.size()) throw KbError("unbalanced '(' in KB input");
      ++pos_;
      return s;
    }
    if (src_[pos_] == ')') throw KbError("unexpected ')' in KB input");
    Sexp s;
    s.leaf = true;
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
           src_[pos_] != '(' && src_[pos_] != ')')
      s.atom.push_back(src_[pos_++]);
    return s;
  }

  void skip() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
};

bool is_variable(const std::string& s) { return !s.empty() && s[0] == '?'; }

Pattern parse_pattern(const Sexp& s, bool allow_negation) {
  if (s.leaf) throw KbError("expected pattern list, got '" + s.atom + "'");
  if (s.head() == "not") {
    if (!allow_negation) throw KbError("negation not allowed in antecedents");
    if (s.items.size() != 2)
      throw KbError("(not ...) takes exactly one pattern");
    Pattern p = parse_pattern(s.items[1], false);
    p.negated = true;
    return p;
  }
  Pattern p;
  if (s.items.empty() || !s.items[0].leaf)
    throw KbError("pattern must start with a predicate symbol");
  p.pred = s.items[0].atom;
  for (size_t i = 1; i < s.items.size(); ++i) {
    if (!s.items[i].leaf) throw KbError("nested terms not supported in patterns");
    p.args.push_back(s.items[i].atom);
  }
  return p;
}

GroundLiteral to_ground(const Pattern& p, const std::string& what) {
  for (const std::string& a : p.args)
    if (is_variable(a))
      throw KbError(what + " must be ground, found variable '" + a + "'");
  return {p.pred, p.args, p.negated};
}

using Binding = std::map<std::string, std::string>;

bool match_pattern(const Pattern& p, const GroundLiteral& lit, Binding& binding) {
  if (p.pred != lit.pred || p.args.size() != lit.args.size() || lit.negated)
    return false;
  Binding trial = binding;
  for (size_t i = 0; i < p.args.size(); ++i) {
    const std::string& arg = p.args[i];
    if (is_variable(arg)) {
      auto it = trial.find(arg);
      if (it == trial.end())
        trial[arg] = lit.args[i];
      else if (it->second != lit.args[i])
        return false;
    } else if (arg != lit.args[i]) {
      return false;
    }
  }
  binding = std::move(trial);
  return true;
}

GroundLiteral instantiate(const Pattern& p, const Binding& binding) {
  GroundLiteral lit{p.pred, {}, p.negated};
  for (const std::string& arg : p.args) {
    if (is_variable(arg)) {
      auto it = binding.find(arg);
      if (it == binding.end())
        throw KbError("unbound variable '" + arg + "' in consequent");
      lit.args.push_back(it->second);
    } else {
      lit.args.push_back(arg);
    }
  }
  return lit;
}

// Searches for a witness mapping parent antecedent variables to child terms
// such that every parent pattern, under the mapping, occurs in the child
// antecedent. This is the Penguin side condition phi -> psi.
bool find_subsumption(const std::vector<Pattern>& parent,
                      const std::vector<Pattern>& child, size_t index,
                      Binding& witness) {
  if (index == parent.size()) return true;
  const Pattern& pp = parent[index];
  for (const Pattern& cp : child) {
    if (pp.pred != cp.pred || pp.args.size() != cp.args.size() ||
        pp.negated != cp.negated)
      continue;
    Binding trial = witness;
    bool ok = true;
    for (size_t i = 0; i < pp.args.size(); ++i) {
      const std::string& pa = pp.args[i];
      const std::string& ca = cp.args[i];
      if (is_variable(pa)) {
        auto it = trial.find(pa);
        if (it == trial.end())
          trial[pa] = ca;
        else if (it->second != ca)
          ok = false;
      } else if (pa != ca) {
        ok = false;
      }
      if (!ok) break;
    }
    if (!ok) continue;
    Binding saved = std::move(witness);
    witness = trial;
    if (find_subsumption(parent, child, index + 1, witness)) return true;
    witness = std::move(saved);
  }
  return false;
}

}  // namespace

std::string GroundLiteral::str() const {
  std::ostringstream out;
  if (negated) out << "(not ";
  out << '(' << pred;
  for (const std::string& a : args) out << ' ' << a;
  out << ')';
  if (negated) out << ')';
  return out.str();
}

std::string Pattern::str() const {
  std::ostringstream out;
  if (negated) out << "(not ";
  out << '(' << pred;
  for (const std::string& a : args) out << ' ' << a;
  out << ')';
  if (negated) out << ')';
  return out.str();
}

KnowledgeBase KnowledgeBase::parse(std::string_view text) {
  KnowledgeBase kb;
  SexpReader reader(text);
  int default_count = 0;
  for (const Sexp& form : reader.read_all()) {
    if (form.leaf) throw KbError("top-level atom '" + form.atom + "' in KB");
    const std::string& head = form.head();
    if (head == "rule") {
      if (form.items.size() < 5)
        throw KbError("rule form needs id, strength, antecedent, consequent");
      Rule rule;
      rule.id = form.items[1].atom;
      const std::string& strength = form.items[2].atom;
      if (strength == "defeasible") {
        rule.defeasible = true;
      } else if (strength == "indefeasible") {
        rule.defeasible = false;
      } else {
        throw KbError("rule strength must be defeasible|indefeasible, got '" +
                      strength + "'");
      }
      const Sexp& ante = form.items[3];
      if (!ante.leaf && ante.head() == "and") {
        for (size_t i = 1; i < ante.items.size(); ++i)
          rule.antecedent.push_back(parse_pattern(ante.items[i], false));
      } else {
        rule.antecedent.push_back(parse_pattern(ante, false));
      }
      rule.consequent = parse_pattern(form.items[4], true);
      for (size_t i = 5; i < form.items.size(); ++i) {
        const Sexp& extra = form.items[i];
        if (extra.head() != "more-specific-than")
          throw KbError("unknown rule clause in '" + rule.id + "'");
        for (size_t k = 1; k < extra.items.size(); ++k)
          rule.more_specific_than.push_back(extra.items[k].atom);
      }
      kb.rules_.push_back(std::move(rule));
    } else if (head == "fact") {
      if (form.items.size() != 2) throw KbError("fact form takes one literal");
      kb.facts_.push_back(to_ground(parse_pattern(form.items[1], true), "fact"));
    } else if (head == "default") {
      if (form.items.size() != 2)
        throw KbError("default form takes one literal");
      Pattern lit = parse_pattern(form.items[1], true);
      to_ground(lit, "default");
      Rule rule;
      rule.id = "default-" + std::to_string(++default_count);
      rule.consequent = lit;
      kb.rules_.push_back(std::move(rule));
    } else if (head == "alias") {
      if (form.items.size() != 3)
        throw KbError("alias form takes two predicate symbols");
      kb.aliases_[form.items[1].atom] = form.items[2].atom;
    } else {
      throw KbError("unknown KB form '" + head + "'");
    }
  }
  kb.validate();
  return kb;
}

KnowledgeBase KnowledgeBase::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw KbError("cannot open KB file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void KnowledgeBase::validate() {
  std::set<std::string> ids;
  for (const Rule& r : rules_)
    if (!ids.insert(r.id).second) throw KbError("duplicate rule id '" + r.id + "'");

  // alias cycles
  for (const auto& [from, to] : aliases_) {
    std::set<std::string> seen{from};
    std::string cur = to;
    while (aliases_.count(cur)) {
      if (!seen.insert(cur).second)
        throw KbError("alias cycle involving '" + from + "'");
      cur = aliases_.at(cur);
    }
  }

  // specificity: targets exist, graph acyclic, antecedent subsumption holds
  for (const Rule& r : rules_) {
    for (const std::string& parent_id : r.more_specific_than) {
      const Rule* parent = find_rule(parent_id);
      if (!parent)
        throw KbError("rule '" + r.id + "' declares unknown parent '" +
                      parent_id + "'");
      Binding witness;
      if (!find_subsumption(parent->antecedent, r.antecedent, 0, witness))
        throw KbError("rule '" + r.id + "' is declared more specific than '" +
                      parent_id +
                      "' but its antecedent does not entail the parent's");
      witnesses_[{r.id, parent_id}] = std::move(witness);
    }
  }
  std::set<std::string> visiting, done;
  std::function<void(const std::string&)> dfs = [&](const std::string& id) {
    if (done.count(id)) return;
    if (!visiting.insert(id).second)
      throw KbError("specificity cycle involving '" + id + "'");
    const Rule* r = find_rule(id);
    if (r)
      for (const std::string& p : r->more_specific_than) dfs(p);
    visiting.erase(id);
    done.insert(id);
  };
  for (const Rule& r : rules_) dfs(r.id);
}

std::string KnowledgeBase::canon(const std::string& pred) const {
  std::string cur = pred;
  std::set<std::string> seen;
  while (aliases_.count(cur) && seen.insert(cur).second) cur = aliases_.at(cur);
  return cur;
}

GroundLiteral KnowledgeBase::canon(const GroundLiteral& lit) const {
  GroundLiteral out = lit;
  out.pred = canon(lit.pred);
  return out;
}

const Rule* KnowledgeBase::find_rule(const std::string& id) const {
  for (const Rule& r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

bool KnowledgeBase::more_specific(const std::string& a, const std::string& b) const {
  const Rule* r = find_rule(a);
  if (!r) return false;
  for (const std::string& p : r->more_specific_than) {
    if (p == b || more_specific(p, b)) return true;
  }
  return false;
}

const std::map<std::string, std::string>* KnowledgeBase::subsumption_witness(
    const std::string& child, const std::string& parent) const {
  auto it = witnesses_.find({child, parent});
  return it == witnesses_.end() ? nullptr : &it->second;
}

namespace {

struct Instance {
  const Rule* rule;
  Binding binding;
  GroundLiteral conclusion;
  bool silenced = false;
  std::string silenced_by;
};

std::vector<GroundLiteral> model_literals(const DiscourseModel& model,
                                          const KnowledgeBase& kb) {
  std::vector<GroundLiteral> out;
  for (const Eventuality& e : model.eventualities) {
    GroundLiteral lit;
    lit.pred = kb.canon(e.pred);
    lit.args.push_back(e.id);
    if (e.agent) lit.args.push_back(*e.agent);
    if (e.theme) lit.args.push_back(*e.theme);
    out.push_back(std::move(lit));
  }
  for (const Entity& e : model.entities) {
    if (e.introduced_as == ExpressionType::IndefiniteNp)
      out.push_back({"indefinite", {e.id}, false});
  }
  return out;
}

void enumerate_bindings(const Rule& rule, size_t index,
                        const std::vector<GroundLiteral>& base, Binding& binding,
                        std::vector<Instance>& out) {
  if (index == rule.antecedent.size()) {
    out.push_back({&rule, binding, instantiate(rule.consequent, binding)});
    return;
  }
  for (const GroundLiteral& lit : base) {
    Binding saved = binding;
    if (match_pattern(rule.antecedent[index], lit, binding))
      enumerate_bindings(rule, index + 1, base, binding, out);
    binding = saved;
  }
}

// Parent instance binding implied by a child instance under the stored
// subsumption witness.
Binding induced_parent_binding(const Binding& witness, const Binding& child) {
  Binding out;
  for (const auto& [pvar, cterm] : witness) {
    if (is_variable(cterm)) {
      auto it = child.find(cterm);
      if (it != child.end()) out[pvar] = it->second;
    } else {
      out[pvar] = cterm;
    }
  }
  return out;
}

bool competing(const GroundLiteral& a, const GroundLiteral& b) {
  return a.pred == b.pred && !(a == b);
}

}  // namespace

WkVerdict wk_preference(const std::vector<std::vector<GroundLiteral>>& hypotheses,
                        const DiscourseModel& model, const KnowledgeBase& kb) {
  WkVerdict verdict;
  verdict.support.assign(hypotheses.size(), WkSupport::Neutral);

  std::vector<std::vector<GroundLiteral>> hyps;
  hyps.reserve(hypotheses.size());
  for (const auto& hs : hypotheses) {
    std::vector<GroundLiteral> canon;
    for (const GroundLiteral& h : hs) canon.push_back(kb.canon(h));
    hyps.push_back(std::move(canon));
  }

  std::vector<GroundLiteral> base = model_literals(model, kb);
  for (const GroundLiteral& f : kb.facts()) base.push_back(kb.canon(f));

  // Defaults: indefeasible facts kill contradicting defaults outright;
  // surviving contradictory pairs open branch points.
  std::vector<const Rule*> live_defaults;
  for (const Rule& r : kb.rules()) {
    if (!r.is_default()) continue;
    GroundLiteral lit = kb.canon(instantiate(r.consequent, {}));
    bool dead = false;
    for (const GroundLiteral& f : kb.facts()) {
      if (kb.canon(f) == lit.negation()) {
        dead = true;
        break;
      }
    }
    if (dead) {
      verdict.trace.push_back(
          {r.id, lit, WkActivation::Silenced, "fact", -1});
    } else {
      live_defaults.push_back(&r);
    }
  }

  std::vector<GroundLiteral> contested;  // positive forms of branch points
  std::vector<GroundLiteral> settled;    // uncontested default conclusions
  for (const Rule* d : live_defaults) {
    GroundLiteral lit = kb.canon(instantiate(d->consequent, {}));
    bool has_opposite = false;
    for (const Rule* other : live_defaults) {
      if (other == d) continue;
      GroundLiteral olit = kb.canon(instantiate(other->consequent, {}));
      if (olit == lit.negation() && !kb.more_specific(d->id, other->id) &&
          !kb.more_specific(other->id, d->id)) {
        has_opposite = true;
        break;
      }
    }
    if (has_opposite) {
      GroundLiteral pos = lit.positive();
      if (std::find(contested.begin(), contested.end(), pos) == contested.end())
        contested.push_back(pos);
      verdict.trace.push_back({d->id, lit, WkActivation::Conditional, "", -1});
    } else {
      settled.push_back(lit);
      verdict.trace.push_back({d->id, lit, WkActivation::Fired, "", -1});
    }
  }
  for (const GroundLiteral& lit : settled)
    if (!lit.negated) base.push_back(lit);

  if (contested.size() > 6)
    throw KbError("too many contested defaults for branch evaluation");
  const size_t world_count = size_t{1} << contested.size();

  std::vector<std::set<size_t>> supported_per_world;
  std::set<size_t> conflicted_any;
  std::vector<bool> supported_some(hyps.size(), false);
  std::vector<bool> opposed_some(hyps.size(), false);
  bool any_relevant = false;
  bool in_world_nixon = false;

  for (size_t w = 0; w < world_count; ++w) {
    std::vector<GroundLiteral> base_w = base;
    for (size_t i = 0; i < contested.size(); ++i)
      if (w & (size_t{1} << i)) base_w.push_back(contested[i]);

    std::vector<Instance> instances;
    for (const Rule& r : kb.rules()) {
      if (r.is_default()) continue;
      Binding binding;
      enumerate_bindings(r, 0, base_w, binding, instances);
    }
    for (Instance& inst : instances) inst.conclusion = kb.canon(inst.conclusion);

    // Penguin Principle: a firing rule silences the corresponding instance
    // of every declared ancestor whose conclusion competes with its own.
    for (const Instance& child : instances) {
      std::vector<std::pair<std::string, Binding>> frontier;
      for (const std::string& pid : child.rule->more_specific_than) {
        const auto* witness = kb.subsumption_witness(child.rule->id, pid);
        if (witness)
          frontier.emplace_back(pid, induced_parent_binding(*witness, child.binding));
      }
      while (!frontier.empty()) {
        auto [pid, pbind] = frontier.back();
        frontier.pop_back();
        for (Instance& parent : instances) {
          if (parent.rule->id != pid || parent.binding != pbind) continue;
          if (competing(parent.conclusion, child.conclusion) && !parent.silenced) {
            parent.silenced = true;
            parent.silenced_by = child.rule->id;
          }
        }
        const Rule* prule = kb.find_rule(pid);
        if (!prule) continue;
        for (const std::string& gid : prule->more_specific_than) {
          const auto* witness = kb.subsumption_witness(pid, gid);
          if (witness)
            frontier.emplace_back(gid, induced_parent_binding(*witness, pbind));
        }
      }
    }

    std::vector<GroundLiteral> consequences;
    for (const Instance& inst : instances)
      if (!inst.silenced) consequences.push_back(inst.conclusion);

    // In-world Nixon Diamond: unsilenced contradictory conclusions with no
    // specificity path between the rules.
    std::vector<GroundLiteral> contradicted;
    for (size_t i = 0; i < instances.size(); ++i) {
      if (instances[i].silenced) continue;
      for (size_t k = i + 1; k < instances.size(); ++k) {
        if (instances[k].silenced) continue;
        if (instances[i].conclusion == instances[k].conclusion.negation() &&
            !kb.more_specific(instances[i].rule->id, instances[k].rule->id) &&
            !kb.more_specific(instances[k].rule->id, instances[i].rule->id)) {
          contradicted.push_back(instances[i].conclusion.positive());
        }
      }
    }

    std::set<size_t> supported_here;
    for (size_t a = 0; a < hyps.size(); ++a) {
      bool sup = false, opp = false, conflict = false;
      for (const GroundLiteral& h : hyps[a]) {
        bool in_contra =
            std::find(contradicted.begin(), contradicted.end(), h.positive()) !=
            contradicted.end();
        if (in_contra) conflict = true;
        for (const GroundLiteral& c : consequences) {
          if (c == h) sup = true;
          if (c == h.negation()) opp = true;
        }
      }
      if (conflict || (sup && opp)) {
        conflicted_any.insert(a);
        in_world_nixon = true;
        any_relevant = true;
      } else if (sup) {
        supported_here.insert(a);
        supported_some[a] = true;
        any_relevant = true;
      } else if (opp) {
        opposed_some[a] = true;
        any_relevant = true;
      }
    }
    supported_per_world.push_back(std::move(supported_here));

    // Trace the first world fully; later worlds add only their divergences.
    for (const Instance& inst : instances) {
      WkActivation act;
      act.rule_id = inst.rule->id;
      act.conclusion = inst.conclusion;
      act.world = world_count > 1 ? static_cast<int>(w) : -1;
      if (inst.silenced) {
        act.status = WkActivation::Silenced;
        act.silenced_by = inst.silenced_by;
      }
      verdict.trace.push_back(std::move(act));
    }
  }

  bool divergence = false;
  for (size_t w = 1; w < supported_per_world.size(); ++w)
    if (supported_per_world[w] != supported_per_world[0]) divergence = true;

  for (size_t a = 0; a < hyps.size(); ++a) {
    if (conflicted_any.count(a) || (supported_some[a] && opposed_some[a]))
      verdict.support[a] = WkSupport::Conflicted;
    else if (supported_some[a])
      verdict.support[a] = WkSupport::Supported;
    else if (opposed_some[a])
      verdict.support[a] = WkSupport::Opposed;
  }

  verdict.nixon = in_world_nixon || divergence || !conflicted_any.empty();

  std::vector<size_t> leaned;
  for (size_t a = 0; a < hyps.size(); ++a)
    if (verdict.support[a] == WkSupport::Supported ||
        verdict.support[a] == WkSupport::Conflicted)
      leaned.push_back(a);

  if (!any_relevant) {
    verdict.overall = WkOverall::Abstain;
  } else if (leaned.size() == 1 && !verdict.nixon) {
    verdict.overall = WkOverall::Determinate;
    verdict.top = leaned;
  } else if (!leaned.empty()) {
    verdict.overall = WkOverall::Indeterminate;
    verdict.top = leaned;
  } else {
    // Only oppositions: prefer the non-opposed assignments.
    verdict.overall = WkOverall::Indeterminate;
    for (size_t a = 0; a < hyps.size(); ++a)
      if (verdict.support[a] != WkSupport::Opposed) verdict.top.push_back(a);
  }
  return verdict;
}

}  // namespace ddp
