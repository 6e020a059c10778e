#include "ddp/resolver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "ddp/attention.hpp"
#include "ddp/parallelism.hpp"
#include "ddp/semrules.hpp"

namespace ddp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Determinate: return "determinate";
    case Status::Ambiguous: return "ambiguous";
    case Status::InfelicitousTie: return "infelicitous-tie";
  }
  return "determinate";
}

std::string to_string(Winner w) {
  switch (w) {
    case Winner::Sem: return "SEM";
    case Winner::Att: return "ATT";
    case Winner::Lf: return "LF";
    case Winner::AttLf: return "ATT+LF";
    case Winner::Wk: return "WK";
    case Winner::None: return "none";
  }
  return "none";
}

std::string render_assignment(const Assignment& a,
                              const std::vector<std::string>& pronoun_order) {
  std::ostringstream out;
  bool first = true;
  for (const std::string& var : pronoun_order) {
    auto it = a.find(var);
    if (it == a.end()) continue;
    if (!first) out << '-';
    first = false;
    out << display_name(it->second);
  }
  return first ? std::string("(none)") : out.str();
}

std::vector<EntityId> PreferenceVerdict::top_entities() const {
  std::vector<EntityId> out;
  if (groups.empty()) return out;
  for (size_t idx : groups[0])
    for (const std::string& var : pronoun_order) {
      auto it = assignments[idx].find(var);
      if (it == assignments[idx].end()) continue;
      if (std::find(out.begin(), out.end(), it->second) == out.end())
        out.push_back(it->second);
    }
  return out;
}

namespace {

// Cartesian product of candidate sets under referential disjointness.
// If disjointness empties the space, features force co-reference and the
// constraint is dropped.
std::vector<Assignment> enumerate_assignments(
    const std::vector<std::string>& pronouns,
    const std::map<std::string, std::vector<EntityId>>& candidates,
    bool* forced_coref) {
  *forced_coref = false;
  for (int relax = 0; relax < 2; ++relax) {
    std::vector<Assignment> out;
    Assignment current;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == pronouns.size()) {
        out.push_back(current);
        return;
      }
      for (const EntityId& id : candidates.at(pronouns[i])) {
        if (!relax) {
          bool taken = false;
          for (const auto& [var, chosen] : current)
            if (chosen == id) taken = true;
          if (taken) continue;
        }
        current[pronouns[i]] = id;
        rec(i + 1);
        current.erase(pronouns[i]);
      }
    };
    rec(0);
    if (!out.empty()) {
      *forced_coref = relax > 0;
      return out;
    }
    if (pronouns.empty()) return {Assignment{}};
  }
  return {};
}

struct Layers {
  std::vector<std::vector<size_t>> layers;
  std::vector<size_t> layer_of;  // per assignment index
};

// Peels maximal elements of the product order over per-pronoun ATT ranks.
Layers product_layers(const std::vector<std::vector<int>>& rank_vectors) {
  const size_t n = rank_vectors.size();
  Layers out;
  out.layer_of.assign(n, 0);
  std::vector<bool> placed(n, false);
  size_t remaining = n;
  size_t layer = 0;
  auto dominates = [&](size_t a, size_t b) {
    bool strict = false;
    for (size_t i = 0; i < rank_vectors[a].size(); ++i) {
      if (rank_vectors[a][i] > rank_vectors[b][i]) return false;
      if (rank_vectors[a][i] < rank_vectors[b][i]) strict = true;
    }
    return strict;
  };
  while (remaining > 0) {
    std::vector<size_t> maximal;
    for (size_t a = 0; a < n; ++a) {
      if (placed[a]) continue;
      bool dominated = false;
      for (size_t b = 0; b < n; ++b)
        if (!placed[b] && b != a && dominates(b, a)) dominated = true;
      if (!dominated) maximal.push_back(a);
    }
    for (size_t a : maximal) {
      placed[a] = true;
      out.layer_of[a] = layer;
    }
    remaining -= maximal.size();
    out.layers.push_back(std::move(maximal));
    ++layer;
  }
  return out;
}

std::string render_groups(const std::vector<std::vector<size_t>>& groups,
                          const std::vector<Assignment>& assignments,
                          const std::vector<std::string>& order) {
  std::ostringstream out;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (g) out << '>';
    for (size_t i = 0; i < groups[g].size(); ++i) {
      if (i) out << '/';
      out << render_assignment(assignments[groups[g][i]], order);
    }
  }
  return out.str();
}

}  // namespace

CombinedGrammatical combine_grammatical(
    const std::vector<Assignment>& assignments,
    const std::vector<std::string>& pronouns,
    const std::map<std::string, std::vector<std::vector<EntityId>>>& att_groups,
    const std::map<std::string, std::optional<EntityId>>& lf_picks) {
  CombinedGrammatical cg;
  const size_t n = assignments.size();

  // Per-assignment ATT rank vector, restricted to the candidate set.
  std::vector<std::vector<int>> rank_vectors(n);
  for (size_t a = 0; a < n; ++a) {
    for (const std::string& p : pronouns) {
      const auto& groups = att_groups.at(p);
      int rank = static_cast<int>(groups.size());
      const EntityId& chosen = assignments[a].at(p);
      for (size_t g = 0; g < groups.size(); ++g)
        if (std::find(groups[g].begin(), groups[g].end(), chosen) !=
            groups[g].end()) {
          rank = static_cast<int>(g);
          break;
        }
      rank_vectors[a].push_back(rank);
    }
  }

  cg.att_self_conflict =
      !pronouns.empty() &&
      std::none_of(rank_vectors.begin(), rank_vectors.end(), [](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](int r) { return r == 0; });
      });

  Layers layers;
  if (cg.att_self_conflict || pronouns.empty()) {
    layers.layer_of.assign(n, 0);
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    layers.layers.push_back(std::move(all));
  } else {
    layers = product_layers(rank_vectors);
  }
  cg.att_informative = !cg.att_self_conflict && layers.layers.size() > 1;
  cg.att_determinate = !cg.att_self_conflict && !layers.layers.empty() &&
                       layers.layers.front().size() == 1;

  // LF: count of pronouns whose referent matches the parallelism pick.
  std::vector<int> matches(n, 0);
  bool any_pick = false;
  for (size_t a = 0; a < n; ++a)
    for (const std::string& p : pronouns) {
      auto it = lf_picks.find(p);
      if (it == lf_picks.end() || !it->second) continue;
      any_pick = true;
      if (assignments[a].at(p) == *it->second) ++matches[a];
    }
  cg.lf_informative =
      any_pick && n > 1 &&
      !std::equal(matches.begin() + 1, matches.end(), matches.begin());

  // Later source first: ATT layer, then LF match count, then stable order.
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  auto key = [&](size_t a) {
    return std::make_pair(layers.layer_of[a], -matches[a]);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return key(a) < key(b); });
  for (size_t i = 0; i < n; ++i) {
    if (i == 0 || key(order[i]) != key(order[i - 1]))
      cg.groups.push_back({order[i]});
    else
      cg.groups.back().push_back(order[i]);
  }

  if (cg.determinate() && cg.lf_informative) {
    size_t top = cg.groups[0][0];
    bool lf_best = true;
    for (size_t a = 0; a < n; ++a)
      if (matches[a] > matches[top]) lf_best = false;
    if (lf_best && cg.att_determinate &&
        layers.layers.front().front() == top) {
      cg.joined = true;
    } else if (lf_best && !cg.att_determinate && !cg.att_self_conflict &&
               layers.layer_of[top] == 0) {
      cg.tiebreak = true;
    }
  }
  return cg;
}

namespace {

Winner grammatical_winner(const CombinedGrammatical& cg) {
  if (cg.determinate()) {
    if (cg.joined || cg.tiebreak) return Winner::AttLf;
    if (cg.att_self_conflict) return Winner::Lf;
    if (cg.att_determinate) return Winner::Att;
    return Winner::Att;
  }
  if (cg.att_informative) return Winner::Att;
  if (cg.lf_informative) return Winner::Lf;
  return Winner::None;
}

std::vector<std::vector<GroundLiteral>> build_hypotheses(
    const Ilf& ilf, const std::vector<Assignment>& assignments,
    const Context& ctx) {
  std::vector<std::vector<GroundLiteral>> out;
  out.reserve(assignments.size());
  for (const Assignment& a : assignments) {
    std::vector<GroundLiteral> literals;
    for (const Eventuality& ev : specialize(ilf, a, ctx).ground_events()) {
      GroundLiteral lit;
      lit.pred = ev.pred;
      if (ev.agent) lit.args.push_back(*ev.agent);
      if (ev.theme) lit.args.push_back(*ev.theme);
      literals.push_back(std::move(lit));
    }
    out.push_back(std::move(literals));
  }
  return out;
}

std::string render_entity_groups(const std::vector<std::vector<EntityId>>& groups) {
  std::ostringstream out;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (g) out << '>';
    for (size_t i = 0; i < groups[g].size(); ++i) {
      if (i) out << '/';
      out << display_name(groups[g][i]);
    }
  }
  return out.str();
}

}  // namespace

ResolveResult resolve(const Context& ctx, const Ilf& ilf) {
  PreferenceVerdict verdict;
  for (const ProAtom* pro : ilf.pronouns())
    verdict.pronoun_order.push_back(pro->var);

  auto candidates = candidate_referents(ilf, ctx);
  for (const auto& [var, pool] : candidates)
    if (pool.empty())
      throw ResolveError("no candidate referent for pronoun '" + var + "'");

  bool forced_coref = false;
  std::vector<Assignment> space =
      enumerate_assignments(verdict.pronoun_order, candidates, &forced_coref);
  if (space.empty())
    throw ResolveError("assignment space is empty");

  // Indefeasible SEM filter.
  std::vector<std::vector<Eventuality>> grounded;
  grounded.reserve(space.size());
  for (const Assignment& a : space)
    grounded.push_back(specialize(ilf, a, ctx).ground_events());
  std::vector<SemDecision> decisions =
      sem_filter(grounded, ctx.lf_register, ctx.discourse_model, ctx.lexicon);

  size_t rejected = 0;
  for (size_t i = 0; i < space.size(); ++i) {
    if (decisions[i].accepted)
      verdict.assignments.push_back(space[i]);
    else
      ++rejected;
  }
  if (verdict.assignments.empty())
    throw ResolveError("presupposition rejects every candidate assignment");

  const bool has_adverbs = !ilf.adverbs().empty();
  if (has_adverbs) {
    std::vector<std::vector<size_t>> survivors{{}};
    for (size_t i = 0; i < verdict.assignments.size(); ++i)
      survivors[0].push_back(i);
    verdict.trace.push_back(
        {"SEM",
         render_groups(survivors, verdict.assignments, verdict.pronoun_order),
         "filter"});
  }
  if (forced_coref)
    verdict.trace.push_back({"SEM", "coreference forced by features", "set"});

  const size_t n = verdict.assignments.size();

  if (n == 1) {
    verdict.groups = {{0}};
    verdict.status = Status::Determinate;
    verdict.winner = rejected > 0 ? Winner::Sem : Winner::None;
  } else {
    // Defeasible sources.
    std::map<std::string, std::optional<EntityId>> lf_picks;
    for (const std::string& p : verdict.pronoun_order) {
      std::optional<EntityId> pick;
      if (ctx.lf_register)
        pick = para_preference(*ctx.lf_register, ilf.surface, p,
                               candidates.at(p));
      lf_picks[p] = pick;
    }
    {
      std::ostringstream lf_line;
      bool first = true;
      for (const std::string& p : verdict.pronoun_order) {
        if (!lf_picks[p]) continue;
        if (!first) lf_line << ',';
        first = false;
        lf_line << p << '=' << display_name(*lf_picks[p]);
      }
      verdict.trace.push_back(
          {"LF", first ? "none" : lf_line.str(), "set"});
    }

    std::map<std::string, std::vector<std::vector<EntityId>>> att_groups;
    for (const std::string& p : verdict.pronoun_order)
      att_groups[p] = att_preference(candidates.at(p), ctx.attention);

    CombinedGrammatical cg =
        combine_grammatical(verdict.assignments, verdict.pronoun_order,
                            att_groups, lf_picks);
    {
      std::string att_verdict;
      if (verdict.pronoun_order.size() == 1) {
        att_verdict = render_entity_groups(att_groups[verdict.pronoun_order[0]]);
      } else {
        att_verdict =
            render_groups(cg.groups, verdict.assignments, verdict.pronoun_order);
        if (cg.att_self_conflict) att_verdict += "?";
      }
      std::string action = cg.joined ? "join"
                           : cg.att_self_conflict || !cg.att_determinate
                               ? "tie"
                               : "override";
      verdict.trace.push_back({"ATT", att_verdict, action});
    }

    WkVerdict wk =
        wk_preference(build_hypotheses(ilf, verdict.assignments, ctx),
                      ctx.discourse_model, *ctx.world_kb);

    const bool cg_determinate = cg.determinate();
    const size_t cg_top = cg.groups.empty() ? 0 : cg.groups[0][0];

    auto cg_rank = [&](size_t a) {
      for (size_t g = 0; g < cg.groups.size(); ++g)
        if (std::find(cg.groups[g].begin(), cg.groups[g].end(), a) !=
            cg.groups[g].end())
          return g;
      return cg.groups.size();
    };
    auto regroup = [&](auto primary_key) {
      std::vector<size_t> order(n);
      for (size_t i = 0; i < n; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        auto ka = std::make_pair(primary_key(a), cg_rank(a));
        auto kb = std::make_pair(primary_key(b), cg_rank(b));
        return ka < kb;
      });
      verdict.groups.clear();
      for (size_t i = 0; i < n; ++i) {
        auto k = std::make_pair(primary_key(order[i]), cg_rank(order[i]));
        if (i == 0 || k != std::make_pair(primary_key(order[i - 1]),
                                          cg_rank(order[i - 1])))
          verdict.groups.push_back({order[i]});
        else
          verdict.groups.back().push_back(order[i]);
      }
    };

    auto wk_top_set = [&]() {
      std::set<size_t> s(wk.top.begin(), wk.top.end());
      return s;
    };

    switch (wk.overall) {
      case WkOverall::Abstain: {
        verdict.groups = cg.groups;
        verdict.status = cg_determinate ? Status::Determinate : Status::Ambiguous;
        verdict.winner = grammatical_winner(cg);
        verdict.trace.push_back({"WK", "unclear", "set"});
        break;
      }
      case WkOverall::Determinate: {
        const size_t w = wk.top[0];
        regroup([&](size_t a) { return a == w ? 0 : 1; });
        verdict.status = Status::Determinate;
        verdict.winner = Winner::Wk;
        if (cg_determinate && cg_top != w) {
          // Garden path: a Center-chained SUBJECT pronoun was the
          // grammatical choice and commonsense retracts it.
          const Assignment& cg_best = verdict.assignments[cg_top];
          for (const std::string& p : verdict.pronoun_order) {
            const NominalSurface& info = ilf.surface.nominals.at(p);
            if (info.gf == GrammaticalFunction::Subject &&
                is_pronominal(info.expression) && ctx.attention.center &&
                cg_best.at(p) == *ctx.attention.center)
              verdict.garden_path = true;
          }
        }
        verdict.trace.push_back(
            {"WK", render_assignment(verdict.assignments[w], verdict.pronoun_order),
             cg_determinate && cg_top != w ? "override" : "join"});
        break;
      }
      case WkOverall::Indeterminate: {
        auto top = wk_top_set();
        std::string wk_render;
        {
          std::vector<std::vector<size_t>> g{{}};
          g[0].assign(wk.top.begin(), wk.top.end());
          wk_render = render_groups(g, verdict.assignments, verdict.pronoun_order);
        }
        if (wk.nixon) {
          // The commonsense conflict itself is unresolved; its ambiguity is
          // the verdict.
          regroup([&](size_t a) { return top.count(a) ? 0 : 1; });
          verdict.status = Status::Ambiguous;
          verdict.winner = Winner::Wk;
        } else if (cg_determinate) {
          // Cross-source Nixon Diamond: determinate grammar against
          // multi-supported commonsense.
          auto tied = top;
          tied.insert(cg_top);
          regroup([&](size_t a) { return tied.count(a) ? 0 : 1; });
          verdict.status = Status::InfelicitousTie;
          verdict.winner = Winner::None;
        } else {
          regroup([&](size_t a) { return top.count(a) ? 0 : 1; });
          verdict.status = verdict.groups[0].size() == 1 ? Status::Determinate
                                                         : Status::Ambiguous;
          verdict.winner = Winner::Wk;
        }
        verdict.trace.push_back({"WK", wk_render, "tie"});
        break;
      }
    }
  }

  ResolveResult result{std::move(verdict), {}, {}};
  result.resolved =
      specialize(ilf, result.verdict.top_assignment(), ctx);
  result.output = update(ctx, result.resolved, ilf.surface);
  return result;
}

std::vector<ResolveResult> resolve_discourse(const Context& initial,
                                             const std::vector<Ilf>& utterances) {
  std::vector<ResolveResult> out;
  Context ctx = initial;
  for (const Ilf& ilf : utterances) {
    out.push_back(resolve(ctx, ilf));
    ctx = out.back().output;
  }
  return out;
}

}  // namespace ddp
