#include "ddp/context.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace ddp {

Lexicon Lexicon::standard() {
  Lexicon lex;
  lex.triggers[AdverbTrigger::Too] = PresuppositionKind::Similarity;
  lex.triggers[AdverbTrigger::Back] = PresuppositionKind::ReverseParallel;
  return lex;
}

Context init_context(std::shared_ptr<const KnowledgeBase> kb,
                     std::map<std::string, EntityId> indexicals) {
  Context ctx;
  ctx.lexicon = Lexicon::standard();
  ctx.world_kb = std::move(kb);
  ctx.indexicals = std::move(indexicals);
  return ctx;
}

std::map<std::string, std::vector<EntityId>> candidate_referents(
    const Ilf& ilf, const Context& ctx) {
  std::map<std::string, std::vector<EntityId>> out;
  for (const ProAtom* pro : ilf.pronouns()) {
    std::vector<EntityId>& candidates = out[pro->var];
    for (const Entity& e : ctx.discourse_model.entities) {
      if (!e.accessible) continue;
      if (e.gender != pro->gender || e.number != pro->number) continue;
      candidates.push_back(e.id);
    }
  }
  return out;
}

namespace {

struct NominalInfo {
  Gender gender = Gender::Neuter;
  Number number = Number::Sg;
  bool has_feat = false;
};

EntityKind infer_kind(Gender g, Number n) {
  if (n == Number::Pl) return EntityKind::Group;
  if (g == Gender::Male || g == Gender::Female) return EntityKind::Person;
  return EntityKind::Thing;
}

}  // namespace

ResolvedLf specialize(const Ilf& ilf, const Assignment& assignment,
                      const Context& ctx) {
  auto candidates = candidate_referents(ilf, ctx);
  for (const ProAtom* pro : ilf.pronouns()) {
    auto it = assignment.find(pro->var);
    if (it == assignment.end())
      throw ResolveError("incomplete assignment: pronoun '" + pro->var +
                         "' is unassigned");
    const auto& pool = candidates.at(pro->var);
    if (std::find(pool.begin(), pool.end(), it->second) == pool.end())
      throw ResolveError("assignment of '" + pro->var + "' to '" + it->second +
                         "' is not a candidate referent");
  }

  ResolvedLf out;
  out.mood = ilf.mood;
  out.tense = ilf.tense;
  if (out.tense) out.time_var = "t";

  // Feature annotations for fresh entities.
  std::map<std::string, NominalInfo> feats;
  for (const Atom& atom : ilf.atoms) {
    if (const auto* f = std::get_if<FeatAtom>(&atom)) {
      feats[f->var] = {f->gender, f->number, true};
    } else if (const auto* i = std::get_if<IndefAtom>(&atom)) {
      if (!feats.count(i->var)) feats[i->var] = {Gender::Neuter, i->number, false};
    }
  }

  // Deterministic fresh ids: head noun (or "entity") plus a running index
  // that continues the discourse model's count for that stem.
  std::map<std::string, int> stem_counts;
  auto mint = [&](const std::string& stem) {
    int& local = stem_counts[stem];
    if (local == 0) {
      for (const Entity& e : ctx.discourse_model.entities)
        if (e.id.rfind(stem + ".", 0) == 0) ++local;
    }
    ++local;
    return stem + "." + std::to_string(local);
  };

  auto introduce = [&](const std::string& var, ExpressionType expr,
                       const EntityId& id) {
    NominalInfo info = feats.count(var) ? feats[var] : NominalInfo{};
    Entity e;
    e.id = id;
    e.gender = info.gender;
    e.number = info.number;
    e.kind = infer_kind(info.gender, info.number);
    e.introduced_as = expr;
    out.introduced.push_back(std::move(e));
  };

  for (const Atom& atom : ilf.atoms) {
    if (const auto* p = std::get_if<ProAtom>(&atom)) {
      out.entity_of_var[p->var] = assignment.at(p->var);
    } else if (const auto* n = std::get_if<NameAtom>(&atom)) {
      // Names denote entity constants by exact string match; first mention
      // introduces the entity.
      out.entity_of_var[n->var] = n->name;
      if (!ctx.discourse_model.has(n->name))
        introduce(n->var, ExpressionType::Name, n->name);
    } else if (const auto* d = std::get_if<DefAtom>(&atom)) {
      const NounAtom* noun = ilf.noun_of(d->var);
      EntityId id = mint(noun ? noun->pred : "entity");
      out.entity_of_var[d->var] = id;
      introduce(d->var, ExpressionType::DefiniteNp, id);
    } else if (const auto* i = std::get_if<IndefAtom>(&atom)) {
      const NounAtom* noun = ilf.noun_of(i->var);
      EntityId id = mint(noun ? noun->pred : "entity");
      out.entity_of_var[i->var] = id;
      introduce(i->var, ExpressionType::IndefiniteNp, id);
    }
  }

  auto entity_of = [&](const std::string& var) -> std::string {
    auto it = out.entity_of_var.find(var);
    return it != out.entity_of_var.end() ? it->second : var;
  };

  for (const Atom& atom : ilf.atoms) {
    if (std::holds_alternative<ProAtom>(atom) ||
        std::holds_alternative<DefAtom>(atom) ||
        std::holds_alternative<IndefAtom>(atom) ||
        std::holds_alternative<FeatAtom>(atom))
      continue;
    Atom copy = atom;
    if (auto* r = std::get_if<RoleAtom>(&copy)) {
      r->entity_var = entity_of(r->entity_var);
    } else if (auto* n = std::get_if<NameAtom>(&copy)) {
      n->var = entity_of(n->var);
    } else if (auto* n = std::get_if<NounAtom>(&copy)) {
      n->var = entity_of(n->var);
    } else if (auto* n = std::get_if<NnAtom>(&copy)) {
      n->var = entity_of(n->var);
    }
    out.atoms.push_back(std::move(copy));
  }
  return out;
}

Context update(const Context& ctx, const ResolvedLf& resolved,
               const SurfaceInfo& surface) {
  if (resolved.has_pro_atoms())
    throw ContextError("update requires a fully resolved logical form");

  Context next = ctx;
  next.utterance_index = ctx.utterance_index + 1;

  std::set<EntityId> fresh;
  for (const Entity& e : resolved.introduced) fresh.insert(e.id);
  for (const auto& [var, id] : resolved.entity_of_var) {
    if (!ctx.discourse_model.has(id) && !fresh.count(id))
      throw ContextError("unknown entity constant '" + id +
                         "' in resolved form");
  }

  for (Entity e : resolved.introduced) {
    e.provenance = next.utterance_index;
    next.discourse_model.add_entity(std::move(e));
  }
  for (Eventuality e : resolved.ground_events()) {
    e.id = "u" + std::to_string(next.utterance_index) + "." + e.id;
    e.provenance = next.utterance_index;
    next.discourse_model.add_event(std::move(e));
  }

  std::map<std::string, EntityId> entity_map = resolved.entity_of_var;
  std::optional<EntityId> center =
      update_center(surface, entity_map, ctx.attention.center);
  next.attention = salience_order(center, surface, entity_map,
                                  next.discourse_model.entity_ids());
  next.lf_register = LfRegister{resolved, surface};
  return next;
}

std::string dump_context_json(const Context& ctx) {
  nlohmann::json j;
  j["entities"] = nlohmann::json::array();
  for (const Entity& e : ctx.discourse_model.entities) {
    j["entities"].push_back({{"id", e.id},
                             {"gender", to_string(e.gender)},
                             {"number", to_string(e.number)},
                             {"kind", to_string(e.kind)},
                             {"introduced_as", to_string(e.introduced_as)},
                             {"accessible", e.accessible},
                             {"utterance", e.provenance}});
  }
  j["events"] = nlohmann::json::array();
  for (const Eventuality& e : ctx.discourse_model.eventualities) {
    nlohmann::json ev{{"id", e.id}, {"pred", e.pred}, {"utterance", e.provenance}};
    if (e.agent) ev["agent"] = *e.agent;
    if (e.theme) ev["theme"] = *e.theme;
    for (const auto& [theta, id] : e.others) ev["others"][theta] = id;
    if (e.adverb) ev["adverb"] = to_string(*e.adverb);
    j["events"].push_back(ev);
  }
  j["salience"] = nlohmann::json::array();
  for (const auto& group : ctx.attention.ranks) j["salience"].push_back(group);
  j["center"] = ctx.attention.center ? nlohmann::json(*ctx.attention.center)
                                     : nlohmann::json(nullptr);
  if (ctx.lf_register) {
    nlohmann::json reg;
    reg["mood"] = to_string(ctx.lf_register->resolved.mood);
    if (ctx.lf_register->resolved.tense)
      reg["tense"] = to_string(*ctx.lf_register->resolved.tense);
    nlohmann::json events = nlohmann::json::array();
    for (const Eventuality& e : ctx.lf_register->resolved.ground_events())
      events.push_back(event_signature(e));
    reg["events"] = events;
    j["lf_register"] = reg;
  } else {
    j["lf_register"] = nullptr;
  }
  return j.dump();
}

}  // namespace ddp
