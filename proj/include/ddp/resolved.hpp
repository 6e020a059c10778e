#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddp/discourse_model.hpp"
#include "ddp/ilf.hpp"

namespace ddp {

// Fully specified logical form: every pronoun marker is replaced by an
// entity constant, names are mapped to entity constants, indefinites have
// introduced fresh entities, and tense (when present) is anchored to a time
// variable. nn atoms ride along unresolved.
struct ResolvedLf {
  Mood mood = Mood::Decl;
  std::optional<Tense> tense;
  std::string time_var;  // nonempty iff tense is anchored

  // Atom list with entity slots holding entity constants. pro, def, indef,
  // and feat atoms are gone; ev, role, name, noun, nn, adv remain.
  std::vector<Atom> atoms;

  std::map<std::string, EntityId> entity_of_var;
  std::vector<Entity> introduced;  // freshly minted by this specialization

  bool has_pro_atoms() const;
  // Eventualities described by this utterance (ids unassigned until update).
  std::vector<Eventuality> ground_events() const;
};

}  // namespace ddp
