#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddp/base.hpp"

namespace ddp {

struct Entity {
  EntityId id;
  Gender gender = Gender::Neuter;
  Number number = Number::Sg;
  EntityKind kind = EntityKind::Thing;
  ExpressionType introduced_as = ExpressionType::Name;
  bool accessible = true;
  int provenance = 0;  // utterance index of introduction
};

// A resolved eventuality. Rule patterns address the core arguments only:
// (pred event-id agent theme); obliques are stored but invisible to the KB.
struct Eventuality {
  std::string id;
  std::string pred;
  std::optional<EntityId> agent;
  std::optional<EntityId> theme;
  std::vector<std::pair<std::string, EntityId>> others;  // (theta, entity)
  std::optional<AdverbTrigger> adverb;
  int provenance = 0;
};

struct DiscourseModel {
  std::vector<Entity> entities;
  std::vector<Eventuality> eventualities;

  const Entity* find(const EntityId& id) const;
  bool has(const EntityId& id) const { return find(id) != nullptr; }
  void add_entity(Entity e);  // throws ContextError on duplicate id
  void add_event(Eventuality e);
  std::vector<EntityId> entity_ids() const;
};

// "Boy" for boy.1, "John" for john. Used by reports and traces.
std::string display_name(const EntityId& id);

std::string event_signature(const Eventuality& e);

}  // namespace ddp
