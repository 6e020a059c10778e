#include "ddp/discourse_model.hpp"

#include <sstream>

namespace ddp {

const Entity* DiscourseModel::find(const EntityId& id) const {
  for (const Entity& e : entities)
    if (e.id == id) return &e;
  return nullptr;
}

void DiscourseModel::add_entity(Entity e) {
  if (has(e.id)) throw ContextError("duplicate entity id: " + e.id);
  entities.push_back(std::move(e));
}

void DiscourseModel::add_event(Eventuality e) {
  auto check = [this](const EntityId& id) {
    if (!has(id))
      throw ContextError("eventuality participant not in discourse model: " + id);
  };
  if (e.agent) check(*e.agent);
  if (e.theme) check(*e.theme);
  for (const auto& [theta, id] : e.others) check(id);
  eventualities.push_back(std::move(e));
}

std::vector<EntityId> DiscourseModel::entity_ids() const {
  std::vector<EntityId> out;
  out.reserve(entities.size());
  for (const Entity& e : entities) out.push_back(e.id);
  return out;
}

std::string display_name(const EntityId& id) {
  std::string stem = id.substr(0, id.find('.'));
  if (stem.empty()) return id;
  stem[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(stem[0])));
  return stem;
}

std::string event_signature(const Eventuality& e) {
  std::ostringstream out;
  out << e.pred << '(';
  bool first = true;
  auto emit = [&](const std::string& s) {
    if (!first) out << ',';
    first = false;
    out << s;
  };
  if (e.agent) emit(*e.agent);
  if (e.theme) emit(*e.theme);
  for (const auto& [theta, id] : e.others) emit(theta + ":" + id);
  out << ')';
  return out.str();
}

}  // namespace ddp
