#include "ddp/resolved.hpp"

#include <variant>

namespace ddp {

bool ResolvedLf::has_pro_atoms() const {
  for (const Atom& atom : atoms)
    if (std::holds_alternative<ProAtom>(atom)) return true;
  return false;
}

std::vector<Eventuality> ResolvedLf::ground_events() const {
  std::vector<Eventuality> out;
  for (const Atom& atom : atoms) {
    if (const auto* ev = std::get_if<EventAtom>(&atom)) {
      Eventuality e;
      e.id = ev->var;
      e.pred = ev->pred;
      for (const Atom& inner : atoms) {
        if (const auto* role = std::get_if<RoleAtom>(&inner)) {
          if (role->event_var != ev->var) continue;
          if (role->theta == "agent" && !e.agent) {
            e.agent = role->entity_var;
          } else if (role->theta == "theme" && !e.theme) {
            e.theme = role->entity_var;
          } else {
            e.others.emplace_back(role->theta, role->entity_var);
          }
        } else if (const auto* adv = std::get_if<AdvAtom>(&inner)) {
          if (adv->event_var == ev->var) e.adverb = adv->trigger;
        }
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace ddp
