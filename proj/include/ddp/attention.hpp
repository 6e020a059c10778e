#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddp/base.hpp"
#include "ddp/ilf.hpp"

namespace ddp {

// Salience partial order over discourse entities, encoded as ranked groups
// (most salient first). Entities within a group are mutually incomparable,
// so the first group is always the set of maximally salient entities.
struct AttentionalState {
  std::vector<std::vector<EntityId>> ranks;
  std::optional<EntityId> center;

  // Index of the rank group containing the entity, or -1 if unranked.
  int rank_of(const EntityId& id) const;
  const std::vector<EntityId>* maximal() const {
    return ranks.empty() ? nullptr : &ranks.front();
  }
};

// Builds the output attentional state for an utterance from GF ORDER and
// CENTER. Entities realized in the utterance are banded by grammatical
// function; when the Center sits in a lower GF band than some other realized
// entity, CENTER and GF ORDER conflict and the Center joins the top band
// (incomparability). Entities known to the discourse but not realized here
// rank strictly below all realized ones.
AttentionalState salience_order(const std::optional<EntityId>& center,
                                const SurfaceInfo& surface,
                                const std::map<std::string, EntityId>& entity_map,
                                const std::vector<EntityId>& known_entities);

// EXP CENTER with the fixed-pronominal reading: the Center of the output
// state is the referent of a pronominal expression. With several
// pronominals the highest-GF one wins (ties broken by linear position);
// with none the previous Center carries over.
std::optional<EntityId> update_center(
    const SurfaceInfo& surface, const std::map<std::string, EntityId>& entity_map,
    const std::optional<EntityId>& prev_center);

// ATT preference for one pronoun: candidates partitioned by the rank groups
// of the input attentional state, restricted to the candidate set.
// Determinate iff the top group is a singleton.
std::vector<std::vector<EntityId>> att_preference(
    const std::vector<EntityId>& candidates, const AttentionalState& state);

}  // namespace ddp
