#include "ddp/attention.hpp"

#include <algorithm>
#include <set>

namespace ddp {

int AttentionalState::rank_of(const EntityId& id) const {
  for (size_t i = 0; i < ranks.size(); ++i)
    if (std::find(ranks[i].begin(), ranks[i].end(), id) != ranks[i].end())
      return static_cast<int>(i);
  return -1;
}

AttentionalState salience_order(const std::optional<EntityId>& center,
                                const SurfaceInfo& surface,
                                const std::map<std::string, EntityId>& entity_map,
                                const std::vector<EntityId>& known_entities) {
  AttentionalState state;
  state.center = center;

  // Best (lowest) GF rank per realized entity, in linear order.
  std::vector<EntityId> realized;
  std::map<EntityId, int> best_rank;
  for (const std::string& var : surface.order) {
    auto it = entity_map.find(var);
    if (it == entity_map.end()) continue;
    const EntityId& id = it->second;
    int rank = gf_rank(surface.nominals.at(var).gf);
    auto found = best_rank.find(id);
    if (found == best_rank.end()) {
      best_rank[id] = rank;
      realized.push_back(id);
    } else if (rank < found->second) {
      found->second = rank;
    }
  }

  std::vector<std::vector<EntityId>> bands(4);
  for (const EntityId& id : realized) bands[best_rank[id]].push_back(id);

  // CENTER vs GF ORDER: a realized Center outranked by GF joins the top
  // band instead of either rule winning outright.
  if (center && best_rank.count(*center)) {
    int center_band = best_rank[*center];
    int top_band = -1;
    for (int i = 0; i < 4; ++i)
      if (!bands[i].empty()) {
        top_band = i;
        break;
      }
    if (top_band >= 0 && top_band < center_band) {
      auto& from = bands[center_band];
      from.erase(std::find(from.begin(), from.end(), *center));
      bands[top_band].push_back(*center);
    }
  }

  for (auto& band : bands)
    if (!band.empty()) state.ranks.push_back(std::move(band));

  std::vector<EntityId> unrealized;
  for (const EntityId& id : known_entities)
    if (!best_rank.count(id)) unrealized.push_back(id);
  if (!unrealized.empty()) state.ranks.push_back(std::move(unrealized));

  return state;
}

std::optional<EntityId> update_center(
    const SurfaceInfo& surface, const std::map<std::string, EntityId>& entity_map,
    const std::optional<EntityId>& prev_center) {
  const std::string* best_var = nullptr;
  int best_rank = 0;
  int best_pos = 0;
  for (const auto& [var, info] : surface.nominals) {
    if (!is_pronominal(info.expression)) continue;
    int rank = gf_rank(info.gf);
    if (!best_var || rank < best_rank ||
        (rank == best_rank && info.position < best_pos)) {
      best_var = &var;
      best_rank = rank;
      best_pos = info.position;
    }
  }
  if (!best_var) return prev_center;
  auto it = entity_map.find(*best_var);
  if (it == entity_map.end()) return prev_center;
  return it->second;
}

std::vector<std::vector<EntityId>> att_preference(
    const std::vector<EntityId>& candidates, const AttentionalState& state) {
  std::vector<std::pair<int, EntityId>> keyed;
  keyed.reserve(candidates.size());
  for (const EntityId& id : candidates) {
    int rank = state.rank_of(id);
    if (rank < 0) rank = static_cast<int>(state.ranks.size());
    keyed.emplace_back(rank, id);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<EntityId>> groups;
  int prev_rank = -1;
  for (const auto& [rank, id] : keyed) {
    if (groups.empty() || rank != prev_rank)
      groups.push_back({id});
    else
      groups.back().push_back(id);
    prev_rank = rank;
  }
  return groups;
}

}  // namespace ddp
