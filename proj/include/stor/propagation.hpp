#pragma once

#include <map>
#include <span>
#include <vector>

#include "stor/csv.hpp"
#include "stor/social_graph.hpp"

namespace stor {

/// Trust distance of one path and its distrust complement.
struct PathDistance {
    double td{1.0};
    double utd() const noexcept { return 1.0 - td; }
};

/// Product of the links' trust values, multiplied in path order.
/// The links must chain (to == next.from) without revisiting an entity.
PathDistance trust_distance(std::span<const FriendLink> path);

/// Same over the merged view, given the visited entities (source first).
PathDistance trust_distance(const SocialGraph& graph, std::span<const EntityId> entities);

struct TrustScore {
    double ts{};
    int hops{};
    std::vector<EntityId> path;  // witness, source first, target last
};

struct TrustScoreTable {
    EntityId source;
    std::map<EntityId, TrustScore> scores;

    const TrustScore* find(EntityId target) const;
    std::size_t size() const noexcept { return scores.size(); }
};

/// Maximum path product from `source` to every entity within `max_hops`.
///
/// Best-first search over (entity, hop count) states: because every factor is
/// in [0,1], extending a path never raises its product, so states settle in
/// non-increasing product order. Equal products prefer fewer hops, then the
/// lexicographically smaller entity sequence. If `settled` is given, the
/// product of every settled state is appended in settle order.
TrustScoreTable propagate(const SocialGraph& graph, EntityId source, int max_hops,
                          std::vector<double>* settled = nullptr);

std::map<EntityId, TrustScoreTable> propagate_all(const SocialGraph& graph, int max_hops);

/// `source,target,ts,hops`, sorted by source then target.
CsvTable trust_score_csv(const std::map<EntityId, TrustScoreTable>& tables);

}  // namespace stor
