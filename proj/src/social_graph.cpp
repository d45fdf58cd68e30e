#include "stor/social_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "stor/errors.hpp"

namespace stor {

namespace {

std::string describe(EntityId id) { return "entity " + std::to_string(id.value); }

}  // namespace

std::string to_string(QualitativeClass c)
{
    switch (c) {
    case QualitativeClass::Positive: return "POSITIVE";
    case QualitativeClass::Neutral: return "NEUTRAL";
    case QualitativeClass::Negative: return "NEGATIVE";
    }
    return "?";
}

QualitativeClass parse_qualitative_class(const std::string& text)
{
    if (text == "POSITIVE") return QualitativeClass::Positive;
    if (text == "NEUTRAL") return QualitativeClass::Neutral;
    if (text == "NEGATIVE") return QualitativeClass::Negative;
    throw Error(ErrorCode::DomainViolation, "qualitative value must be POSITIVE, NEUTRAL or NEGATIVE, got '" + text + "'");
}

bool FriendshipCircle::contains(EntityId id) const
{
    return std::binary_search(members.begin(), members.end(), id);
}

void SocialGraph::require_mutable() const
{
    if (frozen_) throw Error(ErrorCode::FrozenGraph, "graph is frozen");
}

void SocialGraph::add_entity(EntityId id, double bandwidth, bool malicious)
{
    require_mutable();
    if (id.value < 1) throw Error(ErrorCode::UnknownEntity, "entity ids start at 1");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw Error(ErrorCode::DomainViolation, describe(id) + " needs a positive bandwidth");
    auto it = std::lower_bound(entities_.begin(), entities_.end(), id,
                               [](const Entity& e, EntityId v) { return e.id < v; });
    if (it != entities_.end() && it->id == id)
        throw Error(ErrorCode::InvalidConfig, describe(id) + " registered twice");
    entities_.insert(it, Entity{id, bandwidth, malicious});
    invalidate();
}

void SocialGraph::add_network(NetworkId id)
{
    require_mutable();
    networks_.insert(id);
}

void SocialGraph::add_link(FriendLink link)
{
    require_mutable();
    if (!contains(link.from)) throw Error(ErrorCode::UnknownEntity, describe(link.from));
    if (!contains(link.to)) throw Error(ErrorCode::UnknownEntity, describe(link.to));
    if (link.from == link.to) throw Error(ErrorCode::SelfLink, describe(link.from) + " cannot befriend itself");
    if (!networks_.contains(link.network))
        throw Error(ErrorCode::UnknownNetwork, "network " + std::to_string(link.network.value));
    if (link.trust_value && !(*link.trust_value >= 0.0 && *link.trust_value <= 1.0))
        throw Error(ErrorCode::DomainViolation, "trust value outside [0,1]");
    LinkKey key{link.from, link.to, link.network};
    links_.insert_or_assign(key, std::move(link));
    invalidate();
}

void SocialGraph::set_trust_value(const LinkKey& key, double tv)
{
    require_mutable();
    auto it = links_.find(key);
    if (it == links_.end())
        throw Error(ErrorCode::NoLink, describe(key.from) + " -> " + describe(key.to));
    if (!(tv >= 0.0 && tv <= 1.0)) throw Error(ErrorCode::DomainViolation, "trust value outside [0,1]");
    it->second.trust_value = tv;
    invalidate();
}

void SocialGraph::set_bandwidth(EntityId id, double bandwidth)
{
    require_mutable();
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw Error(ErrorCode::DomainViolation, describe(id) + " needs a positive bandwidth");
    entities_[index_of(id)].bandwidth = bandwidth;
}

void SocialGraph::set_malicious(EntityId id, bool malicious)
{
    require_mutable();
    entities_[index_of(id)].malicious = malicious;
}

void SocialGraph::freeze()
{
    if (!merged_valid_) rebuild_merged();
    frozen_ = true;
}

bool SocialGraph::contains(EntityId id) const noexcept
{
    return std::binary_search(entities_.begin(), entities_.end(), Entity{id, 0.0, false},
                              [](const Entity& a, const Entity& b) { return a.id < b.id; });
}

std::size_t SocialGraph::index_of(EntityId id) const
{
    auto it = std::lower_bound(entities_.begin(), entities_.end(), id,
                               [](const Entity& e, EntityId v) { return e.id < v; });
    if (it == entities_.end() || it->id != id) throw Error(ErrorCode::UnknownEntity, describe(id));
    return static_cast<std::size_t>(it - entities_.begin());
}

const FriendLink* SocialGraph::find_link(const LinkKey& key) const
{
    auto it = links_.find(key);
    return it == links_.end() ? nullptr : &it->second;
}

void SocialGraph::rebuild_merged() const
{
    merged_.assign(entities_.size(), {});
    // links_ is ordered by (from, to, network): parallel links are adjacent.
    for (auto it = links_.begin(); it != links_.end();) {
        const EntityId from = it->first.from;
        const EntityId to = it->first.to;
        std::optional<double> best;
        bool complete = true;
        for (; it != links_.end() && it->first.from == from && it->first.to == to; ++it) {
            if (!it->second.trust_value) {
                complete = false;
                continue;
            }
            best = best ? std::max(*best, *it->second.trust_value) : *it->second.trust_value;
        }
        MergedEdge edge{to, index_of(to), complete ? best : std::nullopt};
        merged_[index_of(from)].push_back(edge);
    }
    merged_valid_ = true;
}

const std::vector<std::vector<MergedEdge>>& SocialGraph::merged() const
{
    if (!merged_valid_) rebuild_merged();
    return merged_;
}

std::span<const MergedEdge> SocialGraph::out_edges(EntityId id) const
{
    return out_edges_at(index_of(id));
}

std::span<const MergedEdge> SocialGraph::out_edges_at(std::size_t index) const
{
    return merged().at(index);
}

double SocialGraph::merge_trust(EntityId i, EntityId j) const
{
    index_of(i);
    index_of(j);
    auto first = links_.lower_bound(LinkKey{i, j, NetworkId{0}});
    std::optional<double> best;
    for (auto it = first; it != links_.end() && it->first.from == i && it->first.to == j; ++it) {
        if (!it->second.trust_value)
            throw Error(ErrorCode::TrustNotComputed,
                        describe(i) + " -> " + describe(j) + " in network " + std::to_string(it->first.network.value));
        best = best ? std::max(*best, *it->second.trust_value) : *it->second.trust_value;
    }
    if (!best) throw Error(ErrorCode::NoLink, describe(j) + " is not a direct friend of " + describe(i));
    return *best;
}

FriendshipCircle SocialGraph::friendship_circle(EntityId i, int max_hops) const
{
    if (max_hops < 1) throw Error(ErrorCode::DomainViolation, "max_hops must be at least 1");
    const std::size_t source = index_of(i);
    const auto& adjacency = merged();
    const std::size_t n = entities_.size();

    FriendshipCircle circle;
    circle.source = i;
    circle.max_hops = max_hops;

    // Per-hop membership over simple paths: depth-first enumeration.
    std::vector<std::vector<char>> at_hop(static_cast<std::size_t>(max_hops), std::vector<char>(n, 0));
    std::vector<char> on_path(n, 0);
    on_path[source] = 1;
    auto walk = [&](auto&& self, std::size_t node, int depth) -> void {
        for (const MergedEdge& e : adjacency[node]) {
            if (on_path[e.to_index]) continue;
            at_hop[static_cast<std::size_t>(depth)][e.to_index] = 1;
            if (depth + 1 < max_hops) {
                on_path[e.to_index] = 1;
                self(self, e.to_index, depth + 1);
                on_path[e.to_index] = 0;
            }
        }
    };
    walk(walk, source, 0);

    std::vector<char> any(n, 0);
    circle.members_by_hop.resize(static_cast<std::size_t>(max_hops));
    for (std::size_t r = 0; r < at_hop.size(); ++r) {
        for (std::size_t v = 0; v < n; ++v) {
            if (!at_hop[r][v]) continue;
            circle.members_by_hop[r].push_back(entities_[v].id);
            any[v] = 1;
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (any[v]) circle.members.push_back(entities_[v].id);
    return circle;
}

std::vector<std::size_t> SocialGraph::reachable_within(std::size_t source_index, int max_hops) const
{
    if (max_hops < 1) throw Error(ErrorCode::DomainViolation, "max_hops must be at least 1");
    const auto& adjacency = merged();
    std::vector<int> depth(entities_.size(), -1);
    depth.at(source_index) = 0;
    std::deque<std::size_t> frontier{source_index};
    std::vector<std::size_t> out;
    while (!frontier.empty()) {
        const std::size_t v = frontier.front();
        frontier.pop_front();
        if (depth[v] == max_hops) continue;
        for (const MergedEdge& e : adjacency[v]) {
            if (depth[e.to_index] >= 0) continue;
            depth[e.to_index] = depth[v] + 1;
            out.push_back(e.to_index);
            frontier.push_back(e.to_index);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool SocialGraph::operator==(const SocialGraph& other) const
{
    return entities_ == other.entities_ && networks_ == other.networks_ && links_ == other.links_;
}

}  // namespace stor
