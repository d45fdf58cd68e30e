#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace stor {

struct EntityId {
    std::uint32_t value{};
    auto operator<=>(const EntityId&) const = default;
};

struct NetworkId {
    std::uint32_t value{};
    auto operator<=>(const NetworkId&) const = default;
};

enum class QualitativeClass { Positive, Neutral, Negative };

std::string to_string(QualitativeClass c);
QualitativeClass parse_qualitative_class(const std::string& text);

/// Raw social attributes attached to one directed link in one network.
/// Quantitative values are unnormalized (e.g. message counts); qualitative
/// values are already classified into the three input fuzzy sets.
struct AttributeProfile {
    std::map<std::string, double> quantitative;
    std::map<std::string, QualitativeClass> qualitative;

    bool operator==(const AttributeProfile&) const = default;
};

struct FriendLink {
    EntityId from;
    EntityId to;
    NetworkId network;
    AttributeProfile attributes;
    std::optional<double> trust_value;

    bool operator==(const FriendLink&) const = default;
};

struct LinkKey {
    EntityId from;
    EntityId to;
    NetworkId network;
    auto operator<=>(const LinkKey&) const = default;
};

/// An entity and the single router it operates.
struct Entity {
    EntityId id;
    double bandwidth{};  // bytes/sec, strictly positive
    bool malicious{false};

    bool operator==(const Entity&) const = default;
};

/// Out-edge of the merged (network-collapsed) view. `trust` is the max of the
/// per-network trust values, or empty if any underlying link lacks one.
struct MergedEdge {
    EntityId to;
    std::size_t to_index{};
    std::optional<double> trust;
};

struct FriendshipCircle {
    EntityId source;
    int max_hops{};
    /// members_by_hop[r - 1] holds every entity reachable from source over some
    /// acyclic path of exactly r links; an entity may appear under several hops.
    std::vector<std::vector<EntityId>> members_by_hop;
    /// Sorted union over all hops.
    std::vector<EntityId> members;

    const std::vector<EntityId>& hop(int r) const { return members_by_hop.at(static_cast<std::size_t>(r - 1)); }
    std::size_t size() const noexcept { return members.size(); }
    bool contains(EntityId id) const;
};

/// Directed, weighted, possibly cyclic multi-network friendship graph.
///
/// Links are keyed by (from, to, network). The merged view used by the
/// circle and propagation code collapses parallel links and is rebuilt lazily
/// after mutation. Once frozen the graph rejects mutation and every const
/// member is safe to call from several threads.
class SocialGraph {
public:
    void add_entity(EntityId id, double bandwidth, bool malicious = false);
    void add_network(NetworkId id);
    void add_link(FriendLink link);

    void set_trust_value(const LinkKey& key, double tv);
    void set_bandwidth(EntityId id, double bandwidth);
    void set_malicious(EntityId id, bool malicious);

    void freeze();
    bool frozen() const noexcept { return frozen_; }

    std::span<const Entity> entities() const noexcept { return entities_; }
    const Entity& entity(EntityId id) const { return entities_[index_of(id)]; }
    std::size_t entity_count() const noexcept { return entities_.size(); }
    bool contains(EntityId id) const noexcept;
    std::size_t index_of(EntityId id) const;

    const std::set<NetworkId>& networks() const noexcept { return networks_; }
    const std::map<LinkKey, FriendLink>& links() const noexcept { return links_; }
    const FriendLink* find_link(const LinkKey& key) const;

    /// Merged out-edges of `id`, sorted by target id.
    std::span<const MergedEdge> out_edges(EntityId id) const;
    std::span<const MergedEdge> out_edges_at(std::size_t index) const;

    /// Highest per-network trust value on i -> j.
    double merge_trust(EntityId i, EntityId j) const;

    FriendshipCircle friendship_circle(EntityId i, int max_hops) const;

    /// Union F_i only (breadth-first, no per-hop breakdown), as sorted dense indices.
    std::vector<std::size_t> reachable_within(std::size_t source_index, int max_hops) const;

    bool operator==(const SocialGraph& other) const;

private:
    void require_mutable() const;
    void invalidate() noexcept { merged_valid_ = false; }
    void rebuild_merged() const;
    const std::vector<std::vector<MergedEdge>>& merged() const;

    std::vector<Entity> entities_;  // sorted by id
    std::set<NetworkId> networks_;
    std::map<LinkKey, FriendLink> links_;
    bool frozen_{false};

    mutable std::vector<std::vector<MergedEdge>> merged_;
    mutable bool merged_valid_{false};
};

}  // namespace stor
