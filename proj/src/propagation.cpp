#include "stor/propagation.hpp"

#include <algorithm>
#include <queue>

#include "stor/errors.hpp"

namespace stor {

namespace {

struct Label {
    double product;
    std::vector<std::size_t> path;  // dense indices, source first

    int hops() const { return static_cast<int>(path.size()) - 1; }
};

// Priority: larger product, then fewer hops, then lexicographically smaller path.
bool better(const Label& a, const Label& b)
{
    if (a.product != b.product) return a.product > b.product;
    if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
    return a.path < b.path;
}

struct Worse {
    bool operator()(const Label& a, const Label& b) const { return better(b, a); }
};

}  // namespace

PathDistance trust_distance(std::span<const FriendLink> path)
{
    PathDistance d;
    std::vector<EntityId> seen;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const FriendLink& link = path[k];
        if (k > 0 && path[k - 1].to != link.from)
            throw Error(ErrorCode::DisconnectedPath, "link " + std::to_string(k) + " does not continue the path");
        if (k == 0) seen.push_back(link.from);
        if (std::find(seen.begin(), seen.end(), link.to) != seen.end())
            throw Error(ErrorCode::CyclicPath, "entity " + std::to_string(link.to.value) + " visited twice");
        seen.push_back(link.to);
        if (!link.trust_value) throw Error(ErrorCode::TrustNotComputed, "link without trust value on path");
        d.td *= *link.trust_value;
    }
    return d;
}

PathDistance trust_distance(const SocialGraph& graph, std::span<const EntityId> entities)
{
    PathDistance d;
    for (std::size_t k = 0; k < entities.size(); ++k) {
        if (std::find(entities.begin(), entities.begin() + static_cast<std::ptrdiff_t>(k), entities[k]) !=
            entities.begin() + static_cast<std::ptrdiff_t>(k))
            throw Error(ErrorCode::CyclicPath, "entity " + std::to_string(entities[k].value) + " visited twice");
        if (k == 0) continue;
        const auto edges = graph.out_edges(entities[k - 1]);
        auto it = std::find_if(edges.begin(), edges.end(), [&](const MergedEdge& e) { return e.to == entities[k]; });
        if (it == edges.end()) throw Error(ErrorCode::DisconnectedPath, "no link into entity " + std::to_string(entities[k].value));
        if (!it->trust) throw Error(ErrorCode::TrustNotComputed, "link without trust value on path");
        d.td *= *it->trust;
    }
    return d;
}

const TrustScore* TrustScoreTable::find(EntityId target) const
{
    auto it = scores.find(target);
    return it == scores.end() ? nullptr : &it->second;
}

TrustScoreTable propagate(const SocialGraph& graph, EntityId source, int max_hops, std::vector<double>* settled)
{
    if (max_hops < 1) throw Error(ErrorCode::DomainViolation, "max_hops must be at least 1");
    const std::size_t origin = graph.index_of(source);
    const auto entities = graph.entities();
    const std::size_t n = graph.entity_count();

    TrustScoreTable table;
    table.source = source;

    // fewest_hops[v]: smallest hop count among settled states of v. A later
    // state with at least as many hops has no larger product and is dominated.
    std::vector<int> fewest_hops(n, max_hops + 1);
    fewest_hops[origin] = 0;

    std::priority_queue<Label, std::vector<Label>, Worse> queue;
    queue.push(Label{1.0, {origin}});

    while (!queue.empty()) {
        Label label = queue.top();
        queue.pop();
        const std::size_t v = label.path.back();
        const int hops = label.hops();
        if (hops >= fewest_hops[v] && v != origin) continue;
        if (v == origin && hops > 0) continue;

        if (settled) settled->push_back(label.product);

        if (v != origin) {
            if (fewest_hops[v] > max_hops) {
                TrustScore score;
                score.ts = label.product;
                score.hops = hops;
                score.path.reserve(label.path.size());
                for (std::size_t idx : label.path) score.path.push_back(entities[idx].id);
                table.scores.emplace(entities[v].id, std::move(score));
            }
            fewest_hops[v] = hops;
        }
        if (hops == max_hops) continue;

        for (const MergedEdge& e : graph.out_edges_at(v)) {
            if (!e.trust)
                throw Error(ErrorCode::TrustNotComputed,
                            "link " + std::to_string(entities[v].id.value) + "->" + std::to_string(e.to.value));
            if (fewest_hops[e.to_index] <= hops + 1) continue;
            if (std::find(label.path.begin(), label.path.end(), e.to_index) != label.path.end()) continue;
            Label next{label.product * *e.trust, label.path};
            next.path.push_back(e.to_index);
            queue.push(std::move(next));
        }
    }
    return table;
}

std::map<EntityId, TrustScoreTable> propagate_all(const SocialGraph& graph, int max_hops)
{
    std::map<EntityId, TrustScoreTable> out;
    for (const Entity& e : graph.entities()) out.emplace(e.id, propagate(graph, e.id, max_hops));
    return out;
}

CsvTable trust_score_csv(const std::map<EntityId, TrustScoreTable>& tables)
{
    CsvTable csv({"source", "target", "ts", "hops"});
    for (const auto& [source, table] : tables)
        for (const auto& [target, score] : table.scores)
            csv.add_row({std::to_string(source.value), std::to_string(target.value), format_double(score.ts),
                         std::to_string(score.hops)});
    return csv;
}

}  // namespace stor
