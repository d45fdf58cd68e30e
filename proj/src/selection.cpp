#include "stor/selection.hpp"

#include <algorithm>
#include <random>

#include "stor/errors.hpp"

namespace stor {

namespace {

std::size_t draw_index(const std::vector<double>& weights, Rng& rng)
{
    std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
    return dist(rng);
}

double positive_sum(const std::vector<double>& weights)
{
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum;
}

}  // namespace

void SelectionPolicy::validate() const
{
    if (!(omega >= 0.0 && omega <= 1.0)) throw Error(ErrorCode::InvalidPolicy, "omega must lie in [0,1]");
    if (!(ts_h >= 0.0 && ts_h <= 1.0)) throw Error(ErrorCode::InvalidPolicy, "ts_h must lie in [0,1]");
    if (circuit_length < 1) throw Error(ErrorCode::InvalidPolicy, "circuit_length must be positive");
}

const Candidate& CandidateSet::at(EntityId id) const
{
    auto it = std::lower_bound(members.begin(), members.end(), id,
                               [](const Candidate& c, EntityId v) { return c.id < v; });
    if (it == members.end() || it->id != id)
        throw Error(ErrorCode::UnknownEntity, "entity " + std::to_string(id.value) + " is not a candidate");
    return *it;
}

CandidateSet build_candidates(const SocialGraph& graph, const TrustScoreTable& scores, const SelectionPolicy& policy)
{
    policy.validate();
    CandidateSet set;
    set.source = scores.source;
    set.mode = policy.mode;
    if (policy.mode == SelectionMode::TorBaseline) {
        for (const Entity& e : graph.entities()) {
            const TrustScore* s = scores.find(e.id);
            set.members.push_back({e.id, s ? s->ts : 0.0, e.bandwidth, 0.0, e.malicious});
        }
    } else {
        for (const auto& [id, score] : scores.scores) {
            if (score.ts < policy.ts_h) continue;
            const Entity& e = graph.entity(id);
            set.members.push_back({id, score.ts, e.bandwidth, 0.0, e.malicious});
        }
    }
    if (set.members.empty())
        throw Error(ErrorCode::EmptyCandidateSet,
                    "no trustworthy friends for entity " + std::to_string(scores.source.value));
    double max_bandwidth = 0.0;
    for (const auto& c : set.members) max_bandwidth = std::max(max_bandwidth, c.bandwidth);
    for (auto& c : set.members) c.bw_normalized = c.bandwidth / max_bandwidth;
    return set;
}

double selection_weight(const Candidate& c, SelectionMode mode, double omega)
{
    if (mode == SelectionMode::TorBaseline) return c.bandwidth;
    return (1.0 - omega) * c.ts + omega * c.bw_normalized;
}

std::vector<double> selection_weights(const CandidateSet& candidates, double omega)
{
    if (!(omega >= 0.0 && omega <= 1.0)) throw Error(ErrorCode::InvalidPolicy, "omega must lie in [0,1]");
    std::vector<double> weights;
    weights.reserve(candidates.size());
    for (const auto& c : candidates.members) weights.push_back(selection_weight(c, candidates.mode, omega));
    return weights;
}

double selection_probability(const CandidateSet& candidates, EntityId j, double omega)
{
    const Candidate& target = candidates.at(j);
    const auto weights = selection_weights(candidates, omega);
    const double total = positive_sum(weights);
    if (!(total > 0.0)) throw Error(ErrorCode::ZeroDenominator, "every candidate has zero weight");
    return selection_weight(target, candidates.mode, omega) / total;
}

EntityId select_router(const CandidateSet& candidates, double omega, Rng& rng)
{
    if (candidates.members.empty()) throw Error(ErrorCode::EmptyCandidateSet, "no candidates");
    const auto weights = selection_weights(candidates, omega);
    if (!(positive_sum(weights) > 0.0)) throw Error(ErrorCode::ZeroDenominator, "every candidate has zero weight");
    return candidates.members[draw_index(weights, rng)].id;
}

EntityId select_tor_baseline(std::span<const Entity> routers, Rng& rng)
{
    if (routers.empty()) throw Error(ErrorCode::EmptySet, "no routers");
    std::vector<double> weights;
    weights.reserve(routers.size());
    for (const Entity& e : routers) {
        if (!(e.bandwidth > 0.0)) throw Error(ErrorCode::DomainViolation, "router bandwidth must be positive");
        weights.push_back(e.bandwidth);
    }
    return routers[draw_index(weights, rng)].id;
}

CircuitSampler::CircuitSampler(const CandidateSet& candidates, const SelectionPolicy& policy)
    : candidates_(&candidates), length_(static_cast<std::size_t>(policy.circuit_length))
{
    policy.validate();
    if (candidates.size() < length_)
        throw Error(ErrorCode::InsufficientCandidates, "need " + std::to_string(length_) + " candidates, have " +
                                                           std::to_string(candidates.size()));
    weights_ = selection_weights(candidates, policy.omega);
    const auto positive = std::count_if(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
    if (positive == 0) throw Error(ErrorCode::ZeroDenominator, "every candidate has zero weight");
    if (static_cast<std::size_t>(positive) < length_)
        throw Error(ErrorCode::InsufficientCandidates, "fewer than " + std::to_string(length_) +
                                                           " candidates have a positive weight");
    allowed_.assign(weights_.size(), 1);
    dist_ = std::discrete_distribution<std::size_t>(weights_.begin(), weights_.end());
}

CircuitSampler::CircuitSampler(const CandidateSet& pool, std::vector<double> weights, std::vector<char> allowed,
                               int circuit_length)
    : candidates_(&pool), weights_(std::move(weights)), allowed_(std::move(allowed))
{
    if (circuit_length < 1) throw Error(ErrorCode::InvalidPolicy, "circuit length must be at least 1");
    length_ = static_cast<std::size_t>(circuit_length);
    if (weights_.size() != pool.size() || allowed_.size() != pool.size())
        throw Error(ErrorCode::InvalidPolicy, "weights and mask must match the pool");
    std::size_t positive = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!(weights_[i] >= 0.0)) throw Error(ErrorCode::InvalidPolicy, "negative selection weight");
        if (allowed_[i] && weights_[i] > 0.0) ++positive;
    }
    if (positive == 0) throw Error(ErrorCode::ZeroDenominator, "every allowed candidate has zero weight");
    if (positive < length_)
        throw Error(ErrorCode::InsufficientCandidates, "fewer than " + std::to_string(length_) +
                                                           " allowed candidates have a positive weight");
    dist_ = std::discrete_distribution<std::size_t>(weights_.begin(), weights_.end());
}

std::size_t CircuitSampler::draw_one(Rng& rng) const
{
    return draw_positions_impl(rng, 1).front();
}

std::vector<std::size_t> CircuitSampler::draw_positions(Rng& rng) const
{
    return draw_positions_impl(rng, length_);
}

std::vector<std::size_t> CircuitSampler::draw_positions_impl(Rng& rng, std::size_t count) const
{
    constexpr int kMaxRedraws = 64;
    std::vector<std::size_t> picks;
    picks.reserve(count);
    auto blocked = [&](std::size_t p) {
        return !allowed_[p] || std::find(picks.begin(), picks.end(), p) != picks.end();
    };
    while (picks.size() < count) {
        std::size_t pick = dist_(rng);
        int redraws = 0;
        while (blocked(pick) && redraws < kMaxRedraws) {
            pick = dist_(rng);
            ++redraws;
        }
        if (blocked(pick)) {
            auto remaining = weights_;
            for (std::size_t p = 0; p < remaining.size(); ++p)
                if (blocked(p)) remaining[p] = 0.0;
            pick = draw_index(remaining, rng);
        }
        picks.push_back(pick);
    }
    return picks;
}

Circuit CircuitSampler::draw(Rng& rng) const
{
    Circuit circuit;
    const auto picks = draw_positions(rng);
    circuit.routers.reserve(picks.size());
    for (std::size_t k = 0; k < picks.size(); ++k) {
        const Candidate& c = candidates_->members[picks[k]];
        circuit.routers.push_back(c.id);
        circuit.bandwidth = k == 0 ? c.bandwidth : std::min(circuit.bandwidth, c.bandwidth);
        circuit.malicious = circuit.malicious || c.malicious;
    }
    return circuit;
}

Circuit build_circuit(const CandidateSet& candidates, const SelectionPolicy& policy, Rng& rng)
{
    return CircuitSampler(candidates, policy).draw(rng);
}

}  // namespace stor
