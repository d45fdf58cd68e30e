#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "stor/propagation.hpp"
#include "stor/rng.hpp"
#include "stor/social_graph.hpp"

namespace stor {

enum class SelectionMode { TorBaseline, Stor };

struct SelectionPolicy {
    SelectionMode mode{SelectionMode::Stor};
    double omega{0.0};    // weight on normalized bandwidth vs trust score
    double ts_h{0.0};     // trustworthy-circle threshold
    int circuit_length{3};

    void validate() const;
};

struct Candidate {
    EntityId id;
    double ts{};
    double bandwidth{};
    double bw_normalized{};
    bool malicious{false};
};

struct CandidateSet {
    EntityId source;
    SelectionMode mode{SelectionMode::Stor};
    std::vector<Candidate> members;  // sorted by id

    std::size_t size() const noexcept { return members.size(); }
    const Candidate& at(EntityId id) const;
};

/// STor: members are the source's scored entities with ts >= ts_h (its
/// trustworthy friendship circle). Baseline: every router. Normalized bandwidth
/// is b_j over the largest b among the returned members.
CandidateSet build_candidates(const SocialGraph& graph, const TrustScoreTable& scores, const SelectionPolicy& policy);

/// (1 - omega) * ts + omega * BW for STor; raw bandwidth for the baseline.
double selection_weight(const Candidate& c, SelectionMode mode, double omega);
std::vector<double> selection_weights(const CandidateSet& candidates, double omega);

double selection_probability(const CandidateSet& candidates, EntityId j, double omega);

/// Draws one member with probability proportional to its selection weight.
EntityId select_router(const CandidateSet& candidates, double omega, Rng& rng);

/// Bandwidth-proportional draw over arbitrary routers.
EntityId select_tor_baseline(std::span<const Entity> routers, Rng& rng);

struct Circuit {
    std::vector<EntityId> routers;  // entry, middle..., exit
    double bandwidth{};             // slowest member
    bool malicious{false};          // any member malicious
};

/// Draws circuits from a fixed candidate set: circuit_length distinct members,
/// each drawn with the already-chosen members removed and the remaining weights
/// renormalized. Redrawing on a repeat realizes that conditional law without
/// rebuilding the distribution; after repeated collisions it falls back to an
/// explicit renormalized draw.
class CircuitSampler {
public:
    CircuitSampler(const CandidateSet& candidates, const SelectionPolicy& policy);

    /// Draws from `pool` with explicit weights, rejecting positions whose
    /// `allowed` flag is 0. Accepted draws follow the weights renormalized over
    /// the allowed members, and samplers that share a pool and rng stream pick
    /// the same routers except where a rejected member was hit.
    CircuitSampler(const CandidateSet& pool, std::vector<double> weights, std::vector<char> allowed,
                   int circuit_length);

    /// Positions into candidates.members, in draw order.
    std::vector<std::size_t> draw_positions(Rng& rng) const;
    Circuit draw(Rng& rng) const;

    /// Single weighted draw; identical to the first pick of a circuit.
    std::size_t draw_one(Rng& rng) const;

private:
    std::vector<std::size_t> draw_positions_impl(Rng& rng, std::size_t count) const;

    const CandidateSet* candidates_;
    std::size_t length_;
    std::vector<double> weights_;
    std::vector<char> allowed_;
    mutable std::discrete_distribution<std::size_t> dist_;
};

Circuit build_circuit(const CandidateSet& candidates, const SelectionPolicy& policy, Rng& rng);

}  // namespace stor
