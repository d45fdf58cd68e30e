#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stor/fuzzy.hpp"
#include "stor/generator.hpp"
#include "stor/propagation.hpp"
#include "stor/selection.hpp"
#include "stor/social_graph.hpp"

namespace stor {

/// Where the malicious routers sit.
enum class Strategy {
    OriginalTor,       // highest-bandwidth routers, bandwidth-only selection
    OpportunisticTor,  // uniformly random routers, bandwidth-only selection
    PracticalStor,     // low-trust entities more likely, trust-based selection
    TheoreticalStor,   // only entities outside the user's circle, trust-based selection
};

/// How router bandwidth lines up with the user's trust scores.
enum class CorrelationCase { None, Best, Worst };

std::string to_string(Strategy s);
std::string to_string(CorrelationCase c);
Strategy parse_strategy(const std::string& text);
CorrelationCase parse_correlation_case(const std::string& text);

struct SimScenario {
    Strategy strategy{Strategy::PracticalStor};
    double fraction{0.2};
    CorrelationCase correlation{CorrelationCase::None};
    SelectionPolicy policy{};
    std::size_t rounds{200};
    std::size_t draws{1000};
    std::uint64_t seed{1};
    std::size_t n{500};
    GeneratorSpec generator{};
    int max_hops{2};
    std::optional<EntityId> source;  // evaluated user; default: circle size closest to the mean

    /// Tor strategies select by bandwidth alone; STor strategies by the trust/bandwidth blend.
    SelectionPolicy effective_policy() const;
    void validate() const;
};

struct RoundReport {
    std::size_t round{};
    double r_mr{};                // malicious selections / selections
    std::optional<double> r_mc;   // malicious circuits / circuits (circuit rounds)
    double avg_bandwidth{};       // selected router, or slowest circuit member
    std::size_t draws{};
};

/// Frozen graph with trust values, every entity's trust-score table, and the
/// evaluated user.
struct SimWorld {
    SocialGraph graph;
    std::map<EntityId, TrustScoreTable> scores;
    EntityId source;
    int max_hops{2};

    /// Per entity index: mean of ts_{i=>j} over every other entity i, counting
    /// 0 where j is outside i's circle.
    std::vector<double> mean_trust;

    const TrustScoreTable& source_scores() const { return scores.at(source); }
};

/// Assigns trust values (if missing), propagates, picks the evaluated user and
/// applies the scenario's bandwidth correlation, then freezes the graph.
SimWorld make_world(SocialGraph graph, const FuzzyRuleSet& rules, const SimScenario& scenario);

/// Generates the scenario's graph with `rules` attribute names and builds the world.
SimWorld build_world(const SimScenario& scenario, const FuzzyRuleSet& rules);

/// Number of malicious routers for a fraction of n: ceil(fraction * n).
std::size_t malicious_count(double fraction, std::size_t n);

/// Indices (into graph.entities()) of the routers flagged malicious.
std::vector<std::size_t> draw_malicious(const SimWorld& world, const SimScenario& scenario, Rng& rng);

/// Copy of the world's graph (unfrozen) with exactly the drawn routers flagged.
SocialGraph assign_malicious(const SimWorld& world, const SimScenario& scenario, Rng& rng);

/// Reassigns bandwidths so their ranks inside the source's circle follow (Best)
/// or oppose (Worst) trust-score ranks; outsiders take the remaining lowest
/// (Best) or highest (Worst) values. Returns an unfrozen copy.
SocialGraph assign_bandwidth_correlation(const SocialGraph& graph, const TrustScoreTable& source_scores,
                                         CorrelationCase correlation, Rng& rng);

std::vector<RoundReport> run_selection_rounds(const SimWorld& world, const SimScenario& scenario);
std::vector<RoundReport> run_circuit_rounds(const SimWorld& world, const SimScenario& scenario);

struct RoundSummary {
    double mean_r_mr{};
    double mean_r_mc{};
    double mean_bandwidth{};
    double mean_circuit_bandwidth{};
};

RoundSummary summarize(std::span<const RoundReport> selection, std::span<const RoundReport> circuits);

enum class SweepAxis { Omega, TsH, Fraction, N };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& text);

struct SweepPoint {
    double value{};
    std::vector<RoundReport> selection;
    std::vector<RoundReport> circuits;
    RoundSummary summary;
    double mean_circle{};          // mean ||F_i|| over all entities
    double mean_trusted_circle{};  // mean ||TF_i|| over all entities
    std::size_t source_circle{};
    std::size_t source_trusted_circle{};
};

/// One point per value; every point shares the scenario seed (common random
/// numbers). Axis N regenerates the graph per value.
std::vector<SweepPoint> sweep(const SimWorld& world, const SimScenario& base, const FuzzyRuleSet& rules,
                              SweepAxis axis, std::span<const double> values);

/// Mean ||TF_i|| over all entities of the world for threshold ts_h.
double mean_trusted_circle(const SimWorld& world, double ts_h);

}  // namespace stor
