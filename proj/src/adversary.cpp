#include "stor/adversary.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "stor/errors.hpp"

namespace stor {

namespace {

enum Purpose : std::uint64_t { kFlags = 11, kDraws = 12, kCorrelation = 13 };

std::string normalize_token(std::string text)
{
    for (char& c : text) c = c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return text;
}

// Weighted sampling of `count` distinct positions; zero-weight leftovers are
// taken uniformly once the positive weights are exhausted.
std::vector<std::size_t> weighted_without_replacement(std::vector<double> weights, std::size_t count, Rng& rng)
{
    std::vector<std::size_t> picks;
    picks.reserve(count);
    std::vector<char> taken(weights.size(), 0);
    while (picks.size() < count) {
        double total = 0.0;
        for (double w : weights) total += w;
        std::size_t pick = 0;
        if (total > 0.0) {
            std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
            pick = dist(rng);
        } else {
            std::vector<std::size_t> open;
            for (std::size_t i = 0; i < weights.size(); ++i)
                if (!taken[i]) open.push_back(i);
            pick = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
        }
        taken[pick] = 1;
        weights[pick] = 0.0;
        picks.push_back(pick);
    }
    return picks;
}

EntityId typical_source(const SocialGraph& graph, const std::map<EntityId, TrustScoreTable>& scores)
{
    double mean = 0.0;
    for (const auto& [id, table] : scores) mean += static_cast<double>(table.size());
    mean /= static_cast<double>(scores.size());
    EntityId best = graph.entities().front().id;
    double best_gap = INFINITY;
    for (const auto& [id, table] : scores) {
        const double gap = std::abs(static_cast<double>(table.size()) - mean);
        if (gap < best_gap) {
            best_gap = gap;
            best = id;
        }
    }
    return best;
}

// Draws come from the source's whole candidate pool (ts_h = 0) and members
// below ts_h are rejected, so runs that differ only in ts_h share draws.
struct RoundSetup {
    CandidateSet pool;
    std::vector<double> weights;
    std::vector<char> allowed;
    std::vector<std::size_t> entity_index;  // per pool position
};

RoundSetup prepare(const SimWorld& world, const SelectionPolicy& policy)
{
    const CandidateSet filtered = build_candidates(world.graph, world.source_scores(), policy);
    SelectionPolicy open = policy;
    open.ts_h = 0.0;
    RoundSetup setup{build_candidates(world.graph, world.source_scores(), open), {}, {}, {}};

    double max_bandwidth = 0.0;
    for (const auto& c : filtered.members) max_bandwidth = std::max(max_bandwidth, c.bandwidth);
    for (auto& c : setup.pool.members) {
        c.bw_normalized = c.bandwidth / max_bandwidth;
        setup.weights.push_back(selection_weight(c, policy.mode, policy.omega));
        setup.allowed.push_back(policy.mode == SelectionMode::TorBaseline || c.ts >= policy.ts_h ? 1 : 0);
        setup.entity_index.push_back(world.graph.index_of(c.id));
    }
    return setup;
}

std::vector<char> round_flags(const SimWorld& world, const SimScenario& scenario, std::size_t round)
{
    Rng rng = make_rng(scenario.seed, {round, kFlags});
    std::vector<char> flags(world.graph.entity_count(), 0);
    for (std::size_t i : draw_malicious(world, scenario, rng)) flags[i] = 1;
    return flags;
}

}  // namespace

std::string to_string(Strategy s)
{
    switch (s) {
    case Strategy::OriginalTor: return "ORIGINAL_TOR";
    case Strategy::OpportunisticTor: return "OPPORTUNISTIC_TOR";
    case Strategy::PracticalStor: return "PRACTICAL_STOR";
    case Strategy::TheoreticalStor: return "THEORETICAL_STOR";
    }
    return "?";
}

std::string to_string(CorrelationCase c)
{
    switch (c) {
    case CorrelationCase::None: return "NONE";
    case CorrelationCase::Best: return "BEST";
    case CorrelationCase::Worst: return "WORST";
    }
    return "?";
}

Strategy parse_strategy(const std::string& text)
{
    const std::string t = normalize_token(text);
    if (t == "original_tor") return Strategy::OriginalTor;
    if (t == "opportunistic_tor") return Strategy::OpportunisticTor;
    if (t == "practical_stor") return Strategy::PracticalStor;
    if (t == "theoretical_stor") return Strategy::TheoreticalStor;
    throw Error(ErrorCode::InvalidConfig, "unknown strategy '" + text + "'");
}

CorrelationCase parse_correlation_case(const std::string& text)
{
    const std::string t = normalize_token(text);
    if (t == "none") return CorrelationCase::None;
    if (t == "best") return CorrelationCase::Best;
    if (t == "worst") return CorrelationCase::Worst;
    throw Error(ErrorCode::InvalidConfig, "unknown correlation case '" + text + "'");
}

SelectionPolicy SimScenario::effective_policy() const
{
    SelectionPolicy p = policy;
    p.mode = (strategy == Strategy::OriginalTor || strategy == Strategy::OpportunisticTor) ? SelectionMode::TorBaseline
                                                                                          : SelectionMode::Stor;
    return p;
}

void SimScenario::validate() const
{
    if (!(fraction >= 0.0 && fraction < 1.0)) throw Error(ErrorCode::InvalidConfig, "fraction must lie in [0,1)");
    if (rounds < 1) throw Error(ErrorCode::InvalidConfig, "rounds must be positive");
    if (draws < 1) throw Error(ErrorCode::InvalidConfig, "draws must be positive");
    if (n < 2) throw Error(ErrorCode::InvalidConfig, "n must be at least 2");
    if (max_hops < 1) throw Error(ErrorCode::InvalidConfig, "max_hops must be at least 1");
    policy.validate();
    generator.validate();
}

SimWorld make_world(SocialGraph graph, const FuzzyRuleSet& rules, const SimScenario& scenario)
{
    scenario.validate();
    if (graph.entity_count() < 2) throw Error(ErrorCode::InvalidConfig, "world needs at least two entities");
    const bool complete = std::all_of(graph.links().begin(), graph.links().end(),
                                      [](const auto& kv) { return kv.second.trust_value.has_value(); });
    if (!complete) assign_trust_values(graph, rules);

    SimWorld world;
    world.max_hops = scenario.max_hops;
    world.scores = propagate_all(graph, scenario.max_hops);
    world.source = scenario.source ? *scenario.source : typical_source(graph, world.scores);
    graph.index_of(world.source);

    if (scenario.correlation != CorrelationCase::None) {
        Rng rng = make_rng(scenario.seed, {kCorrelation});
        graph = assign_bandwidth_correlation(graph, world.scores.at(world.source), scenario.correlation, rng);
    }

    const std::size_t n = graph.entity_count();
    world.mean_trust.assign(n, 0.0);
    for (const auto& [source, table] : world.scores)
        for (const auto& [target, score] : table.scores)
            if (target != source) world.mean_trust[graph.index_of(target)] += score.ts;
    for (double& t : world.mean_trust) t /= static_cast<double>(n - 1);

    graph.freeze();
    world.graph = std::move(graph);
    return world;
}

SimWorld build_world(const SimScenario& scenario, const FuzzyRuleSet& rules)
{
    scenario.validate();
    GeneratorSpec spec = scenario.generator;
    spec.max_hops = scenario.max_hops;
    spec.qualitative_attributes.clear();
    for (const auto& [name, _] : rules.attributes()) spec.qualitative_attributes.push_back(name);
    spec.quantitative_attributes.clear();
    for (const auto& [name, _] : rules.weights()) spec.quantitative_attributes.push_back(name);
    GeneratedGraph generated = generate_graph(scenario.n, spec, scenario.seed);
    return make_world(std::move(generated.graph), rules, scenario);
}

std::size_t malicious_count(double fraction, std::size_t n)
{
    if (fraction <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

std::vector<std::size_t> draw_malicious(const SimWorld& world, const SimScenario& scenario, Rng& rng)
{
    const auto entities = world.graph.entities();
    const std::size_t n = entities.size();
    const std::size_t k = malicious_count(scenario.fraction, n);
    if (k == 0) return {};
    if (k > n) throw Error(ErrorCode::InfeasibleAssignment, "more malicious routers than routers");

    switch (scenario.strategy) {
    case Strategy::OriginalTor: {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return entities[a].bandwidth > entities[b].bandwidth; });
        order.resize(k);
        std::sort(order.begin(), order.end());
        return order;
    }
    case Strategy::OpportunisticTor: {
        auto picks = weighted_without_replacement(std::vector<double>(n, 1.0), k, rng);
        std::sort(picks.begin(), picks.end());
        return picks;
    }
    case Strategy::PracticalStor: {
        std::vector<double> weights(n);
        for (std::size_t i = 0; i < n; ++i) weights[i] = std::max(0.0, 1.0 - world.mean_trust[i]);
        auto picks = weighted_without_replacement(std::move(weights), k, rng);
        std::sort(picks.begin(), picks.end());
        return picks;
    }
    case Strategy::TheoreticalStor: {
        const TrustScoreTable& circle = world.source_scores();
        std::vector<std::size_t> outsiders;
        for (std::size_t i = 0; i < n; ++i)
            if (entities[i].id != world.source && !circle.find(entities[i].id)) outsiders.push_back(i);
        if (outsiders.empty())
            throw Error(ErrorCode::InfeasibleAssignment, "the friendship circle covers every other entity");
        auto picks = weighted_without_replacement(std::vector<double>(outsiders.size(), 1.0),
                                                  std::min(k, outsiders.size()), rng);
        std::vector<std::size_t> out;
        out.reserve(picks.size());
        for (std::size_t p : picks) out.push_back(outsiders[p]);
        std::sort(out.begin(), out.end());
        return out;
    }
    }
    return {};
}

SocialGraph assign_malicious(const SimWorld& world, const SimScenario& scenario, Rng& rng)
{
    SocialGraph graph;
    for (const Entity& e : world.graph.entities()) graph.add_entity(e.id, e.bandwidth, false);
    for (NetworkId net : world.graph.networks()) graph.add_network(net);
    for (const auto& [key, link] : world.graph.links()) graph.add_link(link);
    const auto entities = world.graph.entities();
    for (std::size_t i : draw_malicious(world, scenario, rng)) graph.set_malicious(entities[i].id, true);
    return graph;
}

SocialGraph assign_bandwidth_correlation(const SocialGraph& graph, const TrustScoreTable& source_scores,
                                         CorrelationCase correlation, Rng& rng)
{
    graph.index_of(source_scores.source);
    SocialGraph out;
    for (const Entity& e : graph.entities()) out.add_entity(e.id, e.bandwidth, e.malicious);
    for (NetworkId net : graph.networks()) out.add_network(net);
    for (const auto& [key, link] : graph.links()) out.add_link(link);
    if (correlation == CorrelationCase::None) return out;

    std::vector<double> bandwidths;
    for (const Entity& e : graph.entities()) bandwidths.push_back(e.bandwidth);
    std::sort(bandwidths.begin(), bandwidths.end(), std::greater<>());

    std::vector<std::pair<EntityId, double>> friends;
    for (const auto& [id, score] : source_scores.scores) friends.emplace_back(id, score.ts);
    std::stable_sort(friends.begin(), friends.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<EntityId> outsiders;
    for (const Entity& e : graph.entities())
        if (!source_scores.find(e.id)) outsiders.push_back(e.id);

    const std::size_t m = friends.size();
    const std::size_t n = bandwidths.size();
    std::vector<double> outsider_values;
    if (correlation == CorrelationCase::Best) {
        for (std::size_t r = 0; r < m; ++r) out.set_bandwidth(friends[r].first, bandwidths[r]);
        outsider_values.assign(bandwidths.begin() + static_cast<std::ptrdiff_t>(m), bandwidths.end());
    } else {
        for (std::size_t r = 0; r < m; ++r) out.set_bandwidth(friends[r].first, bandwidths[n - 1 - r]);
        outsider_values.assign(bandwidths.begin(), bandwidths.begin() + static_cast<std::ptrdiff_t>(n - m));
    }
    std::shuffle(outsider_values.begin(), outsider_values.end(), rng);
    for (std::size_t k = 0; k < outsiders.size(); ++k) out.set_bandwidth(outsiders[k], outsider_values[k]);
    return out;
}

std::vector<RoundReport> run_selection_rounds(const SimWorld& world, const SimScenario& scenario)
{
    scenario.validate();
    SelectionPolicy policy = scenario.effective_policy();
    policy.circuit_length = 1;
    const RoundSetup setup = prepare(world, policy);
    const CircuitSampler sampler(setup.pool, setup.weights, setup.allowed, policy.circuit_length);

    std::vector<RoundReport> reports(scenario.rounds);
    for (std::size_t r = 0; r < scenario.rounds; ++r) {
        const auto flags = round_flags(world, scenario, r);
        Rng rng = make_rng(scenario.seed, {r, kDraws});
        std::size_t malicious = 0;
        double bandwidth = 0.0;
        for (std::size_t d = 0; d < scenario.draws; ++d) {
            const std::size_t pos = sampler.draw_one(rng);
            malicious += flags[setup.entity_index[pos]] ? 1 : 0;
            bandwidth += setup.pool.members[pos].bandwidth;
        }
        const auto draws = static_cast<double>(scenario.draws);
        reports[r] = RoundReport{r, static_cast<double>(malicious) / draws, std::nullopt, bandwidth / draws,
                                 scenario.draws};
    }
    return reports;
}

std::vector<RoundReport> run_circuit_rounds(const SimWorld& world, const SimScenario& scenario)
{
    scenario.validate();
    const SelectionPolicy policy = scenario.effective_policy();
    const RoundSetup setup = prepare(world, policy);
    const CircuitSampler sampler(setup.pool, setup.weights, setup.allowed, policy.circuit_length);

    std::vector<RoundReport> reports(scenario.rounds);
    for (std::size_t r = 0; r < scenario.rounds; ++r) {
        const auto flags = round_flags(world, scenario, r);
        Rng rng = make_rng(scenario.seed, {r, kDraws});
        std::size_t malicious_circuits = 0;
        std::size_t malicious_routers = 0;
        double bandwidth = 0.0;
        for (std::size_t d = 0; d < scenario.draws; ++d) {
            const auto picks = sampler.draw_positions(rng);
            bool any = false;
            double slowest = INFINITY;
            for (std::size_t pos : picks) {
                const bool bad = flags[setup.entity_index[pos]] != 0;
                malicious_routers += bad ? 1 : 0;
                any = any || bad;
                slowest = std::min(slowest, setup.pool.members[pos].bandwidth);
            }
            malicious_circuits += any ? 1 : 0;
            bandwidth += slowest;
        }
        const auto draws = static_cast<double>(scenario.draws);
        const auto routers = draws * static_cast<double>(policy.circuit_length);
        reports[r] = RoundReport{r, static_cast<double>(malicious_routers) / routers,
                                 static_cast<double>(malicious_circuits) / draws, bandwidth / draws, scenario.draws};
    }
    return reports;
}

RoundSummary summarize(std::span<const RoundReport> selection, std::span<const RoundReport> circuits)
{
    RoundSummary s;
    for (const auto& r : selection) {
        s.mean_r_mr += r.r_mr;
        s.mean_bandwidth += r.avg_bandwidth;
    }
    if (!selection.empty()) {
        s.mean_r_mr /= static_cast<double>(selection.size());
        s.mean_bandwidth /= static_cast<double>(selection.size());
    }
    for (const auto& r : circuits) {
        s.mean_r_mc += r.r_mc.value_or(0.0);
        s.mean_circuit_bandwidth += r.avg_bandwidth;
    }
    if (!circuits.empty()) {
        s.mean_r_mc /= static_cast<double>(circuits.size());
        s.mean_circuit_bandwidth /= static_cast<double>(circuits.size());
    }
    return s;
}

std::string to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::Omega: return "omega";
    case SweepAxis::TsH: return "ts_h";
    case SweepAxis::Fraction: return "fraction";
    case SweepAxis::N: return "n";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& text)
{
    const std::string t = normalize_token(text);
    if (t == "omega") return SweepAxis::Omega;
    if (t == "ts_h") return SweepAxis::TsH;
    if (t == "fraction") return SweepAxis::Fraction;
    if (t == "n") return SweepAxis::N;
    throw Error(ErrorCode::InvalidConfig, "unknown sweep axis '" + text + "'");
}

double mean_trusted_circle(const SimWorld& world, double ts_h)
{
    if (world.scores.empty()) return 0.0;
    std::size_t total = 0;
    for (const auto& [id, table] : world.scores)
        for (const auto& [target, score] : table.scores)
            if (score.ts >= ts_h) ++total;
    return static_cast<double>(total) / static_cast<double>(world.scores.size());
}

std::vector<SweepPoint> sweep(const SimWorld& world, const SimScenario& base, const FuzzyRuleSet& rules, SweepAxis axis,
                              std::span<const double> values)
{
    if (values.empty()) throw Error(ErrorCode::InvalidConfig, "sweep needs at least one value");
    if (!std::is_sorted(values.begin(), values.end()))
        throw Error(ErrorCode::InvalidConfig, "sweep values must be sorted");

    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (double value : values) {
        SimScenario scenario = base;
        std::optional<SimWorld> regenerated;
        switch (axis) {
        case SweepAxis::Omega: scenario.policy.omega = value; break;
        case SweepAxis::TsH: scenario.policy.ts_h = value; break;
        case SweepAxis::Fraction: scenario.fraction = value; break;
        case SweepAxis::N:
            if (!(value >= 2.0) || value != std::floor(value))
                throw Error(ErrorCode::InvalidConfig, "n values must be integers >= 2");
            scenario.n = static_cast<std::size_t>(value);
            scenario.source.reset();
            regenerated = build_world(scenario, rules);
            break;
        }
        const SimWorld& w = regenerated ? *regenerated : world;

        SweepPoint point;
        point.value = value;
        point.selection = run_selection_rounds(w, scenario);
        point.circuits = run_circuit_rounds(w, scenario);
        point.summary = summarize(point.selection, point.circuits);
        point.mean_circle = mean_trusted_circle(w, 0.0);
        point.mean_trusted_circle = mean_trusted_circle(w, scenario.policy.ts_h);
        point.source_circle = w.source_scores().size();
        for (const auto& [id, score] : w.source_scores().scores)
            if (score.ts >= scenario.policy.ts_h) ++point.source_trusted_circle;
        points.push_back(std::move(point));
    }
    return points;
}

}  // namespace stor
