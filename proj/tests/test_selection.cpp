#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <map>
#include <numeric>

#include "helpers.hpp"
#include "stor/selection.hpp"

using namespace stor;
using testing::id;

namespace {

SocialGraph star()
{
    // Source 1 trusts 2..5 directly with distinct values; 6 is unreachable.
    SocialGraph g = testing::trust_graph(6, {{1, 2, 0.9}, {1, 3, 0.6}, {1, 4, 0.3}, {1, 5, 0.05}});
    g.set_bandwidth(id(2), 100.0);
    g.set_bandwidth(id(3), 400.0);
    g.set_bandwidth(id(4), 200.0);
    g.set_bandwidth(id(5), 800.0);
    g.set_bandwidth(id(6), 1600.0);
    g.freeze();
    return g;
}

double chi_square_p(const std::vector<int>& counts, const std::vector<double>& probs, int draws)
{
    double chi2 = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const double e = probs[k] * draws;
        chi2 += (counts[k] - e) * (counts[k] - e) / e;
    }
    const boost::math::chi_squared dist(static_cast<double>(probs.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, chi2));
}

}  // namespace

TEST_SUITE("selection") {

TEST_CASE("candidate sets")
{
    const SocialGraph g = star();
    const auto scores = propagate(g, id(1), 2);
    SelectionPolicy policy;
    const CandidateSet all = build_candidates(g, scores, policy);
    CHECK(all.size() == 4);
    CHECK(all.at(id(5)).bw_normalized == 1.0);
    CHECK(all.at(id(2)).bw_normalized == doctest::Approx(0.125));

    policy.ts_h = 0.3;
    const CandidateSet trusted = build_candidates(g, scores, policy);
    CHECK(trusted.size() == 3);  // ts >= ts_h keeps the boundary member
    CHECK(trusted.at(id(3)).bw_normalized == 1.0);
    CHECK_CODE(trusted.at(id(5)), ErrorCode::UnknownEntity);

    policy.ts_h = 0.95;
    CHECK_CODE(build_candidates(g, scores, policy), ErrorCode::EmptyCandidateSet);

    policy.mode = SelectionMode::TorBaseline;
    CHECK(build_candidates(g, scores, policy).size() == 6);
}

TEST_CASE("weights and probabilities")
{
    const SocialGraph g = star();
    const auto scores = propagate(g, id(1), 2);
    const CandidateSet set = build_candidates(g, scores, SelectionPolicy{});
    CHECK(selection_probability(set, id(2), 0.0) == doctest::Approx(0.9 / 1.85));
    CHECK(selection_probability(set, id(5), 1.0) == doctest::Approx(1.0 / 1.875));
    const double omega = 0.4;
    double total = 0.0;
    for (const auto& c : set.members) total += selection_probability(set, c.id, omega);
    CHECK(total == doctest::Approx(1.0));
    CHECK(selection_weight(set.at(id(3)), SelectionMode::Stor, omega) == doctest::Approx(0.6 * 0.6 + 0.4 * 0.5));
    CHECK(selection_weight(set.at(id(3)), SelectionMode::TorBaseline, omega) == 400.0);
    CHECK_CODE(selection_weights(set, 1.5), ErrorCode::InvalidPolicy);
}

TEST_CASE("zero weights and empty inputs")
{
    CandidateSet zero;
    zero.members = {{id(1), 0.0, 10.0, 1.0, false}, {id(2), 0.0, 5.0, 0.5, false}};
    CHECK_CODE(selection_probability(zero, id(1), 0.0), ErrorCode::ZeroDenominator);
    Rng rng = make_rng(1);
    CHECK_CODE(select_router(zero, 0.0, rng), ErrorCode::ZeroDenominator);
    CHECK_CODE(select_tor_baseline({}, rng), ErrorCode::EmptySet);
}

TEST_CASE("policy validation")
{
    SelectionPolicy p;
    p.omega = -0.1;
    CHECK_CODE(p.validate(), ErrorCode::InvalidPolicy);
    p.omega = 0.5;
    p.ts_h = 2.0;
    CHECK_CODE(p.validate(), ErrorCode::InvalidPolicy);
    p.ts_h = 0.0;
    p.circuit_length = 0;
    CHECK_CODE(p.validate(), ErrorCode::InvalidPolicy);
}

TEST_CASE("bandwidth baseline follows raw bandwidth")
{
    const SocialGraph g = star();
    Rng rng = make_rng(3);
    std::vector<int> counts(6, 0);
    constexpr int kDraws = 60000;
    for (int d = 0; d < kDraws; ++d) ++counts[select_tor_baseline(g.entities(), rng).value - 1];
    std::vector<double> probs;
    const double total = 1.0 + 100 + 400 + 200 + 800 + 1600;
    for (const Entity& e : g.entities()) probs.push_back(e.bandwidth / total);
    CHECK(chi_square_p(counts, probs, kDraws) > 0.001);
}

TEST_CASE("a one-router circuit reproduces the single selection draw")
{
    const SocialGraph g = star();
    const CandidateSet set = build_candidates(g, propagate(g, id(1), 2), SelectionPolicy{});
    SelectionPolicy one;
    one.omega = 0.3;
    one.circuit_length = 1;
    const CircuitSampler sampler(set, one);
    Rng a = make_rng(11);
    Rng b = make_rng(11);
    Rng c = make_rng(11);
    for (int k = 0; k < 500; ++k) {
        const EntityId single = select_router(set, 0.3, a);
        CHECK(single == set.members[sampler.draw_one(b)].id);
        CHECK(single == sampler.draw(c).routers.at(0));
    }
}

TEST_CASE("circuits hold distinct members and follow the sequential law")
{
    const SocialGraph g = star();
    const CandidateSet set = build_candidates(g, propagate(g, id(1), 2), SelectionPolicy{});
    SelectionPolicy policy;
    policy.omega = 0.25;
    const CircuitSampler sampler(set, policy);
    const auto w = selection_weights(set, policy.omega);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);

    std::map<std::vector<std::size_t>, int> counts;
    Rng rng = make_rng(5);
    constexpr int kDraws = 120000;
    for (int d = 0; d < kDraws; ++d) {
        const auto picks = sampler.draw_positions(rng);
        REQUIRE(picks.size() == 3);
        CHECK(picks[0] != picks[1]);
        CHECK(picks[1] != picks[2]);
        CHECK(picks[0] != picks[2]);
        ++counts[picks];
    }
    std::vector<int> observed;
    std::vector<double> probs;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t c = 0; c < 4; ++c) {
                if (a == b || b == c || a == c) continue;
                const double p = w[a] / total * w[b] / (total - w[a]) * w[c] / (total - w[a] - w[b]);
                probs.push_back(p);
                observed.push_back(counts[{a, b, c}]);
            }
    CHECK(chi_square_p(observed, probs, kDraws) > 0.001);
}

TEST_CASE("circuit bookkeeping")
{
    SocialGraph g = testing::trust_graph(4, {{1, 2, 0.9}, {1, 3, 0.9}, {1, 4, 0.9}});
    g.set_bandwidth(id(3), 0.25);
    g.set_malicious(id(3), true);
    g.freeze();
    const CandidateSet set = build_candidates(g, propagate(g, id(1), 1), SelectionPolicy{});
    Rng rng = make_rng(2);
    const Circuit c = build_circuit(set, SelectionPolicy{}, rng);
    CHECK(c.routers.size() == 3);
    CHECK(c.bandwidth == 0.25);
    CHECK(c.malicious);

    SelectionPolicy four;
    four.circuit_length = 4;
    CHECK_CODE(CircuitSampler(set, four), ErrorCode::InsufficientCandidates);
}

TEST_CASE("candidates without weight cannot fill a circuit")
{
    CandidateSet set;
    set.members = {{id(1), 0.5, 1.0, 1.0, false}, {id(2), 0.0, 1.0, 1.0, false}, {id(3), 0.0, 1.0, 1.0, false}};
    CHECK_CODE(CircuitSampler(set, SelectionPolicy{}), ErrorCode::InsufficientCandidates);
}

TEST_CASE("masked pool matches the filtered law and shares draws")
{
    const SocialGraph g = star();
    const auto scores = propagate(g, id(1), 2);
    SelectionPolicy filtered_policy;
    filtered_policy.ts_h = 0.3;
    filtered_policy.circuit_length = 1;
    const CandidateSet pool = build_candidates(g, scores, SelectionPolicy{});
    const CandidateSet filtered = build_candidates(g, scores, filtered_policy);

    std::vector<double> weights;
    std::vector<char> allowed;
    for (const auto& c : pool.members) {
        weights.push_back(c.ts);
        allowed.push_back(c.ts >= 0.3 ? 1 : 0);
    }
    const CircuitSampler masked(pool, weights, allowed, 1);
    const CircuitSampler open(pool, weights, std::vector<char>(pool.size(), 1), 1);

    Rng a = make_rng(9);
    Rng b = make_rng(9);
    std::vector<int> counts(pool.size(), 0);
    int agree = 0;
    constexpr int kDraws = 50000;
    for (int d = 0; d < kDraws; ++d) {
        const auto m = masked.draw_one(a);
        const auto o = open.draw_one(b);
        CHECK(allowed[m]);
        ++counts[m];
        if (m == o) ++agree;
        b = a;  // resynchronise after any rejection
    }
    // Only draws that hit the filtered member (ts 0.05) can differ.
    CHECK(agree > kDraws * 0.95);

    std::vector<int> kept;
    std::vector<double> probs;
    for (std::size_t k = 0; k < pool.size(); ++k) {
        if (!allowed[k]) continue;
        kept.push_back(counts[k]);
        probs.push_back(selection_probability(filtered, pool.members[k].id, 0.0));
    }
    CHECK(chi_square_p(kept, probs, kDraws) > 0.001);
    CHECK_CODE(CircuitSampler(pool, weights, std::vector<char>(pool.size(), 0), 1), ErrorCode::ZeroDenominator);
}

}
