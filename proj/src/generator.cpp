#include "stor/generator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "stor/csv.hpp"
#include "stor/errors.hpp"
#include "stor/rng.hpp"

namespace stor {

namespace {

enum Stream : std::uint64_t { kTopology = 1, kNetworks = 2, kAttributes = 3, kBandwidth = 4, kTrust = 5 };

// One uniform per ordered pair, shared by every probe of the bisection so
// the edge set (and hence circle size) grows monotonically with p.
class PairUniforms {
public:
    // Stores u_ij / affinity_ij so the edge test is a single comparison with p.
    PairUniforms(std::size_t n, std::uint64_t seed, const std::vector<double>& theta, double homophily)
        : n_(n), u_(n * n)
    {
        Rng rng = make_rng(seed, {kTopology});
        std::uniform_real_distribution<float> unit(0.0f, 1.0f);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                u_[i * n + j] = static_cast<float>(unit(rng) * std::exp(homophily * std::abs(theta[i] - theta[j])));
    }

    std::vector<std::vector<std::size_t>> adjacency(double p) const
    {
        std::vector<std::vector<std::size_t>> adj(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && (p >= 1.0 || static_cast<double>(u_[i * n_ + j]) < p)) adj[i].push_back(j);
        return adj;
    }

private:
    std::size_t n_;
    std::vector<float> u_;
};

double circle_fraction(const std::vector<std::vector<std::size_t>>& adj, int max_hops)
{
    const std::size_t n = adj.size();
    std::vector<int> depth(n);
    std::size_t total = 0;
    std::deque<std::size_t> frontier;
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(depth.begin(), depth.end(), -1);
        depth[s] = 0;
        frontier.assign(1, s);
        while (!frontier.empty()) {
            const std::size_t v = frontier.front();
            frontier.pop_front();
            if (depth[v] == max_hops) continue;
            for (std::size_t w : adj[v]) {
                if (depth[w] >= 0) continue;
                depth[w] = depth[v] + 1;
                ++total;
                frontier.push_back(w);
            }
        }
    }
    return static_cast<double>(total) / static_cast<double>(n * n);
}

QualitativeClass draw_class(double trustworthiness, Rng& rng)
{
    const double positive = trustworthiness * trustworthiness;
    const double negative = (1.0 - trustworthiness) * (1.0 - trustworthiness);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (u < positive) return QualitativeClass::Positive;
    if (u < positive + negative) return QualitativeClass::Negative;
    return QualitativeClass::Neutral;
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text)
{
    GeneratorSpec spec;
    auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidGeneratorParams, "expected 'er:<p>' or 'calibrated:<f>'");
    const std::string kind = text.substr(0, colon);
    double value = 0;
    if (!parse_double(std::string_view(text).substr(colon + 1), value))
        throw Error(ErrorCode::InvalidGeneratorParams, "bad generator parameter in '" + text + "'");
    if (kind == "er") {
        spec.kind = Kind::EdgeProbability;
        spec.edge_probability = value;
    } else if (kind == "calibrated") {
        spec.kind = Kind::CalibratedCircle;
        spec.target_fraction = value;
    } else {
        throw Error(ErrorCode::InvalidGeneratorParams, "unknown generator '" + kind + "'");
    }
    spec.validate();
    return spec;
}

std::string GeneratorSpec::to_string() const
{
    return kind == Kind::EdgeProbability ? "er:" + format_double(edge_probability)
                                         : "calibrated:" + format_double(target_fraction);
}

void GeneratorSpec::validate() const
{
    if (kind == Kind::EdgeProbability && !(edge_probability >= 0.0 && edge_probability <= 1.0))
        throw Error(ErrorCode::InvalidGeneratorParams, "edge probability must lie in [0,1]");
    if (kind == Kind::CalibratedCircle && !(target_fraction > 0.0 && target_fraction <= 1.0))
        throw Error(ErrorCode::InvalidGeneratorParams, "target circle fraction must lie in (0,1]");
    if (max_hops < 1) throw Error(ErrorCode::InvalidGeneratorParams, "max_hops must be at least 1");
    if (!(max_bandwidth > 0.0)) throw Error(ErrorCode::InvalidGeneratorParams, "max bandwidth must be positive");
    if (networks < 1) throw Error(ErrorCode::InvalidGeneratorParams, "need at least one network");
    if (!(extra_network_probability >= 0.0 && extra_network_probability <= 1.0))
        throw Error(ErrorCode::InvalidGeneratorParams, "extra network probability must lie in [0,1]");
    if (qualitative_attributes.empty() || quantitative_attributes.empty())
        throw Error(ErrorCode::InvalidGeneratorParams, "need qualitative and quantitative attribute names");
    if (!(quantitative_scale > 0.0)) throw Error(ErrorCode::InvalidGeneratorParams, "quantitative scale must be positive");
    if (!(trust_shape > 0.0)) throw Error(ErrorCode::InvalidGeneratorParams, "trust shape must be positive");
    if (!(homophily >= 0.0)) throw Error(ErrorCode::InvalidGeneratorParams, "homophily must be non-negative");
}

GeneratedGraph generate_graph(std::size_t n, const GeneratorSpec& spec, std::uint64_t seed)
{
    if (n < 2) throw Error(ErrorCode::InvalidGeneratorParams, "need at least two entities");
    spec.validate();

    std::vector<double> trustworthiness(n);
    {
        Rng rng = make_rng(seed, {kTrust});
        std::gamma_distribution<double> shape(spec.trust_shape, 1.0);
        for (double& t : trustworthiness) {
            const double a = shape(rng);
            const double b = shape(rng);
            t = a + b > 0.0 ? a / (a + b) : 0.5;
        }
    }
    const PairUniforms pairs(n, seed, trustworthiness, spec.homophily);
    double p = spec.edge_probability;
    if (spec.kind == GeneratorSpec::Kind::CalibratedCircle) {
        double lo = 0.0;
        double hi = 1.0;
        for (int iter = 0; iter < 40; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (circle_fraction(pairs.adjacency(mid), spec.max_hops) < spec.target_fraction)
                lo = mid;
            else
                hi = mid;
        }
        const double below = circle_fraction(pairs.adjacency(lo), spec.max_hops);
        const double above = circle_fraction(pairs.adjacency(hi), spec.max_hops);
        p = std::abs(below - spec.target_fraction) < std::abs(above - spec.target_fraction) ? lo : hi;
    }
    const auto adjacency = pairs.adjacency(p);

    GeneratedGraph out;
    out.edge_probability = p;
    SocialGraph& graph = out.graph;

    Rng bandwidth_rng = make_rng(seed, {kBandwidth});
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        graph.add_entity(EntityId{static_cast<std::uint32_t>(i + 1)}, spec.max_bandwidth * (1.0 - unit(bandwidth_rng)));
    for (int s = 1; s <= spec.networks; ++s) graph.add_network(NetworkId{static_cast<std::uint32_t>(s)});

    Rng attribute_rng = make_rng(seed, {kAttributes});

    Rng network_rng = make_rng(seed, {kNetworks});
    std::uniform_int_distribution<int> pick_network(1, spec.networks);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : adjacency[i]) {
            const int primary = pick_network(network_rng);
            for (int s = 1; s <= spec.networks; ++s) {
                if (s != primary && !(unit(network_rng) < spec.extra_network_probability)) continue;
                FriendLink link;
                link.from = EntityId{static_cast<std::uint32_t>(i + 1)};
                link.to = EntityId{static_cast<std::uint32_t>(j + 1)};
                link.network = NetworkId{static_cast<std::uint32_t>(s)};
                const double theta = trustworthiness[j];
                for (const auto& name : spec.qualitative_attributes)
                    link.attributes.qualitative[name] = draw_class(theta, attribute_rng);
                for (const auto& name : spec.quantitative_attributes)
                    link.attributes.quantitative[name] =
                        spec.quantitative_scale * (0.5 * theta + 0.5 * (1.0 - unit(attribute_rng)));
                graph.add_link(std::move(link));
            }
        }
    }
    out.mean_circle_fraction = circle_fraction(adjacency, spec.max_hops);
    return out;
}

double mean_circle_fraction(const SocialGraph& graph, int max_hops)
{
    const std::size_t n = graph.entity_count();
    if (n == 0) return 0.0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += graph.reachable_within(i, max_hops).size();
    return static_cast<double>(total) / static_cast<double>(n * n);
}

}  // namespace stor
