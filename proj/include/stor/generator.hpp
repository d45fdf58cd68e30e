#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stor/social_graph.hpp"

namespace stor {

/// Synthetic friendship-graph recipe.
///
/// Topology is independent directed edges, optionally biased toward pairs of
/// similar latent trustworthiness. With `Kind::CalibratedCircle` the
/// edge probability is bisected so the mean friendship-circle size over all
/// entities approaches `target_fraction * n`. Each entity also draws a latent
/// trustworthiness that biases the qualitative classes and quantitative values
/// its incoming links carry.
struct GeneratorSpec {
    enum class Kind { EdgeProbability, CalibratedCircle };

    Kind kind{Kind::CalibratedCircle};
    double edge_probability{0.05};
    double target_fraction{0.8};
    int max_hops{2};
    double max_bandwidth{10.0 * 1024 * 1024};
    int networks{2};
    double extra_network_probability{0.25};
    std::vector<std::string> qualitative_attributes{"Major", "Relationship"};
    std::vector<std::string> quantitative_attributes{"freq", "time"};
    double quantitative_scale{100.0};
    // Latent trustworthiness ~ Beta(trust_shape, trust_shape); shapes below 1
    // push entities toward the trusted and untrusted ends.
    double trust_shape{0.5};
    // Pair (i, j) links with probability p * exp(-homophily * |theta_i - theta_j|).
    double homophily{2.0};

    /// "er:<p>" or "calibrated:<fraction>".
    static GeneratorSpec parse(const std::string& text);
    std::string to_string() const;
    void validate() const;
};

struct GeneratedGraph {
    SocialGraph graph;
    double edge_probability{};
    double mean_circle_fraction{};  // mean ||F_i|| / n
};

GeneratedGraph generate_graph(std::size_t n, const GeneratorSpec& spec, std::uint64_t seed);

/// Mean ||F_i|| / n over every entity.
double mean_circle_fraction(const SocialGraph& graph, int max_hops);

}  // namespace stor
