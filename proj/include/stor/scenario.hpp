#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>

#include "stor/adversary.hpp"
#include "stor/csv.hpp"

namespace stor {

// Scenario file: one `key=value` per line, '#' comments.
//
//   strategy, fraction, case, omega, ts_h, rounds, draws, seed, n, generator,
//   circuit_length, max_hops, source, b_max, trust_shape, homophily, rules, graph
//
// `rules` and `graph` are paths resolved against the scenario file's directory.
// Without `graph`, the graph is generated from `n`, `generator` and `seed`.
struct ScenarioFile {
    SimScenario scenario;
    std::optional<std::filesystem::path> rules;
    std::optional<std::filesystem::path> graph;
};

ScenarioFile read_scenario(std::istream& in, const std::filesystem::path& base_dir = {});
ScenarioFile read_scenario_file(const std::filesystem::path& path);

/// `round,r_mr,r_mc,avg_bandwidth,avg_circuit_bandwidth,draws`, plus a final `mean` row.
CsvTable rounds_csv(std::span<const RoundReport> selection, std::span<const RoundReport> circuits);

/// Empirical CDF: one row per distinct value, `value,cumulative_fraction`.
CsvTable cdf_csv(std::vector<double> values);

/// One row per sweep value.
CsvTable sweep_summary_csv(SweepAxis axis, std::span<const SweepPoint> points);

/// `from,to,network,tv` for every link in key order.
CsvTable link_trust_csv(const SocialGraph& graph);

}  // namespace stor
