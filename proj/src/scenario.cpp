#include "stor/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <string>

#include "stor/errors.hpp"

namespace stor {

namespace {

double to_double(std::size_t line, const std::string& key, const std::string& value)
{
    double out = 0;
    if (!parse_double(value, out)) throw ParseError(line, "key '" + key + "' expects a number, got '" + value + "'");
    return out;
}

std::uint64_t to_uint(std::size_t line, const std::string& key, const std::string& value)
{
    std::uint64_t out = 0;
    if (!parse_uint(value, out))
        throw ParseError(line, "key '" + key + "' expects a non-negative integer, got '" + value + "'");
    return out;
}

}  // namespace

ScenarioFile read_scenario(std::istream& in, const std::filesystem::path& base_dir)
{
    ScenarioFile file;
    SimScenario& s = file.scenario;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError(line, "expected key=value, got '" + std::string(text) + "'");
        const std::string key(trim(text.substr(0, eq)));
        const std::string value(trim(text.substr(eq + 1)));
        try {
            if (key == "strategy") s.strategy = parse_strategy(value);
            else if (key == "fraction") s.fraction = to_double(line, key, value);
            else if (key == "case") s.correlation = parse_correlation_case(value);
            else if (key == "omega") s.policy.omega = to_double(line, key, value);
            else if (key == "ts_h") s.policy.ts_h = to_double(line, key, value);
            else if (key == "rounds") s.rounds = to_uint(line, key, value);
            else if (key == "draws") s.draws = to_uint(line, key, value);
            else if (key == "seed") s.seed = to_uint(line, key, value);
            else if (key == "n") s.n = to_uint(line, key, value);
            else if (key == "generator") {
                GeneratorSpec spec = GeneratorSpec::parse(value);
                s.generator.kind = spec.kind;
                s.generator.edge_probability = spec.edge_probability;
                s.generator.target_fraction = spec.target_fraction;
            }
            else if (key == "circuit_length") s.policy.circuit_length = static_cast<int>(to_uint(line, key, value));
            else if (key == "max_hops") s.max_hops = static_cast<int>(to_uint(line, key, value));
            else if (key == "source") s.source = EntityId{static_cast<std::uint32_t>(to_uint(line, key, value))};
            else if (key == "b_max") s.generator.max_bandwidth = to_double(line, key, value);
            else if (key == "trust_shape") s.generator.trust_shape = to_double(line, key, value);
            else if (key == "homophily") s.generator.homophily = to_double(line, key, value);
            else if (key == "rules") file.rules = base_dir / value;
            else if (key == "graph") file.graph = base_dir / value;
            else throw Error(ErrorCode::InvalidConfig, "unknown scenario key '" + key + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line, e.what());
        }
    }
    try {
        s.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("scenario: ") + e.what());
    }
    return file;
}

ScenarioFile read_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open scenario file " + path.string());
    return read_scenario(in, path.parent_path());
}

CsvTable rounds_csv(std::span<const RoundReport> selection, std::span<const RoundReport> circuits)
{
    if (selection.size() != circuits.size())
        throw Error(ErrorCode::InvalidConfig, "selection and circuit rounds differ in count");
    CsvTable table({"round", "r_mr", "r_mc", "avg_bandwidth", "avg_circuit_bandwidth", "draws"});
    for (std::size_t r = 0; r < selection.size(); ++r) {
        table.add_row({std::to_string(selection[r].round), format_double(selection[r].r_mr),
                       format_double(circuits[r].r_mc.value_or(0.0)), format_double(selection[r].avg_bandwidth),
                       format_double(circuits[r].avg_bandwidth), std::to_string(selection[r].draws)});
    }
    const RoundSummary s = summarize(selection, circuits);
    table.add_row({"mean", format_double(s.mean_r_mr), format_double(s.mean_r_mc), format_double(s.mean_bandwidth),
                   format_double(s.mean_circuit_bandwidth), selection.empty() ? "0" : std::to_string(selection[0].draws)});
    return table;
}

CsvTable cdf_csv(std::vector<double> values)
{
    CsvTable table({"value", "cumulative_fraction"});
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        table.add_row({format_double(values[i]), format_double(static_cast<double>(i + 1) / n)});
    }
    return table;
}

CsvTable sweep_summary_csv(SweepAxis axis, std::span<const SweepPoint> points)
{
    CsvTable table({to_string(axis), "mean_r_mr", "mean_r_mc", "mean_bandwidth", "mean_circuit_bandwidth",
                    "mean_circle", "mean_trusted_circle", "source_circle", "source_trusted_circle"});
    for (const SweepPoint& p : points) {
        table.add_row({format_double(p.value), format_double(p.summary.mean_r_mr), format_double(p.summary.mean_r_mc),
                       format_double(p.summary.mean_bandwidth), format_double(p.summary.mean_circuit_bandwidth),
                       format_double(p.mean_circle), format_double(p.mean_trusted_circle),
                       std::to_string(p.source_circle), std::to_string(p.source_trusted_circle)});
    }
    return table;
}

CsvTable link_trust_csv(const SocialGraph& graph)
{
    CsvTable table({"from", "to", "network", "tv"});
    for (const auto& [key, link] : graph.links()) {
        table.add_row({std::to_string(key.from.value), std::to_string(key.to.value), std::to_string(key.network.value),
                       link.trust_value ? format_double(*link.trust_value) : ""});
    }
    return table;
}

}  // namespace stor
