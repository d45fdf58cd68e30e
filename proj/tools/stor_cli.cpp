// stor: social-trust scores and trust-based router selection experiments.
#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "stor/adversary.hpp"
#include "stor/csv.hpp"
#include "stor/errors.hpp"
#include "stor/graph_io.hpp"
#include "stor/propagation.hpp"
#include "stor/rule_set_io.hpp"
#include "stor/scenario.hpp"

namespace fs = std::filesystem;
using namespace stor;

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    fs::path out{"."};
    bool quiet{false};
};

FuzzyRuleSet load_rules(const std::optional<fs::path>& path)
{
    return path ? read_rule_set_file(*path) : FuzzyRuleSet::worked_example();
}

SimWorld load_world(ScenarioFile& file, const FuzzyRuleSet& rules)
{
    if (file.graph) return make_world(read_graph_file(*file.graph), rules, file.scenario);
    return build_world(file.scenario, rules);
}

// Comma-separated numbers; empty items are rejected rather than read as zero.
std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        double v = 0.0;
        if (!parse_double(trim(item), v)) throw CLI::ValidationError("--values", "not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

ScenarioFile load_scenario(const fs::path& path, const Globals& g)
{
    ScenarioFile file = read_scenario_file(path);
    if (g.seed) file.scenario.seed = *g.seed;
    return file;
}

int cmd_trust(const fs::path& graph_path, const std::optional<fs::path>& rules_path, int hops, const Globals& g)
{
    SocialGraph graph = read_graph_file(graph_path);
    // Graphs that already carry every trust value skip the fuzzy step.
    const bool complete = std::all_of(graph.links().begin(), graph.links().end(),
                                      [](const auto& kv) { return kv.second.trust_value.has_value(); });
    if (!complete || rules_path) assign_trust_values(graph, load_rules(rules_path));
    graph.freeze();
    const auto tables = propagate_all(graph, hops);

    fs::create_directories(g.out);
    link_trust_csv(graph).write_file(g.out / "link_trust.csv");
    trust_score_csv(tables).write_file(g.out / "trust_scores.csv");

    if (!g.quiet) {
        double total = 0;
        for (const auto& [id, table] : tables) total += static_cast<double>(table.size());
        const double mean = tables.empty() ? 0.0 : total / static_cast<double>(tables.size());
        std::cout << "entities " << graph.entity_count() << "\nmean_circle " << format_double(mean) << "\n";
    }
    return 0;
}

int cmd_simulate(const fs::path& scenario_path, const Globals& g)
{
    ScenarioFile file = load_scenario(scenario_path, g);
    const FuzzyRuleSet rules = load_rules(file.rules);
    const SimWorld world = load_world(file, rules);
    const auto selection = run_selection_rounds(world, file.scenario);
    const auto circuits = run_circuit_rounds(world, file.scenario);

    fs::create_directories(g.out);
    rounds_csv(selection, circuits).write_file(g.out / "rounds.csv");
    std::vector<double> r_mr, r_mc;
    for (const auto& r : selection) r_mr.push_back(r.r_mr);
    for (const auto& r : circuits) r_mc.push_back(r.r_mc.value_or(0.0));
    cdf_csv(r_mr).write_file(g.out / "cdf_r_mr.csv");
    cdf_csv(r_mc).write_file(g.out / "cdf_r_mc.csv");

    if (!g.quiet) {
        const RoundSummary s = summarize(selection, circuits);
        std::cout << "strategy " << to_string(file.scenario.strategy) << "\nsource " << world.source.value
                  << "\ncircle " << world.source_scores().size() << "\nmean_r_mr " << format_double(s.mean_r_mr)
                  << "\nmean_r_mc " << format_double(s.mean_r_mc) << "\nmean_bandwidth "
                  << format_double(s.mean_bandwidth) << "\n";
    }
    return 0;
}

int cmd_sweep(const fs::path& scenario_path, const std::string& axis_name, const std::vector<double>& values,
              const Globals& g)
{
    const SweepAxis axis = parse_sweep_axis(axis_name);
    ScenarioFile file = load_scenario(scenario_path, g);
    const FuzzyRuleSet rules = load_rules(file.rules);
    const SimWorld world = load_world(file, rules);
    const auto points = sweep(world, file.scenario, rules, axis, values);

    fs::create_directories(g.out);
    for (const SweepPoint& p : points)
        rounds_csv(p.selection, p.circuits)
            .write_file(g.out / (to_string(axis) + "_" + format_double(p.value) + ".csv"));
    const CsvTable summary = sweep_summary_csv(axis, points);
    summary.write_file(g.out / "summary.csv");
    if (!g.quiet) summary.write(std::cout);
    return 0;
}

int cmd_generate(std::size_t n, const std::string& generator, const Globals& g)
{
    const GeneratorSpec spec = GeneratorSpec::parse(generator);
    const GeneratedGraph out = generate_graph(n, spec, g.seed.value_or(1));
    fs::create_directories(g.out);
    write_graph_file(g.out / "graph.txt", out.graph);
    if (!g.quiet)
        std::cout << "entities " << out.graph.entity_count() << "\nlinks " << out.graph.links().size()
                  << "\nedge_probability " << format_double(out.edge_probability) << "\nmean_circle_fraction "
                  << format_double(out.mean_circle_fraction) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Social-trust router selection: trust scores and adversary simulations"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::uint64_t seed = 1;
    std::string out = ".";
    auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the scenario's)");
    app.add_option("--out", out, "Output directory");
    app.add_flag("--quiet,-q", g.quiet, "Suppress the summary on stdout");

    std::string graph_path;
    std::string rules_path;
    int hops = 2;
    auto* trust = app.add_subcommand("trust", "Compute link trust values and trust scores for a graph file");
    trust->add_option("graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
    trust->add_option("--rules", rules_path, "Rule-set file (default: the two-attribute example)")
        ->check(CLI::ExistingFile);
    trust->add_option("--hops", hops, "Friendship-circle hop bound")->check(CLI::Range(1, 16));

    std::string scenario_path;
    auto* simulate = app.add_subcommand("simulate", "Run selection and circuit rounds for a scenario file");
    simulate->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);

    std::string axis;
    std::string values_text;
    std::vector<double> values;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one scenario parameter");
    sweep_cmd->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--axis", axis, "omega | ts_h | fraction | n")->required();
    sweep_cmd->add_option("--values", values_text, "Sorted comma-separated values")->required();

    std::size_t n = 500;
    std::string generator = "calibrated:0.8";
    auto* generate = app.add_subcommand("generate", "Write a synthetic graph file");
    generate->add_option("--n", n, "Entity count")->check(CLI::Range(2, 1000000));
    generate->add_option("--generator", generator, "er:<p> or calibrated:<fraction>");

    try {
        app.parse(argc, argv);
        if (sweep_cmd->parsed()) {
            if (trim(values_text).empty()) throw CLI::ValidationError("--values", "needs at least one value");
            values = parse_values(values_text);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (seed_opt->count() > 0) g.seed = seed;
    g.out = out;

    try {
        if (trust->parsed())
            return cmd_trust(graph_path, rules_path.empty() ? std::nullopt : std::optional<fs::path>(rules_path), hops, g);
        if (simulate->parsed()) return cmd_simulate(scenario_path, g);
        if (sweep_cmd->parsed()) return cmd_sweep(scenario_path, axis, values, g);
        if (generate->parsed()) return cmd_generate(n, generator, g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
