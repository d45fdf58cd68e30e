#include <doctest.h>

#include <clocale>
#include <locale>
#include <sstream>

#include "helpers.hpp"
#include "stor/generator.hpp"
#include "stor/graph_io.hpp"
#include "stor/rule_set_io.hpp"
#include "stor/scenario.hpp"

using namespace stor;
using testing::id;

namespace {

std::size_t parse_error_line(const std::string& text)
{
    std::istringstream in(text);
    try {
        (void)read_graph(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return static_cast<std::size_t>(-1);
}

ScenarioFile scenario_from(const std::string& text)
{
    std::istringstream in(text);
    return read_scenario(in, "/base");
}

std::string csv_text(const CsvTable& t)
{
    std::ostringstream out;
    t.write(out);
    return out.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("graph text round-trips on generated graphs")
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const SocialGraph g = generate_graph(40, GeneratorSpec::parse("er:0.08"), seed).graph;
        const std::string text = serialize_graph(g);
        std::istringstream in(text);
        const SocialGraph back = read_graph(in);
        CHECK(back == g);
        CHECK(serialize_graph(back) == text);
    }
}

TEST_CASE("graph with trust values round-trips")
{
    SocialGraph g = testing::trust_graph(3, {{1, 2, 0.25}, {2, 3, 0.1 + 0.2}});
    std::istringstream in(serialize_graph(g));
    CHECK(read_graph(in) == g);
}

TEST_CASE("graph parse errors carry the line number")
{
    CHECK(parse_error_line("") != static_cast<std::size_t>(-1));
    CHECK(parse_error_line("entities 2\nentity 1 bandwidth=1 malicious=0\nentity 2 bandwidth=x malicious=0\n") == 3);
    CHECK(parse_error_line("# c\nentities 1\nentity 1 bandwidth=1 malicious=0\nbogus 1 2\n") == 4);
    CHECK(parse_error_line("entities 2\nentity 1 bandwidth=1 malicious=0\nentity 2 bandwidth=1 malicious=0\n"
                           "link 1 9 network=1\n") == 4);

    std::istringstream empty("");
    CHECK_CODE(read_graph(empty), ErrorCode::ParseError);
    CHECK_CODE(read_graph_file("/nonexistent/graph.txt"), ErrorCode::ParseError);
}

TEST_CASE("rule-set text round-trips")
{
    std::ostringstream out;
    write_rule_set(out, FuzzyRuleSet::worked_example());
    std::istringstream in(out.str());
    const FuzzyRuleSet back = read_rule_set(in);
    const FuzzyRuleSet ref = FuzzyRuleSet::worked_example();
    REQUIRE(back.attributes().size() == ref.attributes().size());
    for (const auto& [name, r] : ref.attributes()) {
        CHECK(back.attribute(name).positive == r.positive);
        CHECK(back.attribute(name).negative == r.negative);
    }
    CHECK(back.weights() == ref.weights());

    const FuzzyRuleSet file = read_rule_set_file(STOR_DATA_DIR "/worked_example_rules.txt");
    CHECK(file.attribute("Relationship").positive == Rule::PositiveToLargest);
    CHECK(file.attribute("Relationship").negative == Rule::NegativeToSmallest);
    CHECK(file.attribute("Major").labels.size() == 3);
}

TEST_CASE("rule-set errors")
{
    std::istringstream bad_rule("attribute A positive_rule=2 negative_rule=3i\nquantitative q weight=1\n");
    CHECK_CODE(read_rule_set(bad_rule), ErrorCode::ParseError);
    std::istringstream bad_sum("attribute A\nquantitative q weight=0.4\nquantitative r weight=0.4\n");
    CHECK_CODE(read_rule_set(bad_sum), ErrorCode::WeightSumViolation);
}

TEST_CASE("scenario parsing")
{
    const ScenarioFile f = scenario_from("# comment\nstrategy=original_tor\nfraction=0.3\ncase=worst\nomega=0.5\n"
                                         "ts_h=0.1\nrounds=7\ndraws=9\nseed=4\nn=50\ngenerator=er:0.1\n"
                                         "circuit_length=2\nsource=3\nrules=r.txt\ngraph=g.txt\n");
    const SimScenario& s = f.scenario;
    CHECK(s.strategy == Strategy::OriginalTor);
    CHECK(s.fraction == 0.3);
    CHECK(s.correlation == CorrelationCase::Worst);
    CHECK(s.policy.omega == 0.5);
    CHECK(s.policy.ts_h == 0.1);
    CHECK(s.policy.circuit_length == 2);
    CHECK(s.rounds == 7);
    CHECK(s.draws == 9);
    CHECK(s.seed == 4);
    CHECK(s.n == 50);
    CHECK(s.generator.kind == GeneratorSpec::Kind::EdgeProbability);
    CHECK(s.source == id(3));
    CHECK(f.rules == std::filesystem::path("/base/r.txt"));
    CHECK(f.graph == std::filesystem::path("/base/g.txt"));

    const ScenarioFile shipped = read_scenario_file(STOR_DATA_DIR "/scenarios/practical_stor.txt");
    CHECK(shipped.scenario.strategy == Strategy::PracticalStor);
    CHECK_FALSE(shipped.graph);
}

TEST_CASE("scenario errors name the problem")
{
    try {
        scenario_from("strategy=practical_stor\nfrobnicate=1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
    }
    CHECK_CODE(scenario_from("fraction=abc\n"), ErrorCode::ParseError);
    CHECK_CODE(scenario_from("no equals sign\n"), ErrorCode::ParseError);
    CHECK_CODE(scenario_from("fraction=1.5\n"), ErrorCode::InvalidConfig);
    CHECK_CODE(scenario_from("strategy=quantum\n"), ErrorCode::ParseError);
    try {
        scenario_from("\nstrategy=quantum\n");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("quantum") != std::string::npos);
    }
}

TEST_CASE("number formatting is shortest round-trip")
{
    CHECK(format_double(0.83125) == "0.83125");
    CHECK(format_double(0.375) == "0.375");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
    double back = 0.0;
    REQUIRE(parse_double(format_double(1.0 / 3.0), back));
    CHECK(back == 1.0 / 3.0);
    CHECK_FALSE(parse_double("1.5x", back));
    CHECK_FALSE(parse_double("", back));
    std::uint64_t u = 0;
    CHECK(parse_uint("42", u));
    CHECK(u == 42);
    CHECK_FALSE(parse_uint("-1", u));
}

TEST_CASE("formatting ignores the global locale")
{
    const char* prev = std::setlocale(LC_ALL, nullptr);
    const std::string saved = prev ? prev : "C";
    bool switched = false;
    for (const char* name : {"de_DE.UTF-8", "fr_FR.UTF-8", "de_DE", "fr_FR"})
        if (std::setlocale(LC_ALL, name)) {
            switched = true;
            break;
        }
    CHECK(format_double(0.5) == "0.5");
    double v = 0.0;
    CHECK(parse_double("0.25", v));
    CHECK(v == 0.25);
    std::setlocale(LC_ALL, saved.c_str());
    if (!switched) MESSAGE("no comma-decimal locale installed; checked under the default locale only");
}

TEST_CASE("csv schemas")
{
    RoundReport a{0, 0.5, 0.75, 10.0, 2};
    RoundReport b{1, 0.25, 0.25, 20.0, 2};
    const std::vector<RoundReport> sel{{0, 0.5, std::nullopt, 8.0, 2}, {1, 0.0, std::nullopt, 4.0, 2}};
    const std::vector<RoundReport> circ{a, b};
    const std::string rounds = csv_text(rounds_csv(sel, circ));
    CHECK(rounds.rfind("round,r_mr,r_mc,avg_bandwidth,avg_circuit_bandwidth,draws\n", 0) == 0);
    CHECK(rounds.find("\nmean,") != std::string::npos);

    const std::string cdf = csv_text(cdf_csv({0.2, 0.1, 0.2, 0.4}));
    CHECK(cdf == "value,cumulative_fraction\n0.1,0.25\n0.2,0.75\n0.4,1\n");
    CHECK(csv_text(cdf_csv({0.0, 0.0, 0.0})) == "value,cumulative_fraction\n0,1\n");

    const SocialGraph g = testing::trust_graph(2, {{1, 2, 0.5}});
    CHECK(csv_text(link_trust_csv(g)) == "from,to,network,tv\n1,2,1,0.5\n");

    CsvTable t({"a", "b"});
    CHECK_THROWS(t.add_row({"1"}));
}

}
