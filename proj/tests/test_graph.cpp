#include <doctest.h>

#include "helpers.hpp"
#include "stor/generator.hpp"

using namespace stor;
using testing::id;
using testing::net;

TEST_SUITE("graph") {

TEST_CASE("entity and link registration rejects bad input")
{
    SocialGraph g;
    g.add_entity(id(1), 10.0);
    g.add_entity(id(2), 20.0);
    g.add_network(net(1));
    CHECK_CODE(g.add_entity(id(3), 0.0), ErrorCode::DomainViolation);
    CHECK_CODE(g.add_entity(id(2), 5.0), ErrorCode::InvalidConfig);
    CHECK_CODE(g.add_link(FriendLink{id(1), id(9), net(1), {}, {}}), ErrorCode::UnknownEntity);
    CHECK_CODE(g.add_link(FriendLink{id(1), id(1), net(1), {}, {}}), ErrorCode::SelfLink);
    CHECK_CODE(g.add_link(FriendLink{id(1), id(2), net(7), {}, {}}), ErrorCode::UnknownNetwork);
    CHECK_CODE(g.add_link(FriendLink{id(1), id(2), net(1), {}, 1.5}), ErrorCode::DomainViolation);
    CHECK_CODE(g.index_of(id(42)), ErrorCode::UnknownEntity);
}

TEST_CASE("entities stay sorted so index order equals id order")
{
    SocialGraph g;
    for (std::uint32_t v : {5u, 2u, 9u, 1u}) g.add_entity(id(v), 1.0);
    const auto es = g.entities();
    REQUIRE(es.size() == 4);
    CHECK(es[0].id == id(1));
    CHECK(es[3].id == id(9));
    CHECK(g.index_of(id(5)) == 2);
}

TEST_CASE("merged trust takes the maximum over networks")
{
    SocialGraph g = testing::trust_graph(2, {{1, 2, 0.4}});
    g.add_network(net(2));
    g.add_link(FriendLink{id(1), id(2), net(2), {}, 0.7});
    CHECK(g.merge_trust(id(1), id(2)) == doctest::Approx(0.7));
    CHECK_CODE(g.merge_trust(id(2), id(1)), ErrorCode::NoLink);
    REQUIRE(g.out_edges(id(1)).size() == 1);
    CHECK(*g.out_edges(id(1))[0].trust == 0.7);

    g.add_network(net(3));
    g.add_link(FriendLink{id(1), id(2), net(3), {}, std::nullopt});
    CHECK_CODE(g.merge_trust(id(1), id(2)), ErrorCode::TrustNotComputed);
    CHECK_FALSE(g.out_edges(id(1))[0].trust.has_value());
}

TEST_CASE("frozen graphs reject mutation")
{
    SocialGraph g = testing::trust_graph(2, {{1, 2, 0.5}});
    g.freeze();
    CHECK(g.frozen());
    CHECK_CODE(g.add_entity(id(3), 1.0), ErrorCode::FrozenGraph);
    CHECK_CODE(g.set_bandwidth(id(1), 2.0), ErrorCode::FrozenGraph);
    CHECK_CODE(g.set_trust_value(LinkKey{id(1), id(2), net(1)}, 0.1), ErrorCode::FrozenGraph);
}

TEST_CASE("friendship circle respects the hop bound")
{
    const SocialGraph chain = testing::trust_graph(3, {{1, 2, 0.5}, {2, 3, 0.5}});
    const auto one = chain.friendship_circle(id(1), 1);
    CHECK(one.members == std::vector<EntityId>{id(2)});
    const auto two = chain.friendship_circle(id(1), 2);
    CHECK(two.members == std::vector<EntityId>{id(2), id(3)});
    CHECK(two.hop(2) == std::vector<EntityId>{id(3)});
    CHECK_CODE(chain.friendship_circle(id(1), 0), ErrorCode::DomainViolation);
}

TEST_CASE("circle membership by hop follows acyclic paths only")
{
    // 1->2->1 is a cycle; entity 1 must never appear in its own circle.
    const SocialGraph g = testing::trust_graph(3, {{1, 2, 0.5}, {2, 1, 0.5}, {2, 3, 0.5}, {1, 3, 0.5}});
    const auto c = g.friendship_circle(id(1), 3);
    CHECK_FALSE(c.contains(id(1)));
    CHECK(c.hop(1) == std::vector<EntityId>{id(2), id(3)});
    CHECK(c.hop(2) == std::vector<EntityId>{id(3)});
    CHECK(c.hop(3).empty());
    CHECK(c.size() == 2);
}

TEST_CASE("breadth-first reachability agrees with the circle union")
{
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::EdgeProbability;
    spec.edge_probability = 0.08;
    const auto gen = generate_graph(60, spec, 3);
    for (std::size_t i = 0; i < 60; i += 7) {
        const EntityId who = gen.graph.entities()[i].id;
        const auto circle = gen.graph.friendship_circle(who, 2);
        const auto reach = gen.graph.reachable_within(i, 2);
        REQUIRE(circle.size() == reach.size());
        for (std::size_t k = 0; k < reach.size(); ++k) CHECK(gen.graph.entities()[reach[k]].id == circle.members[k]);
    }
}

TEST_CASE("generator is deterministic and honours its parameters")
{
    GeneratorSpec spec;
    const auto a = generate_graph(120, spec, 9);
    const auto b = generate_graph(120, spec, 9);
    CHECK(a.graph == b.graph);
    CHECK(a.edge_probability == b.edge_probability);
    const auto c = generate_graph(120, spec, 10);
    CHECK_FALSE(a.graph == c.graph);

    CHECK(a.mean_circle_fraction == doctest::Approx(0.8).epsilon(0.05));
    CHECK(mean_circle_fraction(a.graph, 2) == doctest::Approx(a.mean_circle_fraction));
    for (const Entity& e : a.graph.entities()) {
        CHECK(e.bandwidth > 0.0);
        CHECK(e.bandwidth <= spec.max_bandwidth);
    }
    for (const auto& [key, link] : a.graph.links()) {
        CHECK(link.attributes.qualitative.size() == 2);
        CHECK(link.attributes.quantitative.size() == 2);
    }
}

TEST_CASE("edge-probability extremes give empty and complete graphs")
{
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::EdgeProbability;
    spec.edge_probability = 0.0;
    CHECK(generate_graph(10, spec, 1).graph.links().empty());
    spec.edge_probability = 1.0;
    spec.extra_network_probability = 0.0;
    CHECK(generate_graph(10, spec, 1).graph.links().size() == 90);
}

TEST_CASE("generator spec parsing and validation")
{
    CHECK(GeneratorSpec::parse("er:0.1").kind == GeneratorSpec::Kind::EdgeProbability);
    CHECK(GeneratorSpec::parse("calibrated:0.5").target_fraction == 0.5);
    CHECK(GeneratorSpec::parse("calibrated:0.5").to_string() == "calibrated:0.5");
    CHECK_CODE(GeneratorSpec::parse("er:1.5"), ErrorCode::InvalidGeneratorParams);
    CHECK_CODE(GeneratorSpec::parse("ergm:0.1"), ErrorCode::InvalidGeneratorParams);
    CHECK_CODE(GeneratorSpec::parse("er"), ErrorCode::InvalidGeneratorParams);
    CHECK_CODE(generate_graph(1, GeneratorSpec{}, 1), ErrorCode::InvalidGeneratorParams);
    GeneratorSpec bad;
    bad.homophily = -1.0;
    CHECK_CODE(bad.validate(), ErrorCode::InvalidGeneratorParams);
}

}
