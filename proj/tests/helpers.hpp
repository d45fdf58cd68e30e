#pragma once

#include <initializer_list>
#include <tuple>

#include "stor/errors.hpp"
#include "stor/social_graph.hpp"

#define CHECK_CODE(expr, expected)                                 \
    do {                                                           \
        bool threw_ = false;                                       \
        try {                                                      \
            (void)(expr);                                          \
        } catch (const stor::Error& e_) {                          \
            threw_ = true;                                         \
            CHECK_MESSAGE(e_.code() == (expected), e_.what());     \
        }                                                          \
        CHECK_MESSAGE(threw_, "expected an exception: " #expr);    \
    } while (0)

namespace testing {

inline stor::EntityId id(std::uint32_t v) { return stor::EntityId{v}; }
inline stor::NetworkId net(std::uint32_t v) { return stor::NetworkId{v}; }

// Entities 1..n with bandwidth 1, network 1, and the given trust-valued links.
inline stor::SocialGraph trust_graph(std::uint32_t n,
                                     std::initializer_list<std::tuple<std::uint32_t, std::uint32_t, double>> links)
{
    stor::SocialGraph g;
    for (std::uint32_t i = 1; i <= n; ++i) g.add_entity(id(i), 1.0);
    g.add_network(net(1));
    for (const auto& [a, b, tv] : links) g.add_link(stor::FriendLink{id(a), id(b), net(1), {}, tv});
    return g;
}

}  // namespace testing
