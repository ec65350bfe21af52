#include <doctest.h>

#include <cstdint>
#include <vector>

#include "boolnet/errors.hpp"
#include "boolnet/network.hpp"
#include "boolnet/rng.hpp"

#include "helpers.hpp"

using boolnet::Network;
using boolnet::State;
using boolnet::WiredNetwork;
using boolnet::WiredNode;

TEST_CASE("wired step indexes tables with the first input in the low bit") {
    // node 0 <- AND(1, 2), node 1 <- NOT 1 via table, node 2 <- copy of 0,
    // and the AND table is asymmetric to pin the bit order:
    // table index = s[inputs[0]] + 2*s[inputs[1]]
    std::vector<WiredNode> nodes{
        {{1, 2}, {false, true, false, false}}, // 1 exactly when s1=1, s2=0
        {{1}, {true, false}},
        {{0}, {false, true}},
    };
    WiredNetwork net(nodes);

    State s = State::from_value(0b010, 3); // s0=0 s1=1 s2=0
    State t = net.step(s);
    CHECK(t.bit(0)); // s1=1, s2=0 hits table index 1
    CHECK_FALSE(t.bit(1));
    CHECK_FALSE(t.bit(2));

    s = State::from_value(0b110, 3); // s1=1 s2=1 -> index 3
    t = net.step(s);
    CHECK_FALSE(t.bit(0));
}

TEST_CASE("wired validation rejects malformed nodes") {
    // input index out of range
    CHECK_THROWS_AS(WiredNetwork({{{2}, {false, true}}, {{0}, {false, true}}}),
                    boolnet::validation_error);
    // duplicate inputs
    CHECK_THROWS_AS(WiredNetwork({{{0, 0}, {false, true, true, false}}}),
                    boolnet::validation_error);
    // table size must be 2^indegree
    CHECK_THROWS_AS(WiredNetwork({{{0}, {false, true, true}}}), boolnet::validation_error);
    // empty network
    CHECK_THROWS_AS(WiredNetwork({}), boolnet::validation_error);
}

TEST_CASE("wired step rejects width mismatches") {
    WiredNetwork net({{{0}, {false, true}}, {{1}, {false, true}}});
    CHECK_THROWS_AS(net.step(State(3)), boolnet::validation_error);
}

TEST_CASE("table networks replay their table") {
    // 2-bit rotation: v -> (v*2 mod 3 variants) spelled out
    std::vector<std::uint32_t> next{1, 2, 3, 0};
    boolnet::RuleNetwork net = boolnet::make_table_network(2, next);
    CHECK(net.size() == 2);
    for (std::uint64_t v = 0; v < 4; ++v)
        CHECK(net.step(State::from_value(v, 2)).to_u64() == next[v]);
    CHECK(net.descriptor()["kind"] == "table");

    CHECK_THROWS_AS(boolnet::make_table_network(2, {0, 1, 2}), boolnet::validation_error);
    CHECK_THROWS_AS(boolnet::make_table_network(2, {0, 1, 2, 4}), boolnet::validation_error);
    CHECK_THROWS_AS(boolnet::make_table_network(27, {}), boolnet::validation_error);
}

TEST_CASE("rule networks guard the rule's output width") {
    boolnet::RuleNetwork bad(4, [](const State&) { return State(5); });
    CHECK_THROWS_AS(bad.step(State(4)), boolnet::validation_error);

    boolnet::RuleNetwork id(4, [](const State& s) { return s; });
    State s = State::from_value(9, 4);
    CHECK(id.step(s) == s);
}

TEST_CASE("simulate returns steps+1 states in order") {
    boolnet::Rng rng(11);
    Network net(testkit::random_wired(6, 2, rng));
    State s0 = rng.uniform_state(6);
    boolnet::Trajectory tr = boolnet::simulate(net, s0, 10);
    REQUIRE(tr.states.size() == 11);
    CHECK(tr.states[0] == s0);
    for (std::size_t t = 0; t + 1 < tr.states.size(); ++t)
        CHECK(tr.states[t + 1] == net.step(tr.states[t]));
}

TEST_CASE("network variant dispatches to the held kind") {
    boolnet::Rng rng(3);
    Network w(testkit::random_wired(5, 2, rng));
    CHECK(w.is_wired());
    CHECK(w.size() == 5);

    Network r(boolnet::RuleNetwork(7, [](const State& s) { return s; }));
    CHECK_FALSE(r.is_wired());
    CHECK(r.size() == 7);
    CHECK(r.rule_net().size() == 7);
}
