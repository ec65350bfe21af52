#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "boolnet/analysis.hpp"
#include "boolnet/constructions.hpp"
#include "boolnet/errors.hpp"
#include "boolnet/exact.hpp"
#include "boolnet/network.hpp"
#include "boolnet/rng.hpp"
#include "boolnet/verify.hpp"

#include "helpers.hpp"

using boolnet::Network;
using boolnet::PartialFunction;
using boolnet::RuleNetwork;
using boolnet::State;

namespace {

State sv(std::uint64_t v, std::uint32_t n) { return State::from_value(v, n); }

// Oracle: the least extension evaluated directly from the point list.
State naive_join(const std::vector<std::pair<State, State>>& pts, const State& x) {
    State acc(x.size());
    for (const auto& [s, img] : pts)
        if (boolnet::leq(s, x)) acc |= img;
    return acc;
}

} // namespace

TEST_CASE("least extension on a two-point incomparable domain") {
    PartialFunction pf;
    pf.n = 2;
    pf.points = {{sv(1, 2), sv(3, 2)}, {sv(2, 2), sv(0, 2)}};
    RuleNetwork net = boolnet::monotone_extension(pf);
    CHECK(net.step(sv(0, 2)) == sv(0, 2)); // empty join
    CHECK(net.step(sv(1, 2)) == sv(3, 2));
    CHECK(net.step(sv(2, 2)) == sv(0, 2));
    CHECK(net.step(sv(3, 2)) == sv(3, 2));

    // explicit-only domains serialize themselves
    CHECK(net.descriptor().at("name") == "extension");
    CHECK(net.descriptor().at("params").at("points").size() == 2);
}

TEST_CASE("random incomparable domains: agreement, cooperativity, sandwich") {
    boolnet::Rng rng(321);
    for (int round = 0; round < 40; ++round) {
        const std::uint32_t n = 8;
        // equal-weight states are pairwise incomparable
        const std::uint32_t wgt = 2 + static_cast<std::uint32_t>(rng.below(5));
        std::set<std::uint64_t> used;
        PartialFunction pf;
        pf.n = n;
        while (pf.points.size() < 10) {
            State s(n);
            while (s.weight() < wgt) s.set(static_cast<std::uint32_t>(rng.below(n)), true);
            if (!used.insert(s.to_u64()).second) continue;
            pf.points.emplace_back(std::move(s), rng.uniform_state(n));
        }

        RuleNetwork least = boolnet::monotone_extension(pf);
        RuleNetwork greatest = boolnet::greatest_monotone_extension(pf);

        for (const auto& [s, img] : pf.points) {
            CHECK(least.step(s) == img);
            CHECK(greatest.step(s) == img);
        }
        CHECK(boolnet::check_cooperativity_global(Network(least)).cooperative);
        CHECK(boolnet::check_cooperativity_global(Network(greatest)).cooperative);
        for (std::uint64_t v = 0; v < 256; ++v) {
            State x = sv(v, n);
            State lo = least.step(x);
            CHECK(lo == naive_join(pf.points, x));
            CHECK(boolnet::leq(lo, greatest.step(x)));
        }
    }
}

TEST_CASE("order-consistent comparable domains sandwich the original map") {
    boolnet::Rng rng(654);
    for (int round = 0; round < 25; ++round) {
        const std::uint32_t n = 6;
        RuleNetwork mono = testkit::random_monotone_table(n, rng);
        PartialFunction pf;
        pf.n = n;
        std::set<std::uint64_t> used;
        for (int i = 0; i < 12; ++i) {
            State s = rng.uniform_state(n);
            if (!used.insert(s.to_u64()).second) continue;
            pf.points.emplace_back(s, mono.step(s));
        }
        RuleNetwork least = boolnet::monotone_extension(pf);
        RuleNetwork greatest = boolnet::greatest_monotone_extension(pf);
        for (std::uint64_t v = 0; v < 64; ++v) {
            State x = sv(v, n);
            CHECK(boolnet::leq(least.step(x), mono.step(x)));
            CHECK(boolnet::leq(mono.step(x), greatest.step(x)));
        }
    }
}

TEST_CASE("domain validation reports duplicates and order violations") {
    PartialFunction dup;
    dup.n = 2;
    dup.points = {{sv(1, 2), sv(1, 2)}, {sv(1, 2), sv(3, 2)}};
    CHECK_THROWS_WITH_AS(boolnet::monotone_extension(dup),
                         doctest::Contains("duplicate domain state"),
                         boolnet::validation_error);

    PartialFunction bad;
    bad.n = 2;
    bad.points = {{sv(0, 2), sv(2, 2)}, {sv(1, 2), sv(1, 2)}}; // 0 <= 1 but 2 !<= 1
    CHECK_THROWS_WITH_AS(boolnet::monotone_extension(bad),
                         doctest::Contains("order-inconsistent domain"),
                         boolnet::validation_error);
    CHECK_THROWS_AS(boolnet::greatest_monotone_extension(bad), boolnet::validation_error);

    PartialFunction widths;
    widths.n = 3;
    widths.points = {{sv(1, 2), sv(1, 3)}};
    CHECK_THROWS_AS(boolnet::monotone_extension(widths), boolnet::validation_error);

    PartialFunction empty_dim;
    CHECK_THROWS_AS(boolnet::monotone_extension(empty_dim), boolnet::validation_error);

    PartialFunction rule_only;
    rule_only.n = 4;
    rule_only.image = [](const State& s) { return s; };
    CHECK_THROWS_AS(boolnet::monotone_extension(rule_only), boolnet::validation_error);
}

TEST_CASE("rule-defined domains: materialized, joined, and listed forms agree") {
    const std::uint32_t n = 6;
    auto is_weight2 = [](const State& s) { return s.weight() == 2; };

    PartialFunction ruled;
    ruled.n = n;
    ruled.member = is_weight2;
    ruled.image = [](const State& s) { return s; };

    PartialFunction joined = ruled;
    joined.dominated_join = [n](const State& x) -> std::optional<State> {
        // join of all weight-2 states below x: x itself once |x| >= 2
        if (x.weight() < 2) return std::nullopt;
        return x;
    };

    PartialFunction listed;
    listed.n = n;
    for (std::uint64_t v = 0; v < 64; ++v)
        if (__builtin_popcountll(v) == 2) listed.points.emplace_back(sv(v, n), sv(v, n));

    RuleNetwork a = boolnet::monotone_extension(ruled);
    RuleNetwork b = boolnet::monotone_extension(joined);
    RuleNetwork c = boolnet::monotone_extension(listed);
    for (std::uint64_t v = 0; v < 64; ++v) {
        State x = sv(v, n);
        State img = a.step(x);
        CHECK(img == b.step(x));
        CHECK(img == c.step(x));
    }
    // a dominated_join keeps the rule anonymous; the others self-describe
    CHECK(b.descriptor().empty());
    CHECK_FALSE(a.descriptor().empty());

    // materialization refuses large rule-defined domains
    PartialFunction big = ruled;
    big.n = 14;
    CHECK_THROWS_AS(boolnet::monotone_extension(big, 12), boolnet::capacity_error);
    CHECK_THROWS_AS(boolnet::greatest_monotone_extension(big, 12), boolnet::capacity_error);

    // the greatest extension has no dominated_join route
    PartialFunction djoin_only;
    djoin_only.n = n;
    djoin_only.dominated_join = joined.dominated_join;
    CHECK_THROWS_AS(boolnet::greatest_monotone_extension(djoin_only), boolnet::validation_error);
}

TEST_CASE("empty domains give the constant extensions") {
    PartialFunction pf;
    pf.n = 3;
    RuleNetwork least = boolnet::monotone_extension(pf);
    RuleNetwork greatest = boolnet::greatest_monotone_extension(pf);
    for (std::uint64_t v = 0; v < 8; ++v) {
        CHECK(least.step(sv(v, 3)).none());
        CHECK(greatest.step(sv(v, 3)) == sv(7, 3));
    }
}

TEST_CASE("oscillating network runs the pinned 4-coordinate example") {
    boolnet::OscillatingParams params;
    params.n = 4;
    params.len = 2;
    params.family = {sv(1, 4), sv(2, 4)};
    RuleNetwork net = boolnet::build_oscillating_network(params);

    // the family cycle and its complement cycle
    CHECK(net.step(sv(1, 4)) == sv(2, 4));
    CHECK(net.step(sv(2, 4)) == sv(1, 4));
    CHECK(net.step(sv(14, 4)) == sv(13, 4));
    CHECK(net.step(sv(13, 4)) == sv(14, 4));

    // off-cycle states funnel by weight parity
    CHECK(net.step(sv(3, 4)) == sv(14, 4));  // weight 2, even
    CHECK(net.step(sv(11, 4)) == sv(1, 4));  // weight 3, odd
    CHECK(net.step(sv(0, 4)) == sv(14, 4));

    for (std::uint64_t v = 0; v < 16; ++v) {
        if (v == 1 || v == 2 || v == 13 || v == 14) continue;
        State x = sv(v, 4);
        State img = net.step(x);
        CHECK(img == ((x.weight() & 1) ? sv(1, 4) : sv(14, 4)));
    }
}

TEST_CASE("oscillating trajectories split onto complementary cycles") {
    boolnet::OscillatingParams params;
    params.n = 8;
    params.len = 3;
    params.seed = 99;
    RuleNetwork rnet = boolnet::build_oscillating_network(params);
    Network net(rnet);

    // collect both cycles: even weight funnels to one, odd weight to the other
    std::set<std::uint64_t> cycle_states;
    for (std::uint64_t start : {0, 1}) {
        State s = rnet.step(sv(start, 8)); // lands on a cycle immediately
        for (int i = 0; i < 6; ++i) {
            cycle_states.insert(s.to_u64());
            s = rnet.step(s);
        }
    }

    boolnet::Rng rng(1);
    for (int round = 0; round < 50; ++round) {
        State a = rng.uniform_state(8);
        if (cycle_states.count(a.to_u64())) continue;
        std::uint32_t bit = static_cast<std::uint32_t>(rng.below(8));
        State b = a;
        b.flip(bit);
        if (cycle_states.count(b.to_u64())) continue;

        // the flip changes weight parity, so the pair lands on opposite
        // cycles and stays n apart forever
        boolnet::JointCycleReport rep = boolnet::joint_cycle_analysis(net, a, b, 8, 1 << 20);
        CHECK(rep.joint_period == 3);
        CHECK(rep.max_hamming == 8);
        CHECK(rep.count_ge == rep.joint_period);
        CHECK_FALSE(rep.coalesced);

        boolnet::AttractorInfo ia = boolnet::find_attractor(net, a, 1 << 20);
        boolnet::AttractorInfo ib = boolnet::find_attractor(net, b, 1 << 20);
        CHECK(ia.period == 3);
        CHECK(ib.period == 3);
        CHECK_FALSE(boolnet::same_attractor(ia, ib));
        CHECK(ia.transient <= 1);
    }
}

TEST_CASE("the oscillating rule is deliberately not cooperative") {
    boolnet::OscillatingParams params;
    params.n = 4;
    params.len = 2;
    params.family = {sv(1, 4), sv(2, 4)};
    Network net(boolnet::build_oscillating_network(params));
    auto rep = boolnet::check_cooperativity_global(net);
    CHECK_FALSE(rep.cooperative);
    REQUIRE(rep.witness.has_value());
    State s = rep.witness->s;
    State t = s;
    REQUIRE_FALSE(s.bit(rep.witness->flip_bit));
    t.flip(rep.witness->flip_bit);
    CHECK_FALSE(boolnet::leq(net.step(s), net.step(t)));
}

TEST_CASE("oscillating parameter validation") {
    using boolnet::OscillatingParams;
    auto build = [](OscillatingParams p) { return boolnet::build_oscillating_network(p); };

    OscillatingParams p;
    p.n = 1;
    p.len = 1;
    CHECK_THROWS_AS(build(p), boolnet::validation_error);
    p.n = 4;
    p.len = 0;
    CHECK_THROWS_AS(build(p), boolnet::validation_error);
    p.len = 9; // 9 > 2^3
    CHECK_THROWS_AS(build(p), boolnet::validation_error);
    p.len = 2;
    p.family = {sv(1, 4)};
    CHECK_THROWS_AS(build(p), boolnet::validation_error); // size mismatch
    p.family = {sv(1, 4), sv(9, 4)};
    CHECK_THROWS_AS(build(p), boolnet::validation_error); // top coordinate set
    p.family = {sv(1, 4), sv(1, 4)};
    CHECK_THROWS_AS(build(p), boolnet::validation_error); // duplicate
    p.family = {sv(1, 4), sv(1, 3)};
    CHECK_THROWS_AS(build(p), boolnet::validation_error); // width mismatch
}

TEST_CASE("oscillating feasibility is an exact rational comparison") {
    using boolnet::oscillating_supports_target;
    // (11/10)^10 + 1 = 35937424601/10^10 admits len 3 but not len 4, and
    // stays below the room bound (1/2)/9 * 256 = 128/9
    CHECK(oscillating_supports_target(10, 3, mpq_class(11, 10), mpq_class(1, 2)));
    CHECK_FALSE(oscillating_supports_target(10, 4, mpq_class(11, 10), mpq_class(1, 2)));
    // (3/2)^4 + 1 = 97/16 is not below (1/2)/3 * 4 = 2/3
    CHECK_FALSE(oscillating_supports_target(4, 2, mpq_class(3, 2), mpq_class(1, 2)));

    CHECK_THROWS_AS(oscillating_supports_target(1, 1, mpq_class(3, 2), mpq_class(1, 2)),
                    boolnet::validation_error);
    CHECK_THROWS_AS(oscillating_supports_target(4, 2, mpq_class(1), mpq_class(1, 2)),
                    boolnet::domain_error);
    CHECK_THROWS_AS(oscillating_supports_target(4, 2, mpq_class(3, 2), mpq_class(1)),
                    boolnet::domain_error);
}

// The 12-coordinate family instance is small enough to cross-check the whole
// rule against a naive join over its defining points.
TEST_CASE("decoherence family matches a naive extension oracle exhaustively") {
    boolnet::DecoherenceFamilyParams params{12, 1, 4, 8, 2, mpq_class(1, 8)};
    boolnet::DecoherenceFamily fam = boolnet::build_decoherence_family(params);
    const std::uint32_t n = 12, span = 4, len = 2;
    CHECK(fam.hamming_floor == 2); // ceil(12/8)

    REQUIRE(fam.orbits.size() == span);
    for (const auto& orbit : fam.orbits) REQUIRE(orbit.size() == len);

    // orbits actually cycle under the network
    for (std::uint32_t j = 0; j < span; ++j)
        for (std::uint32_t i = 0; i < len; ++i)
            CHECK(fam.net.step(fam.orbits[j][i]) == fam.orbits[j][(i + 1) % len]);

    // naive membership: set zeros-block bit, clear ones-block bit, weight in window
    auto in_z_naive = [&](const State& s) {
        State t = s;
        t &= fam.zeros_block_mask;
        if (t.none()) return false;
        if (boolnet::leq(fam.ones_block_mask, s)) return false;
        return params.w <= s.weight() && s.weight() <= params.u;
    };

    // full defining point list: orbit transitions plus the funnel rule
    std::vector<std::pair<State, State>> pts;
    for (std::uint32_t j = 0; j < span; ++j)
        for (std::uint32_t i = 0; i < len; ++i)
            pts.emplace_back(fam.orbits[j][i], fam.orbits[j][(i + 1) % len]);
    for (std::uint64_t v = 0; v < 4096; ++v) {
        State s = sv(v, n);
        CHECK(fam.in_z(s) == in_z_naive(s));
        auto img = fam.z_rule_image(s);
        if (in_z_naive(s) && s.weight() > params.w) {
            REQUIRE(img.has_value());
            CHECK(*img == fam.orbits[s.weight() - params.w - 1][0]);
            pts.emplace_back(s, *img);
        } else {
            CHECK_FALSE(img.has_value());
        }
    }

    for (std::uint64_t v = 0; v < 4096; ++v) {
        State x = sv(v, n);
        CHECK(fam.net.step(x) == naive_join(pts, x));
    }

    CHECK(boolnet::check_cooperativity_global(Network(fam.net)).cooperative);
}

TEST_CASE("funnel states drain onto the attractor their weight selects") {
    boolnet::DecoherenceFamilyParams params{12, 1, 4, 8, 2, mpq_class(1, 8)};
    boolnet::DecoherenceFamily fam = boolnet::build_decoherence_family(params);
    Network net(fam.net);

    // canonical ids of the four attractors
    std::vector<boolnet::AttractorInfo> ids;
    for (std::uint32_t j = 0; j < 4; ++j)
        ids.push_back(boolnet::find_attractor(net, fam.orbits[j][0], 1 << 20));

    std::uint64_t seen_zero_weight = 0, seen_funnel = 0;
    for (std::uint64_t v = 0; v < 4096; ++v) {
        State s = sv(v, 12);
        if (!fam.in_z(s)) continue;
        const std::uint32_t wgt = s.weight();
        boolnet::AttractorInfo info = boolnet::find_attractor(net, s, 1 << 20);
        if (wgt == params.w) {
            // below every rule image: falls to the all-zeros fixed point
            CHECK(net.step(s).none());
            CHECK(info.period == 1);
            CHECK(info.canonical_state.none());
            ++seen_zero_weight;
        } else {
            CHECK(boolnet::same_attractor(info, ids[wgt - params.w - 1]));
            CHECK(info.transient >= 1);
            ++seen_funnel;
        }
    }
    CHECK(seen_zero_weight > 0);
    CHECK(seen_funnel > 100);
}

TEST_CASE("adjacent-weight funnel pairs keep their divergence floor recurring") {
    boolnet::DecoherenceFamilyParams params{12, 1, 4, 8, 2, mpq_class(1, 8)};
    boolnet::DecoherenceFamily fam = boolnet::build_decoherence_family(params);
    Network net(fam.net);

    boolnet::Rng rng(31);
    std::uint64_t tested = 0;
    while (tested < 60) {
        State s = rng.uniform_state(12);
        if (!fam.in_z(s)) continue;
        const std::uint32_t wgt = s.weight();
        // attractor indices wgt-w-1 and wgt-w must exist and sit in the
        // matching-phase guarantee range
        if (wgt <= params.w || wgt - params.w >= 3) continue;
        std::uint32_t bit = static_cast<std::uint32_t>(rng.below(12));
        if (s.bit(bit)) continue;
        State t = s;
        t.flip(bit);
        if (!fam.in_z(t)) continue;

        boolnet::JointCycleReport rep =
            boolnet::joint_cycle_analysis(net, s, t, fam.hamming_floor, 1 << 20);
        CHECK(rep.joint_period == params.len);
        CHECK(rep.max_hamming >= fam.hamming_floor);
        CHECK(rep.count_ge >= 1);
        CHECK_FALSE(rep.coalesced);
        ++tested;
    }
}

TEST_CASE("family feasibility gates reject bad parameter sets") {
    using boolnet::DecoherenceFamilyParams;
    auto build = [](DecoherenceFamilyParams p) { return boolnet::build_decoherence_family(p); };

    CHECK_THROWS_WITH_AS(build({12, 1, 4, 8, 3, mpq_class(1, 8)}),
                         doctest::Contains("pool too small"), boolnet::validation_error);
    CHECK_THROWS_WITH_AS(build({12, 1, 5, 7, 2, mpq_class(1, 8)}),
                         doctest::Contains("marker block too narrow"),
                         boolnet::validation_error);
    CHECK_THROWS_WITH_AS(build({12, 1, 4, 8, 2, mpq_class(1, 2)}),
                         doctest::Contains("free pool fraction"), boolnet::validation_error);

    CHECK_THROWS_AS(build({12, 0, 4, 8, 2, mpq_class(1, 8)}), boolnet::validation_error);
    CHECK_THROWS_AS(build({12, 1, 8, 4, 2, mpq_class(1, 8)}), boolnet::validation_error);
    CHECK_THROWS_AS(build({12, 1, 4, 7, 2, mpq_class(1, 8)}), boolnet::validation_error);
    CHECK_THROWS_AS(build({12, 1, 4, 13, 2, mpq_class(1, 8)}), boolnet::validation_error);
    CHECK_THROWS_AS(build({10, 1, 3, 9, 2, mpq_class(1, 8)}), boolnet::validation_error);
    CHECK_THROWS_AS(build({12, 1, 4, 8, 0, mpq_class(1, 8)}), boolnet::validation_error);
    CHECK_THROWS_AS(build({12, 1, 4, 8, 2, mpq_class(1)}), boolnet::validation_error);

    boolnet::DecoherenceFamily fam =
        boolnet::build_decoherence_family({12, 1, 4, 8, 2, mpq_class(1, 8)});
    CHECK_THROWS_AS(fam.in_z(State(5)), boolnet::validation_error);
}

TEST_CASE("parameter derivation lands on the frozen desk-scale instance") {
    boolnet::DecoherenceFamilyParams got =
        boolnet::derive_decoherence_params(mpq_class(1, 20), mpq_class(1, 10),
                                           mpq_class(101, 100));
    CHECK(got.n == 20);
    CHECK(got.z == 3);
    CHECK(got.w == 7);
    CHECK(got.u == 13);
    CHECK(got.len == 2);
    CHECK(got.alpha == mpq_class(1, 20));

    // the derived instance actually builds
    boolnet::DecoherenceFamily fam = boolnet::build_decoherence_family(got);
    CHECK(fam.orbits.size() == got.u - got.w);

    CHECK_THROWS_AS(boolnet::derive_decoherence_params(mpq_class(1), mpq_class(1, 10),
                                                       mpq_class(101, 100)),
                    boolnet::domain_error);
    CHECK_THROWS_AS(boolnet::derive_decoherence_params(mpq_class(1, 20), mpq_class(1, 10),
                                                       mpq_class(2)),
                    boolnet::domain_error);

    // a probability target within 2^-64 of 1 exceeds the control-block scan
    mpq_class near_one = 1 - mpq_class(mpz_class(1), boolnet::pow_z(2, 70));
    near_one.canonicalize();
    CHECK_THROWS_AS(boolnet::derive_decoherence_params(mpq_class(1, 20), near_one,
                                                       mpq_class(101, 100)),
                    boolnet::capacity_error);

    // a base this close to 2 pushes the cycle length past desk scale before
    // any window carries enough mass
    CHECK_THROWS_AS(boolnet::derive_decoherence_params(mpq_class(1, 100), mpq_class(1, 2),
                                                       mpq_class(199, 100)),
                    boolnet::domain_error);
}

TEST_CASE("counter tape cycles through the value grid") {
    boolnet::RobustScheme scheme(4, 2);
    boolnet::CounterTape tape = boolnet::build_counter_tape({5, 4}, scheme);
    CHECK(tape.net.size() == 16);
    CHECK(tape.block_width == 8);
    CHECK(tape.period() == 20);

    for (std::uint64_t a = 0; a < 5; ++a)
        for (std::uint64_t b = 0; b < 4; ++b) {
            State s = tape.encode_values({a, b});
            auto back = tape.decode_state(s);
            REQUIRE(back.has_value());
            CHECK((*back)[0] == a);
            CHECK((*back)[1] == b);
            CHECK(tape.net.step(s) == tape.encode_values({(a + 1) % 5, (b + 1) % 4}));
        }

    boolnet::Rng rng(8);
    for (int i = 0; i < 5; ++i) {
        State s = tape.random_coding_state(rng);
        CHECK(tape.is_coding_state(s));
        boolnet::AttractorInfo info = boolnet::find_attractor(Network(tape.net), s, 1 << 20);
        CHECK(info.transient == 0);
        CHECK(info.period == 20);
    }
}

TEST_CASE("counter attractor period equals the lcm of the moduli") {
    struct Instance {
        std::vector<std::uint64_t> moduli;
        std::uint32_t k, ell;
    };
    for (const Instance& inst : {Instance{{3}, 4, 1},
                                 Instance{{7, 5, 4}, 4, 2},
                                 Instance{{9, 6, 4}, 6, 2},
                                 Instance{{8, 3}, 4, 2}}) {
        boolnet::RobustScheme scheme(inst.k, inst.ell);
        boolnet::CounterTape tape = boolnet::build_counter_tape(inst.moduli, scheme);

        std::uint64_t want = 1;
        for (auto m : inst.moduli) want = std::lcm(want, m);
        CHECK(tape.period() == mpz_class(want));

        boolnet::Rng rng(inst.k);
        State s = tape.random_coding_state(rng);
        boolnet::AttractorInfo info =
            boolnet::find_attractor(Network(tape.net), s, 1 << 22);
        CHECK(info.transient == 0);
        CHECK(info.period == want);
    }
}

TEST_CASE("small counter tapes are globally cooperative") {
    boolnet::CounterTape tape = boolnet::build_counter_tape({3, 2}, boolnet::RobustScheme(4, 1));
    CHECK(tape.net.size() == 8);
    CHECK(boolnet::check_cooperativity_global(Network(tape.net)).cooperative);
}

TEST_CASE("counter input validation") {
    boolnet::RobustScheme scheme(4, 2); // capacity 9
    CHECK_THROWS_AS(boolnet::build_counter_tape({}, scheme), boolnet::validation_error);
    CHECK_THROWS_AS(boolnet::build_counter_tape({0}, scheme), boolnet::validation_error);
    CHECK_THROWS_AS(boolnet::build_counter_tape({10}, scheme), boolnet::capacity_error);
    CHECK_THROWS_AS(boolnet::build_counter_tape({2}, boolnet::RobustScheme(8, 9)),
                    boolnet::capacity_error); // 72-bit blocks

    boolnet::CounterTape tape = boolnet::build_counter_tape({5, 4}, scheme);
    CHECK_THROWS_AS(tape.encode_values({5, 0}), boolnet::validation_error);
    CHECK_THROWS_AS(tape.encode_values({0}), boolnet::validation_error);
    CHECK_THROWS_AS(tape.decode_state(State(8)), boolnet::validation_error);

    // a codeword above the block's modulus is not a counter state
    State s = tape.encode_values({4, 3});
    State bad(16);
    bad.deposit_bits(0, 8, boolnet::encode_word(7, scheme).to_u64()); // 7 >= 5
    bad.deposit_bits(8, 8, s.extract_bits(8, 8));
    CHECK_FALSE(tape.decode_state(bad).has_value());
    State junk(16); // all-zero blocks are not codewords
    CHECK_FALSE(tape.is_coding_state(junk));
}
