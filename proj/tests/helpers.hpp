#pragma once

// Shared test fixtures: seeded random networks and slow-but-obvious oracles
// the fast library paths are compared against.

#include <cstdint>
#include <map>
#include <vector>

#include "boolnet/network.hpp"
#include "boolnet/rng.hpp"
#include "boolnet/state.hpp"

namespace testkit {

using boolnet::Rng;
using boolnet::State;

// Exact attractor data by walking the full orbit with a visited map.  No
// cleverness: first repeated state marks the cycle entry.
struct NaiveAttractor {
    std::uint64_t transient = 0;
    std::uint64_t period = 0;
    std::uint64_t canonical_value = 0; // smallest encoding on the cycle
};

inline NaiveAttractor naive_attractor(const boolnet::Network& net, const State& s0) {
    std::map<std::uint64_t, std::uint64_t> seen_at; // value -> time
    std::vector<std::uint64_t> orbit;
    State cur = s0;
    std::uint64_t t = 0;
    for (;;) {
        std::uint64_t v = cur.to_u64();
        auto it = seen_at.find(v);
        if (it != seen_at.end()) {
            NaiveAttractor out;
            out.transient = it->second;
            out.period = t - it->second;
            out.canonical_value = orbit[it->second];
            for (std::uint64_t j = it->second; j < t; ++j)
                out.canonical_value = std::min(out.canonical_value, orbit[j]);
            return out;
        }
        seen_at.emplace(v, t);
        orbit.push_back(v);
        cur = net.step(cur);
        ++t;
    }
}

// Random wired net: every node reads `indegree` distinct coordinates through
// an arbitrary truth table.
inline boolnet::WiredNetwork random_wired(std::uint32_t n, std::uint32_t indegree, Rng& rng) {
    std::vector<boolnet::WiredNode> nodes(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        std::vector<std::uint32_t> in;
        while (in.size() < indegree) {
            std::uint32_t c = static_cast<std::uint32_t>(rng.below(n));
            bool dup = false;
            for (auto x : in) dup = dup || x == c;
            if (!dup) in.push_back(c);
        }
        std::vector<bool> table(std::size_t(1) << indegree);
        for (auto&& b : table) b = rng.coin();
        nodes[v] = {std::move(in), std::move(table)};
    }
    return boolnet::WiredNetwork(std::move(nodes));
}

// Same wiring, but tables are forced monotone by the upward closure
// t[mask] |= t[mask minus one bit]; the bias keeps them from collapsing to
// constants.
inline boolnet::WiredNetwork random_monotone_wired(std::uint32_t n, std::uint32_t indegree,
                                                   Rng& rng) {
    std::vector<boolnet::WiredNode> nodes(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        std::vector<std::uint32_t> in;
        while (in.size() < indegree) {
            std::uint32_t c = static_cast<std::uint32_t>(rng.below(n));
            bool dup = false;
            for (auto x : in) dup = dup || x == c;
            if (!dup) in.push_back(c);
        }
        const std::size_t rows = std::size_t(1) << indegree;
        std::vector<bool> table(rows);
        for (auto&& b : table) b = rng.below(4) == 0;
        for (std::size_t mask = 0; mask < rows; ++mask)
            for (std::uint32_t b = 0; b < indegree; ++b)
                if (mask & (std::size_t(1) << b))
                    table[mask] = table[mask] || table[mask & ~(std::size_t(1) << b)];
        nodes[v] = {std::move(in), std::move(table)};
    }
    return boolnet::WiredNetwork(std::move(nodes));
}

// Full monotone random map on n <= 12 coordinates via the same closure over
// the subset lattice, as a table network.
inline boolnet::RuleNetwork random_monotone_table(std::uint32_t n, Rng& rng) {
    const std::uint64_t total = std::uint64_t(1) << n;
    const std::uint64_t mask = total - 1;
    std::vector<std::uint32_t> next(total);
    for (auto& v : next) v = static_cast<std::uint32_t>(rng.next_u64() & rng.next_u64() & mask);
    for (std::uint64_t v = 0; v < total; ++v)
        for (std::uint32_t b = 0; b < n; ++b)
            if (v & (std::uint64_t(1) << b)) next[v] |= next[v & ~(std::uint64_t(1) << b)];
    return boolnet::make_table_network(n, std::move(next));
}

// Monotonicity over every comparable pair, by submask enumeration.
inline bool naive_monotone(const boolnet::Network& net) {
    const std::uint32_t n = net.size();
    const std::uint64_t total = std::uint64_t(1) << n;
    std::vector<std::uint64_t> image(total);
    for (std::uint64_t v = 0; v < total; ++v)
        image[v] = net.step(State::from_value(v, n)).to_u64();
    for (std::uint64_t hi = 0; hi < total; ++hi) {
        // iterate proper submasks of hi
        for (std::uint64_t lo = (hi - 1) & hi; ; lo = (lo - 1) & hi) {
            if (image[lo] & ~image[hi]) return false;
            if (lo == 0) break;
        }
    }
    return true;
}

} // namespace testkit
