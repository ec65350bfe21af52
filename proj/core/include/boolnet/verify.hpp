#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boolnet/network.hpp"
#include "boolnet/state.hpp"

namespace boolnet {

// Degree bookkeeping for wired networks.  indegree(i) = number of inputs
// node i lists (a self-loop counts both ways); outdegree(i) = number of
// nodes that list i.
struct DegreeProfile {
    std::vector<std::uint32_t> indegree;
    std::vector<std::uint32_t> outdegree;
    bool biquadratic = false;          // every in/outdegree <= 2
    bool strictly_biquadratic = false; // biquadratic and every indegree == 2
    // Closed networks with all indegrees 2 and outdegrees <= 2 must have all
    // outdegrees exactly 2 (degree sums match); a violation is reported here
    // instead of silently passing.
    std::string inconsistency;
};

DegreeProfile degree_profile(const WiredNetwork& net);

// Evidence that f is not monotone: s_i = 0 but f(s) is not coordinatewise
// below f(s with bit i set).  `node` is filled by the per-table check.
struct CooperativityWitness {
    State s;
    std::uint32_t flip_bit = 0;
    std::optional<std::uint32_t> node;
};

struct CooperativityReport {
    bool cooperative = false;
    std::optional<CooperativityWitness> witness;
    std::uint64_t pairs_checked = 0;
};

// Per-node truth-table check: every input of every node must act
// monotonically on that node's table.  Sound and complete for wired nets,
// and independent of the global sweep below.
CooperativityReport check_cooperativity_local(const WiredNetwork& net);

// Exhaustive single-bit cover sweep: for every state s and coordinate i with
// s_i = 0, f(s) <= f(s | e_i).  Covers arbitrary pairs by transitivity along
// bit-insertion chains.  Witness, if any, is the lexicographically smallest
// (s, i) in encoding order.  Refuses dimensions above max_dim.
CooperativityReport check_cooperativity_global(const Network& net, std::uint32_t max_dim = 24);

} // namespace boolnet
