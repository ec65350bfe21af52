#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "boolnet/network.hpp"
#include "boolnet/rng.hpp"
#include "boolnet/state.hpp"

namespace boolnet {

// Step budget used when a caller does not pass one: BOOLNET_STEP_BUDGET from
// the environment (read once), else 2^26.  Simulation routines count state
// updates (joint routines count joint steps) and throw budget_error when the
// budget is exhausted; estimators turn that into an inconclusive sample.
std::uint64_t default_step_budget();

struct AttractorInfo {
    std::uint64_t transient = 0; // steps strictly before the cycle
    std::uint64_t period = 0;
    State canonical_state;       // cycle state with the smallest encoding
};

// Attractor identity is (canonical cycle state, period).
inline bool same_attractor(const AttractorInfo& a, const AttractorInfo& b) {
    return a.period == b.period && a.canonical_state == b.canonical_state;
}

AttractorInfo find_attractor(const Network& net, const State& s0, std::uint64_t step_budget);

struct CensusEntry {
    State canonical_state;
    std::uint64_t period = 0;
    std::uint64_t basin = 0; // exhaustive: all states draining here; sampled: hits
};

std::vector<CensusEntry> attractor_census_exhaustive(const Network& net,
                                                     std::uint32_t max_dim = 24);
std::vector<CensusEntry> attractor_census_sampled(const Network& net, std::uint64_t samples,
                                                  std::uint64_t seed, std::uint64_t step_budget);

// Joint run of two trajectories under the same network.  Cycle statistics
// (max_hamming, count_ge, frac_ge) are taken over exactly one joint period
// after the joint transient, which makes "infinitely often" and long-run
// frequencies exact: an event recurs forever iff it happens on the joint
// cycle, and its long-run frequency is its frequency there.
struct JointCycleReport {
    std::uint64_t joint_transient = 0;
    std::uint64_t joint_period = 0;
    std::uint32_t max_hamming = 0;
    std::uint32_t threshold = 0;   // Hamming threshold used for count_ge
    std::uint64_t count_ge = 0;    // cycle times with hamming >= threshold
    double frac_ge = 0.0;          // count_ge / joint_period
    bool coalesced = false;        // trajectories eventually equal
    std::optional<std::uint64_t> coalescence_time; // first t with equal states
};

JointCycleReport joint_cycle_analysis(const Network& net, const State& a, const State& b,
                                      std::uint32_t threshold, std::uint64_t step_budget);

// Tracks an ordered pair lo < hi until the trajectories meet or provably
// never will (the joint cycle either consists of equal pairs or of none).
struct CoalescenceResult {
    bool coalesced = false;
    std::optional<std::uint64_t> time;
    std::uint64_t joint_period = 0;
};

CoalescenceResult coalescence_test(const Network& net, const State& lo, const State& hi,
                                   std::uint64_t step_budget);

// ---- sampling estimators ----------------------------------------------

enum class FlipDirection { any, up, down }; // up flips a 0 bit, down a 1 bit

struct SampleOpts {
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    std::uint64_t step_budget = default_step_budget();
    std::uint32_t threads = 1;
    FlipDirection flip = FlipDirection::any;
};

// One CSV row per sample; fields that a metric does not compute stay empty.
struct SampleRow {
    std::uint64_t sample_index = 0;
    State init_state;
    std::optional<std::uint32_t> flipped_bit;
    std::optional<std::uint64_t> transient_a, period_a;
    std::optional<std::uint64_t> transient_b, period_b;
    std::optional<bool> coalesced;
    std::optional<std::uint64_t> coalescence_time;
    std::optional<std::uint32_t> max_hamming;
    std::optional<double> frac_ge;
    std::string verdict; // "success" | "failure" | "inconclusive"
};

struct MetricReport {
    std::string metric;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::uint64_t successes = 0;
    std::uint64_t inconclusive = 0; // budget-exhausted samples, never successes
    double estimate = 0.0;          // successes / samples
    nlohmann::json params;
    std::vector<SampleRow> rows;
};

using StateSampler = std::function<State(Rng&)>;

// Fraction of initial states whose attractor period exceeds c^n (exact
// integer comparison).  c > 1 as an exact rational.
MetricReport estimate_chaos(const Network& net, const mpq_class& c, const SampleOpts& opt,
                            StateSampler init = {});

// Fraction of (state, flipped bit) draws whose two trajectories end in
// different attractors.
MetricReport estimate_instability(const Network& net, const SampleOpts& opt);

// Fraction of perturbed pairs whose joint cycle reaches Hamming distance
// >= min_hamming (i.e. distance that large recurs forever).
MetricReport estimate_decoherence(const Network& net, std::uint32_t min_hamming,
                                  const SampleOpts& opt);

// Fraction of perturbed pairs for which Hamming distance >= ceil(alpha*n)
// holds on at least a q-fraction of the joint cycle (exact rational compare).
MetricReport estimate_sustained_decoherence(const Network& net, const mpq_class& alpha,
                                            const mpq_class& q, const SampleOpts& opt);

// Fraction of perturbed pairs whose trajectories meet.  On cooperative
// networks this is the complement of instability sample by sample.
MetricReport estimate_coalescence(const Network& net, const SampleOpts& opt);

// ---- order chains ------------------------------------------------------

// Chain s^0 < s^1 < ... < s^n from a permutation: s^k has bit j set iff
// perm[j] < k.  Evolves every chain state t steps and returns the n Hamming
// increments between consecutive images.  On cooperative networks the images
// stay nested, so the increments sum to at most n.
struct ChainProfile {
    std::vector<std::uint32_t> increments;
    std::uint32_t total = 0;
};

ChainProfile chain_hamming_profile(const Network& net, const std::vector<std::uint32_t>& perm,
                                   std::uint64_t t, std::uint64_t step_budget);

inline std::uint32_t count_jumps_ge(const ChainProfile& p, std::uint32_t threshold) {
    std::uint32_t c = 0;
    for (auto h : p.increments)
        if (h >= threshold) ++c;
    return c;
}

// ---- closed-form bounds -------------------------------------------------

// Smallest N such that C(N,k)/2^N < p*alpha/2 for every k in 1..N (exact
// big-integer arithmetic; the scan checks the central binomial, which
// dominates the rest).
std::uint32_t n_threshold(const mpq_class& alpha, const mpq_class& p,
                          std::uint32_t scan_cap = 1u << 20);

// Upper bound on achievable q for sustained decoherence at rate c:
// 0.75 + ln(c/2) / (2 ln 0.75) for sqrt(3) < c <= 2, clamped to 1 at or
// below sqrt(3).  Domain error outside (1, 2].
double q_upper_bound(double c);

} // namespace boolnet
