#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "boolnet/coding.hpp"
#include "boolnet/network.hpp"
#include "boolnet/rng.hpp"
#include "boolnet/state.hpp"

namespace boolnet {

// Partial Boolean map: explicit (state, image) pairs plus an optional
// rule-defined part for domains too large to list.  The rule-defined part is
// queried either through `dominated_join` (exact coordinatewise OR of rule
// images over all rule-domain points below the query; nullopt when there are
// none) or by materializing the domain below a dimension cap.
struct PartialFunction {
    std::uint32_t n = 0;
    std::vector<std::pair<State, State>> points;

    std::function<bool(const State&)> member;
    std::function<State(const State&)> image;
    std::function<std::optional<State>(const State&)> dominated_join;
};

// Least monotone extension: F(x) = OR of images over domain points <= x
// (empty join = all-zeros).  Requires the domain to be order-consistent
// (a <= b implies f(a) <= f(b)); explicit points are validated pairwise and a
// violating pair is reported.  The returned rule agrees with the partial
// function on its domain and is below every other monotone extension.
// An empty descriptor derives one: explicit-only domains serialize as an
// "extension" construction over their points, rule-defined domains stay
// anonymous (saving them materializes the table).
RuleNetwork monotone_extension(const PartialFunction& pf,
                               std::uint32_t materialize_cap = 12,
                               nlohmann::json descriptor = {});

// Dual construction: G(x) = AND of images over domain points >= x (empty
// meet = all-ones).  Greatest monotone extension; together with the least
// one it sandwiches every monotone extension.  Rule-defined parts must be
// materializable (dominated_join has no dual here).
RuleNetwork greatest_monotone_extension(const PartialFunction& pf,
                                        std::uint32_t materialize_cap = 12);

// ---- oscillating two-cycle network --------------------------------------

struct OscillatingParams {
    std::uint32_t n = 0;   // dimension
    std::uint32_t len = 0; // cycle length
    std::uint64_t seed = 0;
    // Optional explicit cycle family: len distinct states with the top
    // coordinate clear.  Left empty, a seeded-random family is drawn.
    std::vector<State> family;
};

// Network with two disjoint len-cycles, one through the family states and
// one through their complements.  Every state off the cycles funnels onto
// them in a single step by weight parity: odd weight to the first family
// state, even weight to its complement.  Flipping one bit of a generic state
// therefore sends the two trajectories onto opposite cycles, Hamming
// distance n apart forever.  Deliberately not cooperative.
RuleNetwork build_oscillating_network(const OscillatingParams& params);

// Exact feasibility of (n, len) against a divergence base c and probability
// target p: len <= c^n + 1 and c^n + 1 < (1-p)/(n-1) * 2^(n-2).
bool oscillating_supports_target(std::uint32_t n, std::uint32_t len, const mpq_class& c,
                                 const mpq_class& p);

// ---- cooperative decoherence family --------------------------------------

struct DecoherenceFamilyParams {
    std::uint32_t n = 0;   // dimension
    std::uint32_t z = 0;   // control-block half-width
    std::uint32_t w = 0;   // weight window lower bound
    std::uint32_t u = 0;   // weight window upper bound; u - w even
    std::uint32_t len = 0; // attractor period
    mpq_class alpha;       // divergence fraction in (0, 1)
};

// Cooperative network with u-w attractors of period len, built so that
// initial states whose weights sit in the window land on the attractor
// indexed by their weight, and adjacent-weight pairs keep Hamming distance
// >= ceil(alpha*n) recurring forever.
//
// Layout of the n coordinates: z zeros-block bits, z ones-block bits, u-w
// marker bits, u-w ladder bits, and a free pool.  Every attractor state
// fixes the ones block, avoids the zeros block, carries one of u-w+1
// half-weight marker subsets plus a ladder prefix, and (for phases past the
// marker range) one of `len` equal-size pool subsets.
struct DecoherenceFamily {
    DecoherenceFamilyParams params;
    std::uint32_t hamming_floor = 0; // ceil(alpha * n)
    // orbits[j][i]: phase-i state of attractor j (0-based in both indices;
    // attractor j collects the weight-(w+j+1) entries).
    std::vector<std::vector<State>> orbits;
    RuleNetwork net;

    // Funnel zone: a set zeros-block coordinate, a clear ones-block
    // coordinate, and weight within [w, u].
    bool in_z(const State& s) const;
    // Explicit rule on the funnel zone: states of weight w+j (j >= 1) map to
    // the phase-0 state of attractor j-1.  Weight-w members are below every
    // rule image and fall to the all-zeros fixed point instead.
    std::optional<State> z_rule_image(const State& s) const;

    State zeros_block_mask;
    State ones_block_mask;
};

DecoherenceFamily build_decoherence_family(const DecoherenceFamilyParams& params);

// Desk-scale parameter search following the feasibility recipe: the smallest
// z with p < 1 - 2^(2-z), then the smallest dimension and symmetric weight
// window whose exact binomial mass beats p + 2^(2-z) while the three
// feasibility conditions hold; len is the smallest integer exceeding c^n.
DecoherenceFamilyParams derive_decoherence_params(const mpq_class& alpha, const mpq_class& p,
                                                  const mpq_class& c, std::uint32_t max_n = 64);

// ---- coded counter tape ---------------------------------------------------

// One robust-coded block per modulus; block b steps the codeword of v to the
// codeword of (v+1) mod moduli[b] through the least monotone extension of
// that partial map (code words are pairwise incomparable, so the extension
// is exact on them).  From any coding state the attractor period is
// lcm(moduli).
struct CounterTape {
    RobustScheme scheme;
    std::vector<std::uint64_t> moduli;
    std::uint32_t block_width = 0; // scheme.word_bits()
    RuleNetwork net;

    State encode_values(const std::vector<std::uint64_t>& values) const;
    // Per-block values when every block is a codeword within its modulus.
    std::optional<std::vector<std::uint64_t>> decode_state(const State& s) const;
    bool is_coding_state(const State& s) const { return decode_state(s).has_value(); }
    State random_coding_state(Rng& rng) const;
    mpz_class period() const; // lcm of the moduli
};

CounterTape build_counter_tape(const std::vector<std::uint64_t>& moduli,
                               const RobustScheme& scheme);

// ---- wired gadgets --------------------------------------------------------

// A wired fragment with designated input and output lines.  `info` records
// the gadget kind and parameters for reports and file metadata.
struct GadgetSpec {
    WiredNetwork net;
    std::vector<std::uint32_t> inputs;
    std::vector<std::uint32_t> outputs;
    std::uint32_t depth = 0;
    nlohmann::json info;
};

// Full binary OR tree of depth d (the smallest d >= 1 with 2^(-2^d) <= 1-q):
// internal nodes OR their children, every leaf except the input line ORs
// itself with a distinct internal node, the input line holds its value.
// The root emits 1 for every t >= d unless all 2^d leaves start at 0, so the
// exact failure probability under uniform leaf initialization is 2^(-2^d),
// regardless of the internal nodes' initial values.
GadgetSpec build_or_latch_tree(const mpq_class& q);

// One step of the pairwise sort layer on an even-width word: bit 2t becomes
// the AND of pair t, bit 2t+1 the OR.  Codewords are fixed points, weight is
// preserved for every input, and all-zeros/all-ones blocks stay put.
State robust_copy_layer(const State& word);

// Two word-wide registers, each computing the copy layer from the other:
// the smallest closed tape built from the layer.  Strictly two-in/two-out.
GadgetSpec build_robust_copy_ring(const RobustScheme& scheme);

// Synchronous copy tree: one self-holding root and ceil(log2(copies))
// levels of identity nodes; after `depth` steps every output equals the
// root's value from `depth` steps earlier.
GadgetSpec build_fanout_gadget(std::uint32_t copies);

// ---- recording tape -------------------------------------------------------

struct RecordingTapeParams {
    std::uint32_t length = 0; // registers in the ring, >= 2
    std::uint32_t from = 0;   // 1-based window start, 1 <= from <= m/2
    std::uint32_t to = 0;     // 1-based window end, m/2 < to <= m
    std::uint32_t m = 0;      // observed word width, even
    bool readout = false;     // attach the conjunction readout register
};

// Ring of window-wide registers rotating one step per tick.  The station
// register merges the observed window in: OR on positions <= m/2, AND above.
// A sorted observed word (zeros low, ones high) makes the station the
// identity; an off-sort bit latches into the passing cell permanently.  The
// optional readout ANDs externally held mask lines with the station word.
GadgetSpec build_recording_tape(const RecordingTapeParams& params);

// The station merge alone, on window-wide words.
State recording_station_map(const State& incoming, const State& observed,
                            const RecordingTapeParams& params);

} // namespace boolnet
