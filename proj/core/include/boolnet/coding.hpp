#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "boolnet/state.hpp"

namespace boolnet {

// Robust block code: words are ell blocks of k bits each (k even).  A k-bit
// block is a code block iff bit 2t <= bit 2t+1 for every pair t and the block
// weight is exactly k/2.  Every code word therefore has weight k*ell/2, and
// flipping the lower bit of a pair either leaves the word decodable or
// produces a detectable non-code.
struct RobustScheme {
    std::uint32_t k = 0;
    std::uint32_t ell = 0;

    RobustScheme(std::uint32_t k_, std::uint32_t ell_);
    std::uint32_t word_bits() const { return k * ell; }
};

// Number of k-bit code blocks; equals the number of (k/2)-tuples over
// {0,1,2} pair weights summing to k/2.
mpz_class robust_codes_count(std::uint32_t k);

// All code blocks in lexicographic order of their bit strings, where the bit
// string lists coordinate 0 first ("0011" < "0101" < "1100" for k = 4).
std::vector<State> enumerate_robust_codes(std::uint32_t k);

// |C_k|^ell if it fits in 62 bits, else capacity_error.  Values encoded per
// scheme live in [0, scheme_capacity).
std::uint64_t scheme_capacity(const RobustScheme& scheme);

// Value -> word: base-|C_k| digits of v, least significant digit in block 0
// (the lowest k coordinates), each digit mapped through the enumeration
// order above.
State encode_word(std::uint64_t v, const RobustScheme& scheme);

// Word -> value; nullopt if any block is not a code block.
std::optional<std::uint64_t> decode_word(const State& word, const RobustScheme& scheme);

// A word is crude when at least one block is all-zeros and at least one is
// all-ones.  Crude words are never code words.
bool is_crude(const State& word, const RobustScheme& scheme);

// Plain-text codebook: scheme parameters followed by the ordered block list.
void write_codebook(std::ostream& out, std::uint32_t k);

// Friendliness of a code for growth rate c: both of
//   log2(c) * (1 + epsilon) < 1        (checked exactly via c^(num+den) < 2^den)
//   |C_k| >= 2^(k / (1 + epsilon))     (k / (1 + epsilon) must be an integer)
struct FriendlinessParams {
    std::uint32_t k = 0;
    mpq_class epsilon; // positive rational
    mpq_class c;       // rational in (1, 2)
};

bool is_c_friendly(const FriendlinessParams& params);

struct FriendlyPair {
    std::uint32_t k = 0;
    mpq_class epsilon;
};

// Smallest even k (and the smallest integral exponent k/(1+epsilon) for it)
// passing both friendliness inequalities; c must satisfy 1 < c < sqrt(3).
FriendlyPair find_friendly_pair(const mpq_class& c, std::uint32_t k_cap = 4096);

// The wide-spacing code family is intentionally kept out of scope; only its
// name and friendliness range are recorded.
struct OpaqueCodingScheme {
    std::string name;
    std::string friendliness_bound;
};

OpaqueCodingScheme subtle_coding_metadata();

} // namespace boolnet
