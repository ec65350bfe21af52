#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace boolnet {

// Outcome of comparing two states coordinatewise.
enum class Comparison { less, greater, equal, incomparable };

// Fixed-width vector of Boolean coordinates, bit-packed into 64-bit words.
//
// A state doubles as a subset of {0, ..., n-1} (coordinate i set <=> i in the
// subset) and as an integer in [0, 2^n) under the little-endian encoding
// value = sum over set coordinates i of 2^i.  Hex renderings use that integer,
// most significant nibble first, zero-padded to ceil(n/4) digits.
class State {
public:
    State() = default;
    explicit State(std::uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static State from_value(std::uint64_t value, std::uint32_t n);
    static State from_hex(std::string_view hex, std::uint32_t n);
    // "0110..." with coordinate 0 as the leftmost character.
    static State from_bit_string(std::string_view bits);

    std::uint32_t size() const { return n_; }

    bool bit(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint32_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::uint32_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    std::uint32_t weight() const;
    bool any() const;
    bool none() const { return !any(); }

    State& operator|=(const State& o);
    State& operator&=(const State& o);
    State complement() const;

    bool operator==(const State&) const = default;

    std::uint64_t to_u64() const; // requires size() <= 64
    std::string to_hex() const;
    std::string to_bit_string() const;

    // Little-endian integer value of bits [offset, offset+width); width <= 64.
    std::uint64_t extract_bits(std::uint32_t offset, std::uint32_t width) const;
    void deposit_bits(std::uint32_t offset, std::uint32_t width, std::uint64_t value);

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Total order on equal-width states by little-endian integer encoding.
bool encoding_less(const State& a, const State& b);

std::uint32_t hamming(const State& a, const State& b);

// Coordinatewise partial order: every set coordinate of a is set in b.
bool leq(const State& a, const State& b);
Comparison compare(const State& a, const State& b);
inline bool comparable(const State& a, const State& b) {
    return compare(a, b) != Comparison::incomparable;
}

} // namespace boolnet
