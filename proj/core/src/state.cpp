#include "boolnet/state.hpp"

#include <bit>

#include "boolnet/errors.hpp"

namespace boolnet {

namespace {

// Bits the top word may use; everything above must stay zero.
std::uint64_t top_mask(std::uint32_t n) {
    std::uint32_t used = n & 63;
    return used ? (~std::uint64_t(0) >> (64 - used)) : ~std::uint64_t(0);
}

void require_same_width(const State& a, const State& b) {
    if (a.size() != b.size())
        throw validation_error("state widths differ (" + std::to_string(a.size()) + " vs " +
                               std::to_string(b.size()) + ")");
}

} // namespace

State State::from_value(std::uint64_t value, std::uint32_t n) {
    if (n == 0 || n > 64)
        throw validation_error("from_value needs 1 <= n <= 64");
    if (n < 64 && (value >> n) != 0)
        throw validation_error("value does not fit in " + std::to_string(n) + " bits");
    State s(n);
    s.w_[0] = value;
    return s;
}

State State::from_hex(std::string_view hex, std::uint32_t n) {
    if (n == 0) throw validation_error("state width must be positive");
    std::uint32_t max_digits = (n + 3) / 4;
    if (hex.empty() || hex.size() > max_digits)
        throw parse_error("hex state needs 1.." + std::to_string(max_digits) + " digits");
    State s(n);
    std::uint32_t pos = 0; // nibble index from the least significant end
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++pos) {
        char c = *it;
        std::uint64_t v;
        if (c >= '0' && c <= '9') v = std::uint64_t(c - '0');
        else if (c >= 'a' && c <= 'f') v = std::uint64_t(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = std::uint64_t(c - 'A' + 10);
        else throw parse_error(std::string("bad hex digit '") + c + "'");
        std::uint32_t b = pos * 4;
        s.w_[b >> 6] |= v << (b & 63);
    }
    if ((s.w_.back() & ~top_mask(n)) != 0)
        throw parse_error("hex value does not fit in " + std::to_string(n) + " bits");
    return s;
}

State State::from_bit_string(std::string_view bits) {
    if (bits.empty()) throw parse_error("empty bit string");
    State s(static_cast<std::uint32_t>(bits.size()));
    for (std::uint32_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') s.set(i, true);
        else if (bits[i] != '0') throw parse_error("bit string must contain only 0/1");
    }
    return s;
}

std::uint32_t State::weight() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
}

bool State::any() const {
    for (std::uint64_t w : w_)
        if (w) return true;
    return false;
}

State& State::operator|=(const State& o) {
    require_same_width(*this, o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

State& State::operator&=(const State& o) {
    require_same_width(*this, o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

State State::complement() const {
    State r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    r.w_.back() &= top_mask(n_);
    return r;
}

std::uint64_t State::to_u64() const {
    if (n_ > 64) throw validation_error("state wider than 64 bits");
    return w_[0];
}

std::string State::to_hex() const {
    std::uint32_t digits = (n_ + 3) / 4;
    std::string out(digits, '0');
    for (std::uint32_t d = 0; d < digits; ++d) {
        std::uint32_t b = d * 4;
        std::uint64_t nib = (w_[b >> 6] >> (b & 63)) & 0xF;
        out[digits - 1 - d] = "0123456789abcdef"[nib];
    }
    return out;
}

std::string State::to_bit_string() const {
    std::string out(n_, '0');
    for (std::uint32_t i = 0; i < n_; ++i)
        if (bit(i)) out[i] = '1';
    return out;
}

std::uint64_t State::extract_bits(std::uint32_t offset, std::uint32_t width) const {
    std::uint64_t v = 0;
    for (std::uint32_t i = 0; i < width; ++i)
        if (bit(offset + i)) v |= std::uint64_t(1) << i;
    return v;
}

void State::deposit_bits(std::uint32_t offset, std::uint32_t width, std::uint64_t value) {
    for (std::uint32_t i = 0; i < width; ++i)
        set(offset + i, (value >> i) & 1u);
}

bool encoding_less(const State& a, const State& b) {
    require_same_width(a, b);
    const auto& x = a.words();
    const auto& y = b.words();
    for (std::size_t i = x.size(); i-- > 0;)
        if (x[i] != y[i]) return x[i] < y[i];
    return false;
}

std::uint32_t hamming(const State& a, const State& b) {
    require_same_width(a, b);
    const auto& x = a.words();
    const auto& y = b.words();
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        c += static_cast<std::uint32_t>(std::popcount(x[i] ^ y[i]));
    return c;
}

bool leq(const State& a, const State& b) {
    require_same_width(a, b);
    const auto& x = a.words();
    const auto& y = b.words();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] & ~y[i]) return false;
    return true;
}

Comparison compare(const State& a, const State& b) {
    bool ab = leq(a, b);
    bool ba = leq(b, a);
    if (ab && ba) return Comparison::equal;
    if (ab) return Comparison::less;
    if (ba) return Comparison::greater;
    return Comparison::incomparable;
}

} // namespace boolnet
