#include "boolnet/coding.hpp"

#include <cmath>
#include <unordered_map>

#include "boolnet/errors.hpp"
#include "boolnet/exact.hpp"

namespace boolnet {

namespace {

// Counting works for any even k; only enumeration and block packing need the
// 64-bit cap (blocks are indexed through their u64 encodings).
void validate_k_shape(std::uint32_t k) {
    if (k < 2 || k % 2 != 0) throw validation_error("block size k must be even and >= 2");
    if (k > 4096) throw validation_error("block size k is unreasonably large");
}

void validate_k(std::uint32_t k) {
    validate_k_shape(k);
    if (k > 64) throw validation_error("block size k above 64 is not supported");
}

} // namespace

RobustScheme::RobustScheme(std::uint32_t k_, std::uint32_t ell_) : k(k_), ell(ell_) {
    validate_k(k);
    if (ell == 0) throw validation_error("scheme needs at least one block");
    if (std::uint64_t(k) * ell > 4096) throw validation_error("scheme word is unreasonably wide");
}

mpz_class robust_codes_count(std::uint32_t k) {
    validate_k_shape(k);
    const std::uint32_t m = k / 2;
    // pair weights 0/1/2, total k/2
    std::vector<mpz_class> dp(m + 1, 0);
    dp[0] = 1;
    for (std::uint32_t pair = 0; pair < m; ++pair) {
        std::vector<mpz_class> next(m + 1, 0);
        for (std::uint32_t w = 0; w <= m; ++w) {
            if (dp[w] == 0) continue;
            next[w] += dp[w];
            if (w + 1 <= m) next[w + 1] += dp[w];
            if (w + 2 <= m) next[w + 2] += dp[w];
        }
        dp.swap(next);
    }
    return dp[m];
}

std::vector<State> enumerate_robust_codes(std::uint32_t k) {
    validate_k(k);
    const std::uint32_t pairs = k / 2;
    std::vector<State> out;
    State cur(k);
    // pair patterns in bit-string order: 00 < 01 < 11, weights 0, 1, 2
    const bool pattern[3][2] = {{false, false}, {false, true}, {true, true}};
    auto rec = [&](auto&& self, std::uint32_t pair, std::uint32_t weight) -> void {
        std::uint32_t left = pairs - pair;
        if (weight > 2 * left) return;
        if (pair == pairs) {
            if (weight == 0) out.push_back(cur);
            return;
        }
        for (std::uint32_t p = 0; p < 3; ++p) {
            if (p > weight) break;
            cur.set(2 * pair, pattern[p][0]);
            cur.set(2 * pair + 1, pattern[p][1]);
            self(self, pair + 1, weight - p);
        }
        cur.set(2 * pair, false);
        cur.set(2 * pair + 1, false);
    };
    rec(rec, 0, pairs);
    return out;
}

std::uint64_t scheme_capacity(const RobustScheme& scheme) {
    mpz_class cap = pow_z(robust_codes_count(scheme.k), scheme.ell);
    if (mpz_sizeinbase(cap.get_mpz_t(), 2) > 62)
        throw capacity_error("scheme capacity exceeds 62 bits");
    return mpz_get_ui(cap.get_mpz_t());
}

State encode_word(std::uint64_t v, const RobustScheme& scheme) {
    const auto codes = enumerate_robust_codes(scheme.k);
    const std::uint64_t base = codes.size();
    State word(scheme.word_bits());
    std::uint64_t rest = v;
    for (std::uint32_t b = 0; b < scheme.ell; ++b) {
        std::uint64_t digit = rest % base;
        rest /= base;
        const State& block = codes[digit];
        for (std::uint32_t i = 0; i < scheme.k; ++i)
            if (block.bit(i)) word.set(b * scheme.k + i, true);
    }
    if (rest != 0)
        throw capacity_error("value " + std::to_string(v) + " exceeds scheme capacity");
    return word;
}

std::optional<std::uint64_t> decode_word(const State& word, const RobustScheme& scheme) {
    if (word.size() != scheme.word_bits())
        throw validation_error("word width does not match the scheme");
    const auto codes = enumerate_robust_codes(scheme.k);
    std::unordered_map<std::uint64_t, std::uint64_t> index;
    index.reserve(codes.size());
    for (std::uint64_t i = 0; i < codes.size(); ++i) index[codes[i].to_u64()] = i;
    std::uint64_t v = 0;
    std::uint64_t place = 1;
    for (std::uint32_t b = 0; b < scheme.ell; ++b) {
        std::uint64_t block = word.extract_bits(b * scheme.k, scheme.k);
        auto it = index.find(block);
        if (it == index.end()) return std::nullopt;
        v += it->second * place;
        place *= codes.size();
    }
    return v;
}

bool is_crude(const State& word, const RobustScheme& scheme) {
    if (word.size() != scheme.word_bits())
        throw validation_error("word width does not match the scheme");
    const std::uint64_t full = (scheme.k == 64) ? ~std::uint64_t(0)
                                                : (std::uint64_t(1) << scheme.k) - 1;
    bool has_zeros = false, has_ones = false;
    for (std::uint32_t b = 0; b < scheme.ell; ++b) {
        std::uint64_t block = word.extract_bits(b * scheme.k, scheme.k);
        if (block == 0) has_zeros = true;
        if (block == full) has_ones = true;
    }
    return has_zeros && has_ones;
}

void write_codebook(std::ostream& out, std::uint32_t k) {
    const auto codes = enumerate_robust_codes(k);
    out << "block size " << k << "\n";
    out << "constraint: bit 2t <= bit 2t+1 for each pair t, block weight " << k / 2 << "\n";
    out << "blocks " << codes.size() << "\n";
    for (const auto& c : codes) out << c.to_bit_string() << "\n";
}

bool is_c_friendly(const FriendlinessParams& params) {
    validate_k_shape(params.k);
    if (params.epsilon <= 0) throw validation_error("epsilon must be positive");
    if (params.c <= 1 || params.c >= 2) throw domain_error("friendliness needs c in (1, 2)");

    mpq_class exponent_q = mpq_class(params.k) / (1 + params.epsilon);
    if (exponent_q.get_den() != 1)
        throw validation_error("k / (1 + epsilon) must be an integer");
    unsigned long exponent = mpz_class(exponent_q.get_num()).get_ui();

    // log2(c) * (1 + eps) < 1  <=>  c^(en + ed) < 2^ed, with eps = en/ed
    mpz_class en = params.epsilon.get_num(), ed = params.epsilon.get_den();
    if (en + ed > 1 << 20) throw validation_error("epsilon has an impractical denominator");
    unsigned long e = mpz_class(en + ed).get_ui();
    mpz_class lhs = pow_z(params.c.get_num(), e);
    mpz_class rhs;
    mpz_mul_2exp(rhs.get_mpz_t(), pow_z(params.c.get_den(), e).get_mpz_t(),
                 mpz_class(ed).get_ui());
    bool rate_ok = lhs < rhs;

    mpz_class needed;
    mpz_mul_2exp(needed.get_mpz_t(), mpz_class(1).get_mpz_t(), exponent);
    bool count_ok = robust_codes_count(params.k) >= needed;

    return rate_ok && count_ok;
}

FriendlyPair find_friendly_pair(const mpq_class& c, std::uint32_t k_cap) {
    if (c <= 1 || c * c >= 3) throw domain_error("find_friendly_pair needs 1 < c < sqrt(3)");
    const double cd = mpq_get_d(c.get_mpq_t());
    const double log2c = std::log2(cd);
    const double log2s3 = 0.5 * std::log2(3.0);
    for (std::uint32_t k = 2; k <= k_cap; k += 2) {
        // candidate integral exponents i = k/(1+eps) live strictly between
        // k*log2(c) and k*log2(sqrt(3)); the float window is widened by one
        // on each side and every candidate is checked exactly.
        long lo = static_cast<long>(std::floor(k * log2c)) - 1;
        long hi = static_cast<long>(std::ceil(k * log2s3)) + 1;
        for (long i = std::max(1L, lo); i <= hi; ++i) {
            if (i >= static_cast<long>(k)) break; // epsilon must stay positive
            mpq_class eps(k - i, i);
            eps.canonicalize();
            if (is_c_friendly({k, eps, c})) return {k, eps};
        }
    }
    throw error("no friendly pair found for c = " + rational_to_string(c) + " up to k = " +
                std::to_string(k_cap));
}

OpaqueCodingScheme subtle_coding_metadata() {
    return {"wide-spacing", "1 < c < 10^(1/4)"};
}

} // namespace boolnet
