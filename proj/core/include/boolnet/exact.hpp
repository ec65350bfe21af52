#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace boolnet {

// Exact rational from "0.25", "2", "1.05" or "3/4".  Decimal literals become
// the obvious fraction (1.05 -> 21/20), so no binary floating point creeps
// into arithmetic that is specified exactly.
mpq_class parse_rational(std::string_view text);

std::string rational_to_string(const mpq_class& q); // "num/den" or "num"

mpz_class ceil_q(const mpq_class& q);
mpz_class floor_q(const mpq_class& q);

mpq_class pow_q(const mpq_class& base, unsigned long e);
mpz_class pow_z(const mpz_class& base, unsigned long e);

// Binomial coefficient; zero outside 0 <= k <= n.
mpz_class binom(std::uint64_t n, std::int64_t k);

} // namespace boolnet
