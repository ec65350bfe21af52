#include "boolnet/exact.hpp"

#include <cctype>

#include "boolnet/errors.hpp"

namespace boolnet {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

mpq_class parse_rational(std::string_view text) {
    std::string t(text);
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = t[0] == '-';
        t.erase(0, 1);
    }
    if (t.empty()) throw parse_error("empty rational literal");

    // Always pass base 10: the gmpxx string constructors default to base 0,
    // which would read a leading zero (as in "0.25" -> "025") as octal.
    mpq_class q;
    if (auto slash = t.find('/'); slash != std::string::npos) {
        std::string num = t.substr(0, slash), den = t.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw parse_error("bad rational literal '" + std::string(text) + "'");
        q = mpq_class(mpz_class(num, 10), mpz_class(den, 10));
        if (q.get_den() == 0) throw parse_error("zero denominator");
    } else if (auto dot = t.find('.'); dot != std::string::npos) {
        std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
            throw parse_error("bad decimal literal '" + std::string(text) + "'");
        mpz_class den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        q = mpq_class(mpz_class(ip + fp, 10), den);
    } else {
        if (!all_digits(t)) throw parse_error("bad rational literal '" + std::string(text) + "'");
        q = mpq_class(mpz_class(t, 10));
    }
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

std::string rational_to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

mpq_class pow_q(const mpq_class& base, unsigned long e) {
    mpq_class r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

mpz_class pow_z(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class binom(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

} // namespace boolnet
