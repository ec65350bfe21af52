#include "boolnet/constructions.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <numeric>
#include <set>
#include <string>

#include "boolnet/errors.hpp"
#include "boolnet/exact.hpp"

namespace boolnet {

namespace {

// Pairwise order-consistency validation is quadratic in the domain size;
// above this it has to come from the caller's own argument.
constexpr std::size_t kConsistencyCap = 20000;

using Points = std::vector<std::pair<State, State>>;

State mask_range(std::uint32_t n, std::uint32_t lo, std::uint32_t hi) {
    State s(n);
    for (std::uint32_t i = lo; i < hi; ++i) s.set(i, true);
    return s;
}

// First `count` r-element subsets of `universe` in lexicographic order of
// their index tuples, as n-wide states.  The caller guarantees enough exist.
std::vector<State> lex_subsets(std::uint32_t n, const std::vector<std::uint32_t>& universe,
                               std::uint32_t r, std::uint64_t count) {
    std::vector<State> out;
    out.reserve(count);
    if (count == 0) return out;
    const std::uint32_t m = static_cast<std::uint32_t>(universe.size());
    if (r > m) throw validation_error("subset size exceeds universe");
    std::vector<std::uint32_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        State s(n);
        for (auto i : idx) s.set(universe[i], true);
        out.push_back(std::move(s));
        if (out.size() == count) break;
        // advance to the next combination
        std::int64_t pos = static_cast<std::int64_t>(r) - 1;
        while (pos >= 0 && idx[pos] == m - r + pos) --pos;
        if (pos < 0) throw validation_error("ran out of subsets before count was reached");
        ++idx[pos];
        for (std::size_t q = pos + 1; q < idx.size(); ++q) idx[q] = idx[q - 1] + 1;
    }
    return out;
}

const std::vector<bool> kTableId{false, true};
const std::vector<bool> kTableOr2{false, true, true, true};
const std::vector<bool> kTableAnd2{false, false, false, true};

void check_pair_widths(const Points& pts, std::uint32_t n) {
    for (const auto& [s, img] : pts)
        if (s.size() != n || img.size() != n)
            throw validation_error("domain point width does not match dimension");
}

// Duplicate states and order-inconsistent image pairs both invalidate a
// monotone extension; report the first witness found.
void validate_domain_consistency(const Points& pts) {
    if (pts.size() > kConsistencyCap)
        throw capacity_error("domain too large to validate order consistency (" +
                             std::to_string(pts.size()) + " points)");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            switch (compare(pts[i].first, pts[j].first)) {
            case Comparison::equal:
                throw validation_error("duplicate domain state " + pts[i].first.to_hex());
            case Comparison::less:
                if (!leq(pts[i].second, pts[j].second))
                    throw validation_error("order-inconsistent domain: " +
                                           pts[i].first.to_hex() + " <= " +
                                           pts[j].first.to_hex() +
                                           " but the images are not ordered that way");
                break;
            case Comparison::greater:
                if (!leq(pts[j].second, pts[i].second))
                    throw validation_error("order-inconsistent domain: " +
                                           pts[j].first.to_hex() + " <= " +
                                           pts[i].first.to_hex() +
                                           " but the images are not ordered that way");
                break;
            case Comparison::incomparable:
                break;
            }
        }
    }
}

Points materialize_rule_domain(const PartialFunction& pf, std::uint32_t cap) {
    if (!pf.image) throw validation_error("rule-defined domain needs an image rule");
    if (cap > 26) cap = 26;
    if (pf.n > cap)
        throw capacity_error("rule-defined domain on " + std::to_string(pf.n) +
                             " coordinates needs dominated_join (materialization cap " +
                             std::to_string(cap) + ")");
    Points out;
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << pf.n); ++v) {
        State s = State::from_value(v, pf.n);
        if (!pf.member(s)) continue;
        State img = pf.image(s);
        if (img.size() != pf.n)
            throw validation_error("image rule returned a state of wrong width");
        out.emplace_back(std::move(s), std::move(img));
    }
    return out;
}

} // namespace

RuleNetwork monotone_extension(const PartialFunction& pf, std::uint32_t materialize_cap,
                               nlohmann::json descriptor) {
    if (pf.n == 0) throw validation_error("partial function needs a dimension");
    if (pf.image && !pf.member)
        throw validation_error("image rule without a membership rule");
    Points points = pf.points;
    check_pair_widths(points, pf.n);

    std::function<std::optional<State>(const State&)> djoin;
    if (pf.dominated_join) {
        djoin = pf.dominated_join;
    } else if (pf.member) {
        Points ruled = materialize_rule_domain(pf, materialize_cap);
        points.insert(points.end(), std::make_move_iterator(ruled.begin()),
                      std::make_move_iterator(ruled.end()));
    }
    validate_domain_consistency(points);

    if (descriptor.empty() && !djoin) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& [s, img] : points)
            pts.push_back(nlohmann::json::array({s.to_hex(), img.to_hex()}));
        descriptor = {{"kind", "construction"},
                      {"name", "extension"},
                      {"params", {{"n", pf.n}, {"points", std::move(pts)}}}};
    }

    auto shared = std::make_shared<const Points>(std::move(points));
    const std::uint32_t n = pf.n;
    return RuleNetwork(
        n,
        [shared, djoin, n](const State& x) {
            State acc(n);
            for (const auto& [s, img] : *shared)
                if (leq(s, x)) acc |= img;
            if (djoin) {
                if (auto j = djoin(x)) {
                    if (j->size() != n)
                        throw validation_error("dominated_join returned a state of wrong width");
                    acc |= *j;
                }
            }
            return acc;
        },
        std::move(descriptor));
}

RuleNetwork greatest_monotone_extension(const PartialFunction& pf,
                                        std::uint32_t materialize_cap) {
    if (pf.n == 0) throw validation_error("partial function needs a dimension");
    if (pf.dominated_join && !pf.member)
        throw validation_error(
            "greatest extension needs an enumerable domain; dominated_join has no dual here");
    Points points = pf.points;
    check_pair_widths(points, pf.n);
    if (pf.member) {
        Points ruled = materialize_rule_domain(pf, materialize_cap);
        points.insert(points.end(), std::make_move_iterator(ruled.begin()),
                      std::make_move_iterator(ruled.end()));
    }
    validate_domain_consistency(points);

    auto shared = std::make_shared<const Points>(std::move(points));
    const std::uint32_t n = pf.n;
    return RuleNetwork(n, [shared, n](const State& x) {
        State acc = State(n).complement(); // all-ones
        for (const auto& [s, img] : *shared)
            if (leq(x, s)) acc &= img;
        return acc;
    });
}

// ---- oscillating two-cycle network --------------------------------------

RuleNetwork build_oscillating_network(const OscillatingParams& params) {
    const std::uint32_t n = params.n;
    const std::uint32_t len = params.len;
    if (n < 2) throw validation_error("oscillating network needs at least 2 coordinates");
    if (len == 0) throw validation_error("cycle length must be positive");
    if (n - 1 < 64 && std::uint64_t(len) > (std::uint64_t(1) << (n - 1)))
        throw validation_error("cycle length exceeds the number of available states");

    auto by_encoding = [](const State& a, const State& b) { return encoding_less(a, b); };
    std::set<State, decltype(by_encoding)> seen(by_encoding);

    std::vector<State> family = params.family;
    if (!family.empty()) {
        if (family.size() != len)
            throw validation_error("family size does not match the cycle length");
        for (const auto& s : family) {
            if (s.size() != n) throw validation_error("family state width does not match");
            if (s.bit(n - 1))
                throw validation_error("family states must leave the top coordinate clear");
            if (!seen.insert(s).second)
                throw validation_error("family states must be distinct");
        }
    } else {
        Rng rng(params.seed);
        std::uint64_t attempts = 0, cap = 4096 + 64ull * len;
        while (family.size() < len) {
            if (++attempts > cap)
                throw validation_error("family draw stalled; cycle length too close to 2^(n-1)");
            State s = rng.uniform_state(n);
            s.set(n - 1, false);
            if (seen.insert(s).second) family.push_back(std::move(s));
        }
    }

    std::vector<State> comps;
    comps.reserve(len);
    for (const auto& s : family) comps.push_back(s.complement());

    nlohmann::json fam_hex = nlohmann::json::array();
    for (const auto& s : family) fam_hex.push_back(s.to_hex());
    nlohmann::json desc{{"kind", "construction"},
                        {"name", "oscillating"},
                        {"params",
                         {{"n", n}, {"len", len}, {"seed", params.seed}, {"family", fam_hex}}}};

    auto fam = std::make_shared<const std::vector<State>>(std::move(family));
    auto comp = std::make_shared<const std::vector<State>>(std::move(comps));
    return RuleNetwork(
        n,
        [fam, comp, len](const State& x) {
            for (std::uint32_t l = 0; l < len; ++l) {
                if (x == (*fam)[l]) return (*fam)[(l + 1) % len];
                if (x == (*comp)[l]) return (*comp)[(l + 1) % len];
            }
            return (x.weight() & 1) ? (*fam)[0] : (*comp)[0];
        },
        std::move(desc));
}

bool oscillating_supports_target(std::uint32_t n, std::uint32_t len, const mpq_class& c,
                                 const mpq_class& p) {
    if (n < 2) throw validation_error("feasibility needs at least 2 coordinates");
    if (c <= 1) throw domain_error("divergence base must exceed 1");
    if (p <= 0 || p >= 1) throw domain_error("probability target must lie in (0, 1)");
    mpq_class reach = pow_q(c, n) + 1;
    if (mpq_class(len) > reach) return false;
    mpq_class room = (1 - p) * mpq_class(pow_z(2, n - 2)) / (n - 1);
    return reach < room;
}

// ---- cooperative decoherence family --------------------------------------

namespace {

void validate_family_params(const DecoherenceFamilyParams& p) {
    if (p.z < 1) throw validation_error("control-block half-width must be positive");
    if (p.u <= p.w) throw validation_error("weight window needs w < u");
    const std::uint32_t span = p.u - p.w;
    if (span % 2 != 0) throw validation_error("weight window span u - w must be even");
    if (p.u > p.n) throw validation_error("weight window exceeds the dimension");
    if (2 * p.z + 2 * span > p.n)
        throw validation_error("control blocks plus marker and ladder blocks exceed the dimension");
    if (p.len == 0) throw validation_error("attractor period must be positive");
    if (p.alpha <= 0 || p.alpha >= 1)
        throw validation_error("divergence fraction must lie in (0, 1)");
}

} // namespace

bool DecoherenceFamily::in_z(const State& s) const {
    if (s.size() != params.n) throw validation_error("state width does not match network");
    State t = s;
    t &= zeros_block_mask;
    if (t.none()) return false;
    if (leq(ones_block_mask, s)) return false;
    const std::uint32_t wgt = s.weight();
    return params.w <= wgt && wgt <= params.u;
}

std::optional<State> DecoherenceFamily::z_rule_image(const State& s) const {
    if (!in_z(s)) return std::nullopt;
    const std::uint32_t wgt = s.weight();
    if (wgt <= params.w) return std::nullopt;
    return orbits[wgt - params.w - 1][0];
}

DecoherenceFamily build_decoherence_family(const DecoherenceFamilyParams& params) {
    validate_family_params(params);
    const std::uint32_t n = params.n, z = params.z, w = params.w, u = params.u;
    const std::uint32_t span = u - w; // number of attractors
    const std::uint32_t len = params.len;
    const std::int64_t pool_size = std::int64_t(n) - 2 * z - 2 * span;
    const std::int64_t marker_size = std::int64_t(n + 1) / 2 - (z + span);

    // Exact feasibility gates.
    if (mpz_class(len) > binom(pool_size, marker_size))
        throw validation_error("pool too small: need len <= C(n-2(z+u-w), ceil(n/2)-(z+u-w))");
    if (binom(span, span / 2) <= span)
        throw validation_error("marker block too narrow: need C(u-w, (u-w)/2) > u-w");
    {
        mpz_class lhs = mpz_class(pool_size) * params.alpha.get_den();
        mpz_class rhs = params.alpha.get_num() * n;
        if (lhs <= rhs)
            throw validation_error(
                "free pool fraction does not clear alpha: need (n-2(z+u-w))/n > alpha");
    }

    DecoherenceFamilyParams stored = params;
    stored.alpha.canonicalize();

    const std::uint32_t floor_h =
        static_cast<std::uint32_t>(ceil_q(stored.alpha * n).get_ui());

    // Coordinate layout.
    State zmask = mask_range(n, 0, z);
    State omask = mask_range(n, z, 2 * z);
    std::vector<std::uint32_t> marker_bits, ladder_bits, pool_bits;
    for (std::uint32_t i = 2 * z; i < 2 * z + span; ++i) marker_bits.push_back(i);
    for (std::uint32_t i = 2 * z + span; i < 2 * z + 2 * span; ++i) ladder_bits.push_back(i);
    for (std::uint32_t i = 2 * z + 2 * span; i < n; ++i) pool_bits.push_back(i);

    std::vector<State> markers = lex_subsets(n, marker_bits, span / 2, span + 1);
    std::vector<State> pool_sets =
        lex_subsets(n, pool_bits, static_cast<std::uint32_t>(marker_size), len);
    State pool_mask = mask_range(n, 2 * z + 2 * span, n);

    // orbits[j][i]: 0-based attractor j, phase i.
    std::vector<std::vector<State>> orbits(span, std::vector<State>(len));
    for (std::uint32_t j1 = 1; j1 <= span; ++j1) {
        State ladder(n);
        for (std::uint32_t b = 0; b < j1; ++b) ladder.set(ladder_bits[b], true);
        for (std::uint32_t i1 = 1; i1 <= len; ++i1) {
            State s(n);
            s |= omask;
            s |= ladder;
            if (i1 < j1) { // early phase: marker plus the whole free pool
                s |= markers[i1];
                s |= pool_mask;
            } else if (i1 <= span) { // marker phase
                s |= markers[i1];
            } else { // pool phase
                s |= markers[0];
                s |= pool_sets[i1 - 1];
            }
            orbits[j1 - 1][i1 - 1] = std::move(s);
        }
    }

    // The four structural guarantees, checked exhaustively before anything
    // is returned.
    for (std::uint32_t j = 0; j + 1 < span; ++j)
        for (std::uint32_t i = 0; i < len; ++i) {
            const State& a = orbits[j][i];
            const State& b = orbits[j + 1][i];
            if (!(leq(a, b) && a != b))
                throw validation_error("attractor ladder not strictly increasing at attractor " +
                                       std::to_string(j + 1) + ", phase " + std::to_string(i + 1));
        }
    for (std::uint32_t j = 0; j < span; ++j)
        for (std::uint32_t i = 0; i < len; ++i) {
            State t = orbits[j][i];
            t &= zmask;
            if (t.any() || !leq(omask, orbits[j][i]))
                throw validation_error("control-block pattern broken at attractor " +
                                       std::to_string(j + 1) + ", phase " + std::to_string(i + 1));
        }
    for (std::uint32_t j1 = 1; j1 + 1 <= span && j1 <= len; ++j1) {
        std::uint32_t h = hamming(orbits[j1 - 1][j1 - 1], orbits[j1][j1 - 1]);
        if (h < floor_h)
            throw validation_error("divergence floor unmet at matching phase " +
                                   std::to_string(j1) + ": H=" + std::to_string(h) + " < " +
                                   std::to_string(floor_h));
    }
    for (std::uint32_t j = 0; j < span; ++j)
        for (std::uint32_t i = 0; i < len; ++i)
            for (std::uint32_t j2 = 0; j2 < span; ++j2)
                for (std::uint32_t i2 = 0; i2 < len; ++i2) {
                    if (i == i2) continue;
                    if (comparable(orbits[j][i], orbits[j2][i2]))
                        throw validation_error(
                            "cross-phase states comparable: attractor " + std::to_string(j + 1) +
                            " phase " + std::to_string(i + 1) + " vs attractor " +
                            std::to_string(j2 + 1) + " phase " + std::to_string(i2 + 1));
                }

    PartialFunction pf;
    pf.n = n;
    for (std::uint32_t j = 0; j < span; ++j)
        for (std::uint32_t i = 0; i < len; ++i)
            pf.points.emplace_back(orbits[j][i], orbits[j][(i + 1) % len]);

    // Exact join of funnel-rule images over funnel states below x.  A funnel
    // state below x needs a set zeros-block bit from x, a clear ones-block
    // bit (free unless x covers the whole ones block, which costs one
    // coordinate of weight), and weight at most min(u, |x| - penalty).  The
    // rule images grow with weight, so the join is the image at that cap.
    std::vector<State> phase0(span);
    for (std::uint32_t j = 0; j < span; ++j) phase0[j] = orbits[j][0];
    const State zmask_c = zmask, omask_c = omask;
    pf.dominated_join = [zmask_c, omask_c, w, u,
                         phase0](const State& x) -> std::optional<State> {
        State t = x;
        t &= zmask_c;
        if (t.none()) return std::nullopt;
        const std::uint32_t penalty = leq(omask_c, x) ? 1 : 0;
        const std::int64_t wx = std::int64_t(x.weight()) - penalty;
        const std::int64_t jmax = std::min<std::int64_t>(u, wx) - w;
        if (jmax < 1) return std::nullopt;
        return phase0[static_cast<std::size_t>(jmax - 1)];
    };

    nlohmann::json desc{{"kind", "construction"},
                        {"name", "decofam"},
                        {"params",
                         {{"n", n},
                          {"z", z},
                          {"w", w},
                          {"u", u},
                          {"len", len},
                          {"alpha", rational_to_string(stored.alpha)}}}};

    RuleNetwork net = monotone_extension(pf, 12, std::move(desc));
    return DecoherenceFamily{std::move(stored), floor_h,       std::move(orbits),
                             std::move(net),    std::move(zmask), std::move(omask)};
}

DecoherenceFamilyParams derive_decoherence_params(const mpq_class& alpha, const mpq_class& p,
                                                  const mpq_class& c, std::uint32_t max_n) {
    if (alpha <= 0 || alpha >= 1) throw domain_error("divergence fraction must lie in (0, 1)");
    if (p <= 0 || p >= 1) throw domain_error("probability target must lie in (0, 1)");
    if (c <= 1 || c >= 2) throw domain_error("divergence base must lie in (1, 2)");

    // Smallest z with p < 1 - 2^(2-z), i.e. p*2^z < 2^z - 4 exactly.
    std::uint32_t z = 0;
    for (std::uint32_t cand = 1; cand <= 64; ++cand) {
        mpz_class two_z = pow_z(2, cand);
        if (p.get_num() * two_z < p.get_den() * (two_z - 4)) {
            z = cand;
            break;
        }
    }
    if (z == 0) throw capacity_error("probability target too close to 1");

    // Window mass must beat p + 2^(2-z).
    mpq_class target = p + mpq_class(4) / mpq_class(pow_z(2, z));
    target.canonicalize();

    for (std::uint32_t n = 2 * z + 4; n <= max_n; ++n) {
        mpz_class reach = floor_q(pow_q(c, n)) + 1;
        if (reach > (1 << 20))
            throw domain_error("cycle length exceeds desk scale before a feasible dimension");
        const std::uint32_t len = static_cast<std::uint32_t>(reach.get_ui());
        mpz_class two_n = pow_z(2, n);
        for (std::uint32_t d = 1; 2 * z + 4 * d <= n; ++d) {
            const std::uint32_t w = (n - 2 * d + (n & 1)) / 2;
            const std::uint32_t u = w + 2 * d;
            if (w < 1 || u > n) continue;
            mpz_class mass = 0;
            for (std::uint32_t k = w + 1; k <= u - 1; ++k) mass += binom(n, k);
            if (mass * target.get_den() <= target.get_num() * two_n) continue;
            DecoherenceFamilyParams cand{n, z, w, u, len, alpha};
            try {
                validate_family_params(cand);
            } catch (const validation_error&) {
                continue;
            }
            const std::int64_t pool_size = std::int64_t(n) - 2 * z - 4 * d;
            const std::int64_t marker_size = std::int64_t(n + 1) / 2 - (z + 2 * d);
            if (mpz_class(len) > binom(pool_size, marker_size)) continue;
            if (binom(2 * d, d) <= 2 * d) continue;
            if (mpz_class(pool_size) * alpha.get_den() <= alpha.get_num() * n) continue;
            return cand;
        }
    }
    throw domain_error("no feasible parameter set within the dimension cap");
}

// ---- coded counter tape ---------------------------------------------------

State CounterTape::encode_values(const std::vector<std::uint64_t>& values) const {
    if (values.size() != moduli.size())
        throw validation_error("need exactly one value per modulus");
    State s(block_width * static_cast<std::uint32_t>(moduli.size()));
    for (std::size_t b = 0; b < values.size(); ++b) {
        if (values[b] >= moduli[b])
            throw validation_error("value " + std::to_string(values[b]) +
                                   " outside modulus " + std::to_string(moduli[b]));
        s.deposit_bits(static_cast<std::uint32_t>(b) * block_width, block_width,
                       encode_word(values[b], scheme).to_u64());
    }
    return s;
}

std::optional<std::vector<std::uint64_t>> CounterTape::decode_state(const State& s) const {
    if (s.size() != net.size()) throw validation_error("state width does not match network");
    std::vector<std::uint64_t> values;
    values.reserve(moduli.size());
    for (std::size_t b = 0; b < moduli.size(); ++b) {
        State word = State::from_value(
            s.extract_bits(static_cast<std::uint32_t>(b) * block_width, block_width),
            block_width);
        auto v = decode_word(word, scheme);
        if (!v || *v >= moduli[b]) return std::nullopt;
        values.push_back(*v);
    }
    return values;
}

State CounterTape::random_coding_state(Rng& rng) const {
    std::vector<std::uint64_t> values;
    values.reserve(moduli.size());
    for (auto m : moduli) values.push_back(rng.below(m));
    return encode_values(values);
}

mpz_class CounterTape::period() const {
    mpz_class l = 1;
    for (auto m : moduli) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), m);
    return l;
}

CounterTape build_counter_tape(const std::vector<std::uint64_t>& moduli,
                               const RobustScheme& scheme) {
    if (moduli.empty()) throw validation_error("counter needs at least one modulus");
    const std::uint32_t m = scheme.word_bits();
    if (m > 64) throw capacity_error("counter blocks above 64 bits are unsupported");
    const std::uint64_t capacity = scheme_capacity(scheme);
    for (auto mod : moduli) {
        if (mod == 0) throw validation_error("modulus must be positive");
        if (mod > capacity)
            throw capacity_error("modulus " + std::to_string(mod) +
                                 " exceeds the code capacity " + std::to_string(capacity));
    }

    const std::uint32_t n = m * static_cast<std::uint32_t>(moduli.size());

    // Per block: the raw increment map on codewords, and (for small widths) a
    // fully materialized table so stepping costs one lookup per block.
    struct Block {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> map; // word -> next word
        std::vector<std::uint32_t> table;                         // 2^m entries when used
    };
    auto blocks = std::make_shared<std::vector<Block>>();
    blocks->reserve(moduli.size());
    for (auto mod : moduli) {
        Block blk;
        blk.map.reserve(mod);
        for (std::uint64_t v = 0; v < mod; ++v)
            blk.map.emplace_back(encode_word(v, scheme).to_u64(),
                                 encode_word((v + 1) % mod, scheme).to_u64());
        if (m <= 16) {
            blk.table.assign(std::size_t(1) << m, 0);
            for (std::uint64_t x = 0; x < (std::uint64_t(1) << m); ++x) {
                std::uint64_t acc = 0;
                for (const auto& [word, next] : blk.map)
                    if ((x & word) == word) acc |= next;
                blk.table[x] = static_cast<std::uint32_t>(acc);
            }
        }
        blocks->push_back(std::move(blk));
    }

    nlohmann::json desc{{"kind", "construction"},
                        {"name", "counter"},
                        {"params", {{"moduli", moduli}, {"k", scheme.k}, {"ell", scheme.ell}}}};

    RuleNetwork net(
        n,
        [blocks, m, n](const State& s) {
            State out(n);
            for (std::size_t b = 0; b < blocks->size(); ++b) {
                const std::uint32_t off = static_cast<std::uint32_t>(b) * m;
                const std::uint64_t x = s.extract_bits(off, m);
                std::uint64_t y;
                const Block& blk = (*blocks)[b];
                if (!blk.table.empty()) {
                    y = blk.table[x];
                } else {
                    y = 0;
                    for (const auto& [word, next] : blk.map)
                        if ((x & word) == word) y |= next;
                }
                out.deposit_bits(off, m, y);
            }
            return out;
        },
        std::move(desc));

    return CounterTape{scheme, moduli, m, std::move(net)};
}

// ---- wired gadgets --------------------------------------------------------

GadgetSpec build_or_latch_tree(const mpq_class& q) {
    if (q <= 0 || q >= 1) throw domain_error("hold probability must lie in (0, 1)");
    mpq_class miss = 1 - q;
    miss.canonicalize();

    // Smallest depth d >= 1 with 2^(-2^d) <= 1-q, exactly.
    std::uint32_t depth = 0;
    for (std::uint32_t d = 1; d <= 16; ++d) {
        mpz_class lhs = miss.get_num() << (std::uint32_t(1) << d);
        if (lhs >= miss.get_den()) {
            depth = d;
            break;
        }
    }
    if (depth == 0) throw capacity_error("hold probability too close to 1");

    const std::uint32_t leaves = std::uint32_t(1) << depth;
    const std::uint32_t total = 2 * leaves - 1;
    auto base = [](std::uint32_t level) { return (std::uint32_t(1) << level) - 1; };

    std::vector<WiredNode> nodes(total);
    for (std::uint32_t level = 0; level < depth; ++level)
        for (std::uint32_t pos = 0; pos < (std::uint32_t(1) << level); ++pos)
            nodes[base(level) + pos] = {
                {base(level + 1) + 2 * pos, base(level + 1) + 2 * pos + 1}, kTableOr2};
    // Leaves: the input line holds its value; every other leaf ORs itself
    // with a distinct internal node (leaf t pairs with internal t-1).
    nodes[base(depth)] = {{base(depth)}, kTableId};
    for (std::uint32_t t = 1; t < leaves; ++t)
        nodes[base(depth) + t] = {{base(depth) + t, t - 1}, kTableOr2};

    GadgetSpec spec{WiredNetwork(std::move(nodes)),
                    {base(depth)},
                    {0},
                    depth,
                    {{"kind", "or-latch"},
                     {"q", rational_to_string(q)},
                     {"depth", depth},
                     {"variables", total},
                     {"failure_log2", -std::int64_t(leaves)}}};
    return spec;
}

State robust_copy_layer(const State& word) {
    const std::uint32_t m = word.size();
    if (m == 0 || m % 2 != 0) throw validation_error("copy layer needs an even positive width");
    State out(m);
    for (std::uint32_t t = 0; 2 * t < m; ++t) {
        const bool a = word.bit(2 * t), b = word.bit(2 * t + 1);
        out.set(2 * t, a && b);
        out.set(2 * t + 1, a || b);
    }
    return out;
}

GadgetSpec build_robust_copy_ring(const RobustScheme& scheme) {
    const std::uint32_t m = scheme.word_bits();
    std::vector<WiredNode> nodes(2 * m);
    for (std::uint32_t reg = 0; reg < 2; ++reg) {
        const std::uint32_t other = (1 - reg) * m;
        for (std::uint32_t pos = 0; pos < m; ++pos) {
            const std::uint32_t lo = pos & ~1u;
            nodes[reg * m + pos] = {{other + lo, other + lo + 1},
                                    (pos & 1) ? kTableOr2 : kTableAnd2};
        }
    }
    std::vector<std::uint32_t> ins(m), outs(m);
    std::iota(ins.begin(), ins.end(), m);
    std::iota(outs.begin(), outs.end(), 0);
    return GadgetSpec{WiredNetwork(std::move(nodes)),
                      std::move(ins),
                      std::move(outs),
                      1,
                      {{"kind", "copy-ring"}, {"k", scheme.k}, {"ell", scheme.ell}, {"m", m}}};
}

GadgetSpec build_fanout_gadget(std::uint32_t copies) {
    if (copies == 0) throw validation_error("fanout needs at least one copy");
    const std::uint32_t depth =
        copies == 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(copies - 1));

    // Level sizes ceil(copies / 2^(depth - level)); level 0 is the root.
    std::vector<std::uint32_t> level_base(depth + 2, 0);
    std::vector<std::uint32_t> level_size(depth + 1);
    for (std::uint32_t level = 0; level <= depth; ++level) {
        const std::uint32_t shift = depth - level;
        level_size[level] = (copies + ((std::uint32_t(1) << shift) - 1)) >> shift;
        level_base[level + 1] = level_base[level] + level_size[level];
    }

    std::vector<WiredNode> nodes(level_base[depth + 1]);
    nodes[0] = {{0}, kTableId}; // the root holds the value being distributed
    for (std::uint32_t level = 1; level <= depth; ++level)
        for (std::uint32_t j = 0; j < level_size[level]; ++j)
            nodes[level_base[level] + j] = {{level_base[level - 1] + j / 2}, kTableId};

    std::vector<std::uint32_t> outs(copies);
    std::iota(outs.begin(), outs.end(), level_base[depth]);
    return GadgetSpec{WiredNetwork(std::move(nodes)),
                      {0},
                      std::move(outs),
                      depth,
                      {{"kind", "fanout"},
                       {"copies", copies},
                       {"depth", depth},
                       {"variables", level_base[depth + 1]}}};
}

// ---- recording tape -------------------------------------------------------

namespace {

void validate_tape_params(const RecordingTapeParams& p) {
    if (p.m < 2 || p.m % 2 != 0) throw validation_error("observed word width must be even");
    if (!(1 <= p.from && p.from <= p.m / 2 && p.m / 2 < p.to && p.to <= p.m))
        throw validation_error("window must satisfy 1 <= from <= m/2 < to <= m");
    if (p.length < 2) throw validation_error("tape needs at least two registers");
}

} // namespace

GadgetSpec build_recording_tape(const RecordingTapeParams& params) {
    validate_tape_params(params);
    const std::uint32_t width = params.to - params.from + 1;
    const std::uint32_t base_obs = params.length * width;
    const std::uint32_t base_mask = base_obs + width;
    const std::uint32_t base_read = base_mask + width;
    const std::uint32_t total = params.readout ? base_read + width : base_mask;

    std::vector<WiredNode> nodes(total);
    // Station register 0 merges the observed word into what arrives from
    // register 1: OR keeps low positions latched once set, AND keeps high
    // positions latched once cleared.
    for (std::uint32_t pos = 0; pos < width; ++pos) {
        const bool low_side = params.from + pos <= params.m / 2;
        nodes[pos] = {{width + pos, base_obs + pos}, low_side ? kTableOr2 : kTableAnd2};
    }
    for (std::uint32_t reg = 1; reg < params.length; ++reg)
        for (std::uint32_t pos = 0; pos < width; ++pos)
            nodes[reg * width + pos] = {{((reg + 1) % params.length) * width + pos}, kTableId};
    for (std::uint32_t pos = 0; pos < width; ++pos)
        nodes[base_obs + pos] = {{base_obs + pos}, kTableId};
    if (params.readout) {
        for (std::uint32_t pos = 0; pos < width; ++pos) {
            nodes[base_mask + pos] = {{base_mask + pos}, kTableId};
            nodes[base_read + pos] = {{base_mask + pos, pos}, kTableAnd2};
        }
    }

    std::vector<std::uint32_t> ins(width), outs(width);
    std::iota(ins.begin(), ins.end(), base_obs);
    std::iota(outs.begin(), outs.end(), 0);
    if (params.readout)
        for (std::uint32_t pos = 0; pos < width; ++pos) ins.push_back(base_mask + pos);

    nlohmann::json info{{"kind", "recorder"},     {"length", params.length},
                        {"from", params.from},   {"to", params.to},
                        {"m", params.m},         {"readout", params.readout},
                        {"tape_nodes", base_obs}, {"window_width", width}};
    return GadgetSpec{WiredNetwork(std::move(nodes)), std::move(ins), std::move(outs),
                      params.length, std::move(info)};
}

State recording_station_map(const State& incoming, const State& observed,
                            const RecordingTapeParams& params) {
    validate_tape_params(params);
    const std::uint32_t width = params.to - params.from + 1;
    if (incoming.size() != width || observed.size() != width)
        throw validation_error("station words must match the window width");
    State out(width);
    for (std::uint32_t pos = 0; pos < width; ++pos) {
        const bool low_side = params.from + pos <= params.m / 2;
        const bool in = incoming.bit(pos), obs = observed.bit(pos);
        out.set(pos, low_side ? (in || obs) : (in && obs));
    }
    return out;
}

} // namespace boolnet
