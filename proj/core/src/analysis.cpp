#include "boolnet/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "boolnet/errors.hpp"
#include "boolnet/exact.hpp"

namespace boolnet {

namespace {

struct StepCounter {
    std::uint64_t used = 0;
    std::uint64_t budget;
    void tick(std::uint64_t k = 1) {
        used += k;
        if (used > budget)
            throw budget_error("step budget of " + std::to_string(budget) + " exhausted");
    }
};

struct JointState {
    State a, b;
    bool operator==(const JointState&) const = default;
};

JointState joint_step(const Network& net, const JointState& s) {
    return {net.step(s.a), net.step(s.b)};
}

// Brent's algorithm specialized over the state type; returns (transient,
// period) and charges one budget tick per evaluation of `advance`.
template <class S, class Step>
std::pair<std::uint64_t, std::uint64_t> locate_cycle(const S& s0, Step advance,
                                                     StepCounter& sc) {
    std::uint64_t power = 1, lambda = 1;
    S tortoise = s0;
    S hare = advance(s0);
    sc.tick();
    while (!(tortoise == hare)) {
        if (power == lambda) {
            tortoise = hare;
            power <<= 1;
            lambda = 0;
        }
        hare = advance(hare);
        sc.tick();
        ++lambda;
    }
    S front = s0;
    hare = s0;
    for (std::uint64_t i = 0; i < lambda; ++i) {
        hare = advance(hare);
        sc.tick();
    }
    std::uint64_t mu = 0;
    while (!(front == hare)) {
        front = advance(front);
        hare = advance(hare);
        sc.tick(2);
        ++mu;
    }
    return {mu, lambda};
}

} // namespace

std::uint64_t default_step_budget() {
    static const std::uint64_t value = [] {
        if (const char* e = std::getenv("BOOLNET_STEP_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(e, &end, 10);
            if (end != e && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t(1) << 26;
    }();
    return value;
}

AttractorInfo find_attractor(const Network& net, const State& s0, std::uint64_t step_budget) {
    StepCounter sc{0, step_budget};
    auto advance = [&](const State& s) { return net.step(s); };
    auto [mu, lambda] = locate_cycle(s0, advance, sc);

    State entry = s0;
    for (std::uint64_t i = 0; i < mu; ++i) {
        entry = advance(entry);
        sc.tick();
    }
    State canon = entry;
    State cur = entry;
    for (std::uint64_t i = 1; i < lambda; ++i) {
        cur = advance(cur);
        sc.tick();
        if (encoding_less(cur, canon)) canon = cur;
    }
    return {mu, lambda, std::move(canon)};
}

std::vector<CensusEntry> attractor_census_exhaustive(const Network& net, std::uint32_t max_dim) {
    const std::uint32_t n = net.size();
    if (n > max_dim || n > 24)
        throw validation_error("exhaustive census limited to " +
                               std::to_string(std::min<std::uint32_t>(max_dim, 24)) +
                               " variables (network has " + std::to_string(n) + ")");
    const std::uint64_t total = std::uint64_t(1) << n;
    constexpr std::int32_t kUnseen = -1, kOnPath = -2;
    std::vector<std::int32_t> label(total, kUnseen);
    std::vector<CensusEntry> entries;
    std::vector<std::uint32_t> path;

    for (std::uint64_t start = 0; start < total; ++start) {
        if (label[start] != kUnseen) continue;
        path.clear();
        std::uint64_t cur = start;
        while (label[cur] == kUnseen) {
            label[cur] = kOnPath;
            path.push_back(static_cast<std::uint32_t>(cur));
            cur = net.step(State::from_value(cur, n)).to_u64();
        }
        std::int32_t id;
        if (label[cur] == kOnPath) {
            // new cycle: it starts at the first occurrence of cur on the path
            std::size_t at = path.size();
            while (path[at - 1] != cur) --at;
            --at;
            std::uint64_t period = path.size() - at;
            State canon = State::from_value(path[at], n);
            for (std::size_t j = at + 1; j < path.size(); ++j) {
                State s = State::from_value(path[j], n);
                if (encoding_less(s, canon)) canon = s;
            }
            id = static_cast<std::int32_t>(entries.size());
            entries.push_back({std::move(canon), period, 0});
        } else {
            id = label[cur];
        }
        entries[id].basin += path.size();
        for (auto v : path) label[v] = id;
    }
    return entries;
}

std::vector<CensusEntry> attractor_census_sampled(const Network& net, std::uint64_t samples,
                                                  std::uint64_t seed,
                                                  std::uint64_t step_budget) {
    auto less = [](const std::pair<std::uint64_t, State>& x,
                   const std::pair<std::uint64_t, State>& y) {
        if (x.first != y.first) return x.first < y.first;
        return encoding_less(x.second, y.second);
    };
    std::map<std::pair<std::uint64_t, State>, std::uint64_t, decltype(less)> hits(less);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng g = Rng::stream(seed, i);
        AttractorInfo a = find_attractor(net, g.uniform_state(net.size()), step_budget);
        ++hits[{a.period, a.canonical_state}];
    }
    std::vector<CensusEntry> entries;
    entries.reserve(hits.size());
    for (auto& [key, count] : hits)
        entries.push_back({key.second, key.first, count});
    return entries;
}

JointCycleReport joint_cycle_analysis(const Network& net, const State& a, const State& b,
                                      std::uint32_t threshold, std::uint64_t step_budget) {
    if (a.size() != net.size() || b.size() != net.size())
        throw validation_error("joint analysis states must match the network width");
    StepCounter sc{0, step_budget};
    auto advance = [&](const JointState& s) { return joint_step(net, s); };
    JointState s0{a, b};
    auto [mu, lambda] = locate_cycle(s0, advance, sc);

    JointCycleReport rep;
    rep.joint_transient = mu;
    rep.joint_period = lambda;
    rep.threshold = threshold;

    JointState cur = s0;
    for (std::uint64_t t = 0; t < mu; ++t) {
        if (!rep.coalescence_time && cur.a == cur.b) rep.coalescence_time = t;
        cur = advance(cur);
        sc.tick();
    }
    // cur is now on the joint cycle; equal pairs there stay equal forever, so
    // the cycle is either all-equal (coalesced) or equality never happens.
    rep.coalesced = (cur.a == cur.b);
    if (rep.coalesced && !rep.coalescence_time) rep.coalescence_time = mu;
    if (!rep.coalesced) rep.coalescence_time.reset();
    for (std::uint64_t t = 0; t < lambda; ++t) {
        std::uint32_t h = hamming(cur.a, cur.b);
        rep.max_hamming = std::max(rep.max_hamming, h);
        if (h >= threshold) ++rep.count_ge;
        cur = advance(cur);
        sc.tick();
    }
    rep.frac_ge = static_cast<double>(rep.count_ge) / static_cast<double>(lambda);
    return rep;
}

CoalescenceResult coalescence_test(const Network& net, const State& lo, const State& hi,
                                   std::uint64_t step_budget) {
    if (!(leq(lo, hi)) || lo == hi)
        throw validation_error("coalescence_test needs lo strictly below hi");
    JointCycleReport rep = joint_cycle_analysis(net, lo, hi, 0, step_budget);
    return {rep.coalesced, rep.coalescence_time, rep.joint_period};
}

namespace {

MetricReport run_metric(std::string name, const SampleOpts& opt, nlohmann::json params,
                        const std::function<SampleRow(std::uint64_t, Rng&)>& one_sample) {
    MetricReport rep;
    rep.metric = std::move(name);
    rep.seed = opt.seed;
    rep.samples = opt.samples;
    rep.params = std::move(params);
    rep.rows.resize(opt.samples);

    auto worker_body = [&](std::uint64_t i) {
        Rng g = Rng::stream(opt.seed, i);
        rep.rows[i] = one_sample(i, g);
        rep.rows[i].sample_index = i;
    };

    const std::uint32_t workers =
        std::max<std::uint32_t>(1, std::min<std::uint32_t>(opt.threads, 256));
    if (workers == 1 || opt.samples < 2) {
        for (std::uint64_t i = 0; i < opt.samples; ++i) worker_body(i);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::uint64_t i = next.fetch_add(1);
                    if (i >= opt.samples) return;
                    try {
                        worker_body(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (const auto& row : rep.rows) {
        if (row.verdict == "success") ++rep.successes;
        else if (row.verdict == "inconclusive") ++rep.inconclusive;
    }
    rep.estimate =
        rep.samples ? static_cast<double>(rep.successes) / static_cast<double>(rep.samples) : 0.0;
    return rep;
}

// Draws (state, bit) honoring the flip direction by redrawing both until the
// chosen bit has the required value.
std::pair<State, std::uint32_t> draw_flip(Rng& g, std::uint32_t n, FlipDirection dir) {
    for (std::uint32_t attempt = 0; attempt < 1u << 20; ++attempt) {
        State s = g.uniform_state(n);
        std::uint32_t i = static_cast<std::uint32_t>(g.below(n));
        if (dir == FlipDirection::any || (dir == FlipDirection::up && !s.bit(i)) ||
            (dir == FlipDirection::down && s.bit(i)))
            return {std::move(s), i};
    }
    throw validation_error("flip-direction conditioning was never satisfied");
}

} // namespace

MetricReport estimate_chaos(const Network& net, const mpq_class& c, const SampleOpts& opt,
                            StateSampler init) {
    if (c <= 1) throw domain_error("chaos estimation needs c > 1");
    const std::uint32_t n = net.size();
    const mpz_class num_pow = pow_z(c.get_num(), n);
    const mpz_class den_pow = pow_z(c.get_den(), n);
    nlohmann::json params{{"c", rational_to_string(c)}, {"n", n}};
    return run_metric("chaos", opt, params, [&](std::uint64_t, Rng& g) {
        SampleRow row;
        row.init_state = init ? init(g) : g.uniform_state(n);
        try {
            AttractorInfo a = find_attractor(net, row.init_state, opt.step_budget);
            row.transient_a = a.transient;
            row.period_a = a.period;
            bool success = mpz_class(static_cast<unsigned long>(a.period)) * den_pow > num_pow;
            row.verdict = success ? "success" : "failure";
        } catch (const budget_error&) {
            row.verdict = "inconclusive";
        }
        return row;
    });
}

MetricReport estimate_instability(const Network& net, const SampleOpts& opt) {
    const std::uint32_t n = net.size();
    nlohmann::json params{{"n", n}};
    return run_metric("instability", opt, params, [&](std::uint64_t, Rng& g) {
        SampleRow row;
        auto [s, bit] = draw_flip(g, n, opt.flip);
        row.init_state = s;
        row.flipped_bit = bit;
        State flipped = s;
        flipped.flip(bit);
        try {
            AttractorInfo a = find_attractor(net, s, opt.step_budget);
            AttractorInfo b = find_attractor(net, flipped, opt.step_budget);
            row.transient_a = a.transient;
            row.period_a = a.period;
            row.transient_b = b.transient;
            row.period_b = b.period;
            row.verdict = same_attractor(a, b) ? "failure" : "success";
        } catch (const budget_error&) {
            row.verdict = "inconclusive";
        }
        return row;
    });
}

namespace {

MetricReport estimate_joint_metric(const Network& net, const SampleOpts& opt, std::string name,
                                   nlohmann::json params, std::uint32_t threshold,
                                   const std::function<bool(const JointCycleReport&)>& success) {
    const std::uint32_t n = net.size();
    return run_metric(std::move(name), opt, std::move(params), [&, threshold](std::uint64_t,
                                                                              Rng& g) {
        SampleRow row;
        auto [s, bit] = draw_flip(g, n, opt.flip);
        row.init_state = s;
        row.flipped_bit = bit;
        State flipped = s;
        flipped.flip(bit);
        try {
            JointCycleReport rep = joint_cycle_analysis(net, s, flipped, threshold,
                                                        opt.step_budget);
            row.coalesced = rep.coalesced;
            row.coalescence_time = rep.coalescence_time;
            row.max_hamming = rep.max_hamming;
            row.frac_ge = rep.frac_ge;
            row.verdict = success(rep) ? "success" : "failure";
        } catch (const budget_error&) {
            row.verdict = "inconclusive";
        }
        return row;
    });
}

} // namespace

MetricReport estimate_decoherence(const Network& net, std::uint32_t min_hamming,
                                  const SampleOpts& opt) {
    nlohmann::json params{{"min_hamming", min_hamming}, {"n", net.size()}};
    return estimate_joint_metric(net, opt, "decoherence", params, min_hamming,
                                 [min_hamming](const JointCycleReport& rep) {
                                     return rep.max_hamming >= min_hamming;
                                 });
}

MetricReport estimate_sustained_decoherence(const Network& net, const mpq_class& alpha,
                                            const mpq_class& q, const SampleOpts& opt) {
    if (alpha <= 0 || alpha > 1) throw domain_error("alpha must lie in (0, 1]");
    if (q <= 0 || q > 1) throw domain_error("q must lie in (0, 1]");
    const std::uint32_t n = net.size();
    mpz_class thr_z = ceil_q(alpha * n);
    std::uint32_t threshold = static_cast<std::uint32_t>(thr_z.get_ui());
    nlohmann::json params{{"alpha", rational_to_string(alpha)},
                          {"q", rational_to_string(q)},
                          {"threshold", threshold},
                          {"n", n}};
    return estimate_joint_metric(
        net, opt, "sustained-decoherence", params, threshold,
        [&q](const JointCycleReport& rep) {
            // count_ge / period >= q, exactly
            return mpz_class(static_cast<unsigned long>(rep.count_ge)) * q.get_den() >=
                   q.get_num() * mpz_class(static_cast<unsigned long>(rep.joint_period));
        });
}

MetricReport estimate_coalescence(const Network& net, const SampleOpts& opt) {
    nlohmann::json params{{"n", net.size()}};
    return estimate_joint_metric(net, opt, "coalescence", params, 0,
                                 [](const JointCycleReport& rep) { return rep.coalesced; });
}

ChainProfile chain_hamming_profile(const Network& net, const std::vector<std::uint32_t>& perm,
                                   std::uint64_t t, std::uint64_t step_budget) {
    const std::uint32_t n = net.size();
    if (perm.size() != n) throw validation_error("permutation size must match the network");
    std::vector<bool> seen(n, false);
    for (auto v : perm) {
        if (v >= n || seen[v]) throw validation_error("not a permutation of 0..n-1");
        seen[v] = true;
    }
    StepCounter sc{0, step_budget};
    auto evolved_chain_state = [&](std::uint32_t k) {
        State s(n);
        for (std::uint32_t j = 0; j < n; ++j)
            if (perm[j] < k) s.set(j, true);
        for (std::uint64_t i = 0; i < t; ++i) {
            s = net.step(s);
            sc.tick();
        }
        return s;
    };

    ChainProfile prof;
    prof.increments.reserve(n);
    State prev = evolved_chain_state(0);
    for (std::uint32_t k = 1; k <= n; ++k) {
        State next = evolved_chain_state(k);
        std::uint32_t h = hamming(prev, next);
        prof.increments.push_back(h);
        prof.total += h;
        prev = std::move(next);
    }
    return prof;
}

std::uint32_t n_threshold(const mpq_class& alpha, const mpq_class& p, std::uint32_t scan_cap) {
    if (alpha <= 0 || p <= 0) throw domain_error("n_threshold needs alpha > 0 and p > 0");
    mpq_class bound = alpha * p / 2;
    for (std::uint32_t n = 1; n <= scan_cap; ++n) {
        // C(n,k) over k in 1..n peaks at the center
        mpz_class central = binom(n, std::max<std::int64_t>(1, n / 2));
        mpz_class lhs = central * bound.get_den();
        mpz_class rhs;
        mpz_mul_2exp(rhs.get_mpz_t(), bound.get_num().get_mpz_t(), n);
        if (lhs < rhs) return n;
    }
    throw error("n_threshold exceeded its scan cap");
}

double q_upper_bound(double c) {
    if (!(c > 1.0) || !(c <= 2.0))
        throw domain_error("q_upper_bound is defined for 1 < c <= 2");
    if (c * c <= 3.0) return 1.0;
    return 0.75 + std::log(0.5 * c) / (2.0 * std::log(0.75));
}

} // namespace boolnet
