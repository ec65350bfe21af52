// Microbenchmarks for the hot paths: single steps on the three network
// kinds, attractor detection, the global cooperativity sweep, and monotone
// extension evaluation.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "boolnet/analysis.hpp"
#include "boolnet/constructions.hpp"
#include "boolnet/network.hpp"
#include "boolnet/rng.hpp"
#include "boolnet/state.hpp"
#include "boolnet/verify.hpp"

#include "helpers.hpp"

using boolnet::Network;
using boolnet::Rng;
using boolnet::State;

namespace {

void BM_wired_step(benchmark::State& state) {
    Rng rng(7);
    Network net(testkit::random_wired(static_cast<std::uint32_t>(state.range(0)), 2, rng));
    State s = rng.uniform_state(net.size());
    for (auto _ : state) {
        s = net.step(s);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_wired_step)->Arg(16)->Arg(64)->Arg(256);

void BM_table_step(benchmark::State& state) {
    const std::uint32_t n = 12;
    Rng rng(11);
    std::vector<std::uint32_t> next(std::size_t(1) << n);
    for (auto& v : next) v = static_cast<std::uint32_t>(rng.below(next.size()));
    Network net(boolnet::make_table_network(n, std::move(next)));
    State s = rng.uniform_state(n);
    for (auto _ : state) {
        s = net.step(s);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_table_step);

void BM_counter_step(benchmark::State& state) {
    boolnet::CounterTape tape = boolnet::build_counter_tape({7, 5, 4}, {4, 2});
    Network net(tape.net);
    Rng rng(3);
    State s = tape.random_coding_state(rng);
    for (auto _ : state) {
        s = net.step(s);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_counter_step);

void BM_find_attractor_counter(benchmark::State& state) {
    boolnet::CounterTape tape = boolnet::build_counter_tape({5, 4}, {4, 2});
    Network net(tape.net);
    Rng rng(5);
    State s = tape.random_coding_state(rng);
    for (auto _ : state) {
        auto info = boolnet::find_attractor(net, s, 1 << 20);
        benchmark::DoNotOptimize(info);
    }
}
BENCHMARK(BM_find_attractor_counter);

void BM_global_cooperativity(benchmark::State& state) {
    boolnet::CounterTape tape = boolnet::build_counter_tape({5, 4}, {4, 2});
    Network net(tape.net); // 16 coordinates
    for (auto _ : state) {
        auto rep = boolnet::check_cooperativity_global(net);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_global_cooperativity)->Unit(benchmark::kMillisecond);

void BM_extension_eval(benchmark::State& state) {
    const std::uint32_t n = 16;
    Rng rng(13);
    boolnet::PartialFunction pf;
    pf.n = n;
    for (int i = 0; i < 8; ++i) {
        State s(n);
        while (s.weight() < n / 2) s.set(static_cast<std::uint32_t>(rng.below(n)), true);
        pf.points.emplace_back(s, rng.uniform_state(n));
    }
    boolnet::RuleNetwork least = boolnet::monotone_extension(pf, 4);
    State s = rng.uniform_state(n);
    for (auto _ : state) {
        State img = least.step(s);
        benchmark::DoNotOptimize(img);
        s.flip(static_cast<std::uint32_t>(img.to_u64() & (n - 1)));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_extension_eval);

void BM_joint_cycle_decofam(benchmark::State& state) {
    boolnet::DecoherenceFamilyParams params{12, 1, 4, 8, 2, mpq_class(1, 8)};
    boolnet::DecoherenceFamily fam = boolnet::build_decoherence_family(params);
    Network net(fam.net);
    Rng rng(17);
    State a(12), b(12);
    for (;;) {
        a = rng.uniform_state(12);
        if (!fam.in_z(a)) continue;
        std::uint32_t bit = static_cast<std::uint32_t>(rng.below(12));
        if (a.bit(bit)) continue;
        b = a;
        b.flip(bit);
        if (fam.in_z(b)) break;
    }
    for (auto _ : state) {
        auto rep = boolnet::joint_cycle_analysis(net, a, b, fam.hamming_floor, 1 << 20);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_joint_cycle_decofam);

} // namespace

BENCHMARK_MAIN();
