// Command-line front end: build constructions, run simulations and metric
// estimations, verify structure, and print closed-form bounds.
//
// Exit codes: 0 success, 1 refuted check, 2 usage or input error, 3 budget
// warning (inconclusive fraction above the configured limit).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boolnet/analysis.hpp"
#include "boolnet/coding.hpp"
#include "boolnet/constructions.hpp"
#include "boolnet/errors.hpp"
#include "boolnet/exact.hpp"
#include "boolnet/io.hpp"
#include "boolnet/network.hpp"
#include "boolnet/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kBadInput = 2;
constexpr int kBudgetWarning = 3;

using nlohmann::json;

void save_with_meta(const boolnet::Network& net, const std::string& path, json meta) {
    json doc = boolnet::network_to_json(net);
    if (!meta.empty()) doc["meta"] = std::move(meta);
    std::ofstream out(path);
    if (!out) throw boolnet::error("cannot write " + path);
    out << doc.dump(2) << '\n';
    if (!out.flush()) throw boolnet::error("write failed for " + path);
}

json gadget_meta(const boolnet::GadgetSpec& spec) {
    json meta = spec.info;
    meta["inputs"] = spec.inputs;
    meta["outputs"] = spec.outputs;
    meta["depth"] = spec.depth;
    return meta;
}

struct BuildOpts {
    std::string out;
    std::uint32_t n = 0, len = 0, z = 0, w = 0, u = 0, k = 0, ell = 0;
    std::uint32_t copies = 0, length = 0, from = 0, to = 0, m = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> moduli;
    std::string alpha, q, c, p;
    bool derive = false;
    bool readout = false;
};

int run_build_oscillating(const BuildOpts& o) {
    boolnet::OscillatingParams params{o.n, o.len, o.seed, {}};
    boolnet::RuleNetwork net = build_oscillating_network(params);
    json summary{{"construction", "oscillating"}, {"n", o.n}, {"len", o.len}, {"seed", o.seed}};
    if (!o.c.empty() || !o.p.empty()) {
        if (o.c.empty() || o.p.empty())
            throw boolnet::validation_error("feasibility check needs both --c and --p");
        bool ok = boolnet::oscillating_supports_target(o.n, o.len, boolnet::parse_rational(o.c),
                                                       boolnet::parse_rational(o.p));
        summary["feasible"] = ok;
        if (!ok) {
            std::cout << summary.dump(2) << '\n';
            std::cerr << "infeasible: need len <= c^n + 1 < (1-p)/(n-1) * 2^(n-2)\n";
            return kRefuted;
        }
    }
    boolnet::save_network(boolnet::Network(std::move(net)), o.out);
    summary["out"] = o.out;
    std::cout << summary.dump(2) << '\n';
    return kOk;
}

int run_build_counter(const BuildOpts& o) {
    boolnet::CounterTape tape =
        boolnet::build_counter_tape(o.moduli, boolnet::RobustScheme(o.k, o.ell));
    json summary{{"construction", "counter"},
                 {"n", tape.net.size()},
                 {"moduli", o.moduli},
                 {"block_width", tape.block_width},
                 {"period_lcm", tape.period().get_str()}};
    boolnet::save_network(boolnet::Network(std::move(tape.net)), o.out);
    summary["out"] = o.out;
    std::cout << summary.dump(2) << '\n';
    return kOk;
}

int run_build_decofam(const BuildOpts& o) {
    boolnet::DecoherenceFamilyParams params;
    if (o.derive) {
        if (o.alpha.empty() || o.p.empty() || o.c.empty())
            throw boolnet::validation_error("--derive needs --alpha, --p and --c");
        params = boolnet::derive_decoherence_params(boolnet::parse_rational(o.alpha),
                                                    boolnet::parse_rational(o.p),
                                                    boolnet::parse_rational(o.c));
    } else {
        if (o.alpha.empty())
            throw boolnet::validation_error("decofam needs --alpha (or use --derive)");
        params = {o.n, o.z, o.w, o.u, o.len, boolnet::parse_rational(o.alpha)};
    }
    boolnet::DecoherenceFamily fam = boolnet::build_decoherence_family(params);
    json summary{{"construction", "decofam"},
                 {"n", fam.params.n},
                 {"z", fam.params.z},
                 {"w", fam.params.w},
                 {"u", fam.params.u},
                 {"len", fam.params.len},
                 {"alpha", boolnet::rational_to_string(fam.params.alpha)},
                 {"attractors", fam.orbits.size()},
                 {"hamming_floor", fam.hamming_floor},
                 {"structure_verified", true}};
    boolnet::save_network(boolnet::Network(std::move(fam.net)), o.out);
    summary["out"] = o.out;
    std::cout << summary.dump(2) << '\n';
    return kOk;
}

int run_build_gadget(const std::string& which, const BuildOpts& o) {
    boolnet::GadgetSpec spec = [&] {
        if (which == "or-latch") return boolnet::build_or_latch_tree(boolnet::parse_rational(o.q));
        if (which == "copy-ring")
            return boolnet::build_robust_copy_ring(boolnet::RobustScheme(o.k, o.ell));
        if (which == "fanout") return boolnet::build_fanout_gadget(o.copies);
        return boolnet::build_recording_tape({o.length, o.from, o.to, o.m, o.readout});
    }();
    json summary = spec.info;
    summary["n"] = spec.net.size();
    summary["depth"] = spec.depth;
    save_with_meta(boolnet::Network(spec.net), o.out, gadget_meta(spec));
    summary["out"] = o.out;
    std::cout << summary.dump(2) << '\n';
    return kOk;
}

struct AnalyzeOpts {
    std::string net_path, csv_path, state_hex, init, flip = "any";
    std::uint64_t samples = 1000, seed = 0;
    std::uint64_t budget = 0; // 0 = library default
    std::uint32_t threads = 1, min_hamming = 1;
    std::string c, alpha, q;
    double max_inconclusive = 0.01;
    bool exhaustive = false;
};

boolnet::SampleOpts sample_opts(const AnalyzeOpts& a) {
    boolnet::SampleOpts opt;
    opt.samples = a.samples;
    opt.seed = a.seed;
    if (a.budget) opt.step_budget = a.budget;
    opt.threads = a.threads;
    if (a.flip == "up") opt.flip = boolnet::FlipDirection::up;
    else if (a.flip == "down") opt.flip = boolnet::FlipDirection::down;
    else if (a.flip == "any") opt.flip = boolnet::FlipDirection::any;
    else throw boolnet::validation_error("--flip must be any, up or down");
    return opt;
}

// --init coding draws initial states uniformly over a counter tape's coding
// states; it needs the network file to be a counter construction document.
boolnet::StateSampler coding_sampler(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw boolnet::parse_error("cannot read " + path);
    json doc;
    in >> doc;
    if (doc.value("kind", "") != "construction" || doc["name"] != "counter")
        throw boolnet::validation_error("--init coding needs a counter construction file");
    const auto& p = doc["params"];
    std::vector<std::uint64_t> moduli = p["moduli"].get<std::vector<std::uint64_t>>();
    boolnet::RobustScheme scheme(p["k"].get<std::uint32_t>(), p["ell"].get<std::uint32_t>());
    auto tape = std::make_shared<boolnet::CounterTape>(boolnet::build_counter_tape(moduli, scheme));
    return [tape](boolnet::Rng& rng) { return tape->random_coding_state(rng); };
}

int finish_metric(const boolnet::MetricReport& report, const AnalyzeOpts& a) {
    json summary{{"command", "analyze"},
                 {"metric", report.metric},
                 {"net", a.net_path},
                 {"samples", report.samples},
                 {"seed", report.seed},
                 {"threads", a.threads},
                 {"step_budget", a.budget ? a.budget : boolnet::default_step_budget()},
                 {"flip", a.flip},
                 {"params", report.params},
                 {"successes", report.successes},
                 {"inconclusive", report.inconclusive},
                 {"estimate", report.estimate},
                 {"max_inconclusive_frac", a.max_inconclusive}};
    if (!a.csv_path.empty()) {
        boolnet::write_sample_csv_file(a.csv_path, report);
        summary["csv"] = a.csv_path;
    }
    const double frac =
        report.samples ? double(report.inconclusive) / double(report.samples) : 0.0;
    summary["inconclusive_frac"] = frac;
    const bool warn = frac > a.max_inconclusive;
    if (warn) summary["warning"] = "inconclusive fraction above limit";
    std::cout << summary.dump(2) << '\n';
    return warn ? kBudgetWarning : kOk;
}

int run_analyze(const std::string& metric, const AnalyzeOpts& a) {
    boolnet::Network net = boolnet::load_network(a.net_path);

    if (metric == "census") {
        std::vector<boolnet::CensusEntry> entries;
        if (a.exhaustive || a.samples == 0)
            entries = boolnet::attractor_census_exhaustive(net);
        else
            entries = boolnet::attractor_census_sampled(
                net, a.samples, a.seed, a.budget ? a.budget : boolnet::default_step_budget());
        json out = json::array();
        for (const auto& e : entries)
            out.push_back({{"state", e.canonical_state.to_hex()},
                           {"period", e.period},
                           {"basin", e.basin}});
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    if (metric == "attractor") {
        if (a.state_hex.empty())
            throw boolnet::validation_error("attractor needs --state <hex>");
        boolnet::State s0 = boolnet::State::from_hex(a.state_hex, net.size());
        boolnet::AttractorInfo info = boolnet::find_attractor(
            net, s0, a.budget ? a.budget : boolnet::default_step_budget());
        json out{{"transient", info.transient},
                 {"period", info.period},
                 {"canonical_state", info.canonical_state.to_hex()}};
        std::cout << out.dump(2) << '\n';
        return kOk;
    }

    boolnet::SampleOpts opt = sample_opts(a);
    boolnet::MetricReport report;
    if (metric == "chaos") {
        if (a.c.empty()) throw boolnet::validation_error("chaos needs --c");
        boolnet::StateSampler init;
        if (a.init == "coding") init = coding_sampler(a.net_path);
        else if (!a.init.empty() && a.init != "uniform")
            throw boolnet::validation_error("--init must be uniform or coding");
        report = boolnet::estimate_chaos(net, boolnet::parse_rational(a.c), opt, init);
    } else if (metric == "instability") {
        report = boolnet::estimate_instability(net, opt);
    } else if (metric == "decoherence") {
        report = boolnet::estimate_decoherence(net, a.min_hamming, opt);
    } else if (metric == "alpha-q-decoherence") {
        if (a.alpha.empty() || a.q.empty())
            throw boolnet::validation_error("alpha-q-decoherence needs --alpha and --q");
        report = boolnet::estimate_sustained_decoherence(
            net, boolnet::parse_rational(a.alpha), boolnet::parse_rational(a.q), opt);
    } else if (metric == "coalescence") {
        report = boolnet::estimate_coalescence(net, opt);
    } else {
        throw boolnet::validation_error("unknown metric \"" + metric + "\"");
    }
    return finish_metric(report, a);
}

int run_verify(const std::string& net_path, std::vector<std::string> checks) {
    boolnet::Network net = boolnet::load_network(net_path);
    if (checks.empty()) {
        if (net.is_wired()) checks = {"degrees", "cooperative-local", "cooperative-global"};
        else checks = {"cooperative-global"};
    }
    json out = json::array();
    bool all_pass = true;
    for (const auto& check : checks) {
        json entry{{"check", check}};
        if (check == "degrees") {
            if (!net.is_wired())
                throw boolnet::validation_error("degrees applies to wired networks only");
            boolnet::DegreeProfile prof = boolnet::degree_profile(net.wired());
            entry["biquadratic"] = prof.biquadratic;
            entry["strictly_biquadratic"] = prof.strictly_biquadratic;
            if (!prof.inconsistency.empty()) entry["inconsistency"] = prof.inconsistency;
            entry["pass"] = true; // informational; degree shape is not a pass/fail claim
        } else if (check == "cooperative-local") {
            if (!net.is_wired())
                throw boolnet::validation_error("cooperative-local applies to wired networks only");
            boolnet::CooperativityReport rep = boolnet::check_cooperativity_local(net.wired());
            entry["pass"] = rep.cooperative;
            if (rep.witness) {
                entry["witness_state"] = rep.witness->s.to_hex();
                entry["witness_bit"] = rep.witness->flip_bit;
                if (rep.witness->node) entry["witness_node"] = *rep.witness->node;
            }
            all_pass = all_pass && rep.cooperative;
        } else if (check == "cooperative-global") {
            boolnet::CooperativityReport rep = boolnet::check_cooperativity_global(net);
            entry["pass"] = rep.cooperative;
            if (rep.witness) {
                entry["witness_state"] = rep.witness->s.to_hex();
                entry["witness_bit"] = rep.witness->flip_bit;
            }
            all_pass = all_pass && rep.cooperative;
        } else {
            throw boolnet::validation_error("unknown check \"" + check + "\"");
        }
        out.push_back(std::move(entry));
    }
    std::cout << out.dump(2) << '\n';
    return all_pass ? kOk : kRefuted;
}

struct BoundOpts {
    std::string c, alpha, p, export_path;
    std::uint32_t k = 0;
};

int run_bound(const std::string& kind, const BoundOpts& b) {
    json out{{"bound", kind}};
    if (kind == "q-upper") {
        if (b.c.empty()) throw boolnet::validation_error("q-upper needs --c");
        const double c = std::stod(b.c);
        out["c"] = c;
        out["value"] = boolnet::q_upper_bound(c);
        out["formula"] = "0.75 + ln(c/2) / (2 ln 0.75) on (sqrt(3), 2], 1 below";
    } else if (kind == "n-threshold") {
        if (b.alpha.empty() || b.p.empty())
            throw boolnet::validation_error("n-threshold needs --alpha and --p");
        out["alpha"] = b.alpha;
        out["p"] = b.p;
        out["value"] = boolnet::n_threshold(boolnet::parse_rational(b.alpha),
                                            boolnet::parse_rational(b.p));
        out["formula"] = "smallest N with C(N,k)/2^N < p*alpha/2 for all k in 1..N";
    } else if (kind == "friendly-pair") {
        if (b.c.empty()) throw boolnet::validation_error("friendly-pair needs --c");
        boolnet::FriendlyPair pair = boolnet::find_friendly_pair(boolnet::parse_rational(b.c));
        out["c"] = b.c;
        out["k"] = pair.k;
        out["epsilon"] = boolnet::rational_to_string(pair.epsilon);
        out["formula"] = "smallest even k with log2(c)(1+eps) < 1 and |C_k| >= 2^(k/(1+eps))";
    } else if (kind == "codes-count") {
        if (b.k == 0) throw boolnet::validation_error("codes-count needs --k");
        out["k"] = b.k;
        out["value"] = boolnet::robust_codes_count(b.k).get_str();
        if (!b.export_path.empty()) {
            std::ofstream file(b.export_path);
            if (!file) throw boolnet::error("cannot write " + b.export_path);
            boolnet::write_codebook(file, b.k);
            out["export"] = b.export_path;
        }
    } else {
        throw boolnet::validation_error("unknown bound \"" + kind + "\"");
    }
    std::cout << out.dump(2) << '\n';
    return kOk;
}

int run_simulate(const std::string& net_path, const std::string& state_hex,
                 std::uint64_t steps, const std::string& out_path) {
    boolnet::Network net = boolnet::load_network(net_path);
    boolnet::State s0 = boolnet::State::from_hex(state_hex, net.size());
    boolnet::Trajectory tr = boolnet::simulate(net, s0, steps);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw boolnet::error("cannot write " + out_path);
        out = &file;
    }
    *out << "t,state_hex\n";
    for (std::size_t t = 0; t < tr.states.size(); ++t)
        *out << t << ',' << tr.states[t].to_hex() << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooperative Boolean network toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "boolnet 0.1.0");

    BuildOpts b;
    AnalyzeOpts a;
    BoundOpts bound;
    std::string metric, bound_kind, state_hex, sim_out;
    std::uint64_t sim_steps = 0;
    std::vector<std::string> checks;
    int rc = kOk;

    auto* build = app.add_subcommand("build", "generate a network file");
    build->require_subcommand(1);

    auto* osc = build->add_subcommand("oscillating", "two complementary cycles plus a parity funnel");
    osc->add_option("--n", b.n, "dimension")->required();
    osc->add_option("--len", b.len, "cycle length")->required();
    osc->add_option("--seed", b.seed, "family draw seed");
    osc->add_option("--c", b.c, "divergence base for the feasibility check");
    osc->add_option("--p", b.p, "probability target for the feasibility check");
    osc->add_option("--out", b.out, "output path")->capture_default_str();
    osc->callback([&] {
        if (b.out.empty()) b.out = "oscillating.json";
        rc = run_build_oscillating(b);
    });

    auto* counter = build->add_subcommand("counter", "coded counter tape");
    counter->add_option("--moduli", b.moduli, "comma-separated moduli")->required()->delimiter(',');
    counter->add_option("--k", b.k, "code block width")->required();
    counter->add_option("--ell", b.ell, "blocks per word")->required();
    counter->add_option("--out", b.out, "output path");
    counter->callback([&] {
        if (b.out.empty()) b.out = "counter.json";
        rc = run_build_counter(b);
    });

    auto* deco = build->add_subcommand("decofam", "cooperative decoherence family");
    deco->add_option("--n", b.n, "dimension");
    deco->add_option("--z", b.z, "control-block half-width");
    deco->add_option("--w", b.w, "weight window lower bound");
    deco->add_option("--u", b.u, "weight window upper bound");
    deco->add_option("--len", b.len, "attractor period");
    deco->add_option("--alpha", b.alpha, "divergence fraction (rational)");
    deco->add_flag("--derive", b.derive, "derive parameters from --alpha, --p, --c");
    deco->add_option("--p", b.p, "probability target (with --derive)");
    deco->add_option("--c", b.c, "divergence base (with --derive)");
    deco->add_option("--out", b.out, "output path");
    deco->callback([&] {
        if (b.out.empty()) b.out = "decofam.json";
        rc = run_build_decofam(b);
    });

    auto* latch = build->add_subcommand("or-latch", "OR tree holding its output at 1");
    latch->add_option("--q", b.q, "hold probability (rational in (0,1))")->required();
    latch->add_option("--out", b.out, "output path");
    latch->callback([&] {
        if (b.out.empty()) b.out = "or-latch.json";
        rc = run_build_gadget("or-latch", b);
    });

    auto* ring = build->add_subcommand("copy-ring", "two registers joined by pairwise sort layers");
    ring->add_option("--k", b.k, "code block width")->required();
    ring->add_option("--ell", b.ell, "blocks per word")->required();
    ring->add_option("--out", b.out, "output path");
    ring->callback([&] {
        if (b.out.empty()) b.out = "copy-ring.json";
        rc = run_build_gadget("copy-ring", b);
    });

    auto* fan = build->add_subcommand("fanout", "synchronous copy tree");
    fan->add_option("--copies", b.copies, "output count")->required();
    fan->add_option("--out", b.out, "output path");
    fan->callback([&] {
        if (b.out.empty()) b.out = "fanout.json";
        rc = run_build_gadget("fanout", b);
    });

    auto* rec = build->add_subcommand("recorder", "rotating tape with one merge station");
    rec->add_option("--length", b.length, "registers in the ring")->required();
    rec->add_option("--from", b.from, "1-based window start")->required();
    rec->add_option("--to", b.to, "1-based window end")->required();
    rec->add_option("--m", b.m, "observed word width")->required();
    rec->add_flag("--readout", b.readout, "attach the conjunction readout");
    rec->add_option("--out", b.out, "output path");
    rec->callback([&] {
        if (b.out.empty()) b.out = "recorder.json";
        rc = run_build_gadget("recorder", b);
    });

    auto* analyze = app.add_subcommand("analyze", "estimate a metric or map attractors");
    analyze->add_option("metric", metric,
                        "chaos | instability | decoherence | alpha-q-decoherence | "
                        "coalescence | census | attractor")
        ->required();
    analyze->add_option("--net", a.net_path, "network file")->required();
    analyze->add_option("--samples", a.samples, "sample count")->capture_default_str();
    analyze->add_option("--seed", a.seed, "run seed")->capture_default_str();
    analyze->add_option("--threads", a.threads, "worker threads")->capture_default_str();
    analyze->add_option("--budget", a.budget, "step budget per sample (0 = default)");
    analyze->add_option("--csv", a.csv_path, "per-sample CSV output path");
    analyze->add_option("--c", a.c, "growth base (chaos)");
    analyze->add_option("--d", a.min_hamming, "Hamming threshold (decoherence)");
    analyze->add_option("--alpha", a.alpha, "Hamming fraction (alpha-q-decoherence)");
    analyze->add_option("--q", a.q, "cycle fraction (alpha-q-decoherence)");
    analyze->add_option("--init", a.init, "initial-state sampler: uniform | coding");
    analyze->add_option("--flip", a.flip, "flip direction: any | up | down")
        ->capture_default_str();
    analyze->add_option("--state", a.state_hex, "initial state (attractor)");
    analyze->add_flag("--exhaustive", a.exhaustive, "force exhaustive census");
    analyze->add_option("--max-inconclusive-frac", a.max_inconclusive,
                        "budget-warning threshold")
        ->capture_default_str();
    analyze->callback([&] { rc = run_analyze(metric, a); });

    auto* verify = app.add_subcommand("verify", "structural checks with witnesses");
    verify->add_option("--net", a.net_path, "network file")->required();
    verify->add_option("--checks", checks,
                       "comma-separated: degrees, cooperative-local, cooperative-global")
        ->delimiter(',');
    verify->callback([&] { rc = run_verify(a.net_path, checks); });

    auto* bound_cmd = app.add_subcommand("bound", "closed-form values");
    bound_cmd->add_option("kind", bound_kind, "q-upper | n-threshold | friendly-pair | codes-count")
        ->required();
    bound_cmd->add_option("--c", bound.c, "growth base");
    bound_cmd->add_option("--alpha", bound.alpha, "Hamming fraction");
    bound_cmd->add_option("--p", bound.p, "probability");
    bound_cmd->add_option("--k", bound.k, "code block width");
    bound_cmd->add_option("--export", bound.export_path, "write the codebook here");
    bound_cmd->callback([&] { rc = run_bound(bound_kind, bound); });

    auto* sim = app.add_subcommand("simulate", "dump a trajectory");
    sim->add_option("--net", a.net_path, "network file")->required();
    sim->add_option("--state", state_hex, "initial state, hex")->required();
    sim->add_option("--steps", sim_steps, "steps to run")->required();
    sim->add_option("--out", sim_out, "CSV path (default stdout)");
    sim->callback([&] { rc = run_simulate(a.net_path, state_hex, sim_steps, sim_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    } catch (const boolnet::budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kBudgetWarning;
    } catch (const boolnet::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return rc;
}
