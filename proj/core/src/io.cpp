#include "boolnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "boolnet/coding.hpp"
#include "boolnet/constructions.hpp"
#include "boolnet/errors.hpp"
#include "boolnet/exact.hpp"

namespace boolnet {

namespace {

constexpr int kFormatVersion = 1;
constexpr std::uint32_t kMaterializeCap = 20;

nlohmann::json wired_to_json(const WiredNetwork& net) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : net.nodes()) {
        std::string table(nd.table.size(), '0');
        for (std::size_t t = 0; t < nd.table.size(); ++t)
            if (nd.table[t]) table[t] = '1';
        nodes.push_back({{"inputs", nd.inputs}, {"table", std::move(table)}});
    }
    return {{"kind", "wired"}, {"nodes", std::move(nodes)}};
}

nlohmann::json rule_to_json(const RuleNetwork& net) {
    const auto& desc = net.descriptor();
    if (!desc.empty()) return desc;
    // Anonymous rule: materialize the successor table.
    if (net.size() > kMaterializeCap)
        throw capacity_error("cannot save an anonymous rule network above " +
                             std::to_string(kMaterializeCap) + " coordinates");
    std::vector<std::uint32_t> next(std::size_t(1) << net.size());
    for (std::uint64_t v = 0; v < next.size(); ++v)
        next[v] = static_cast<std::uint32_t>(
            net.step(State::from_value(v, net.size())).to_u64());
    nlohmann::json out{{"kind", "table"}};
    out["next"] = std::move(next);
    return out;
}

std::uint32_t require_u32(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned())
        throw parse_error(std::string("missing or non-integer field \"") + key + "\"");
    return doc[key].get<std::uint32_t>();
}

Network wired_from_json(const nlohmann::json& doc, std::uint32_t n) {
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        throw parse_error("wired document needs a \"nodes\" array");
    const auto& arr = doc["nodes"];
    if (arr.size() != n) throw parse_error("node count does not match \"n\"");
    std::vector<WiredNode> nodes;
    nodes.reserve(arr.size());
    for (const auto& jn : arr) {
        WiredNode nd;
        if (!jn.contains("inputs") || !jn["inputs"].is_array() || !jn.contains("table") ||
            !jn["table"].is_string())
            throw parse_error("each node needs \"inputs\" and a \"table\" string");
        for (const auto& in : jn["inputs"]) {
            if (!in.is_number_unsigned()) throw parse_error("node inputs must be indices");
            nd.inputs.push_back(in.get<std::uint32_t>());
        }
        const std::string& table = jn["table"].get_ref<const std::string&>();
        nd.table.reserve(table.size());
        for (char ch : table) {
            if (ch != '0' && ch != '1') throw parse_error("table strings are over '0'/'1'");
            nd.table.push_back(ch == '1');
        }
        nodes.push_back(std::move(nd));
    }
    return Network(WiredNetwork(std::move(nodes)));
}

Network table_from_json(const nlohmann::json& doc, std::uint32_t n) {
    if (!doc.contains("next") || !doc["next"].is_array())
        throw parse_error("table document needs a \"next\" array");
    std::vector<std::uint32_t> next;
    next.reserve(doc["next"].size());
    for (const auto& v : doc["next"]) {
        if (!v.is_number_unsigned()) throw parse_error("table entries must be state encodings");
        next.push_back(v.get<std::uint32_t>());
    }
    return Network(make_table_network(n, std::move(next)));
}

Network construction_from_json(const nlohmann::json& doc, std::uint32_t n) {
    if (!doc.contains("name") || !doc["name"].is_string())
        throw parse_error("construction document needs a \"name\"");
    if (!doc.contains("params") || !doc["params"].is_object())
        throw parse_error("construction document needs \"params\"");
    const std::string name = doc["name"].get<std::string>();
    const auto& p = doc["params"];

    if (name == "oscillating") {
        OscillatingParams op;
        op.n = require_u32(p, "n");
        op.len = require_u32(p, "len");
        if (p.contains("seed")) op.seed = p["seed"].get<std::uint64_t>();
        if (p.contains("family")) {
            for (const auto& h : p["family"])
                op.family.push_back(State::from_hex(h.get<std::string>(), op.n));
        }
        if (op.n != n) throw parse_error("construction dimension disagrees with \"n\"");
        return Network(build_oscillating_network(op));
    }
    if (name == "counter") {
        if (!p.contains("moduli") || !p["moduli"].is_array())
            throw parse_error("counter needs a \"moduli\" array");
        std::vector<std::uint64_t> moduli;
        for (const auto& m : p["moduli"]) moduli.push_back(m.get<std::uint64_t>());
        RobustScheme scheme(require_u32(p, "k"), require_u32(p, "ell"));
        CounterTape tape = build_counter_tape(moduli, scheme);
        if (tape.net.size() != n) throw parse_error("construction dimension disagrees with \"n\"");
        return Network(std::move(tape.net));
    }
    if (name == "decofam") {
        DecoherenceFamilyParams dp;
        dp.n = require_u32(p, "n");
        dp.z = require_u32(p, "z");
        dp.w = require_u32(p, "w");
        dp.u = require_u32(p, "u");
        dp.len = require_u32(p, "len");
        if (!p.contains("alpha") || !p["alpha"].is_string())
            throw parse_error("decofam needs \"alpha\" as a rational string");
        dp.alpha = parse_rational(p["alpha"].get<std::string>());
        if (dp.n != n) throw parse_error("construction dimension disagrees with \"n\"");
        return Network(build_decoherence_family(dp).net);
    }
    if (name == "extension") {
        PartialFunction pf;
        pf.n = require_u32(p, "n");
        if (!p.contains("points") || !p["points"].is_array())
            throw parse_error("extension needs a \"points\" array");
        for (const auto& pt : p["points"]) {
            if (!pt.is_array() || pt.size() != 2)
                throw parse_error("extension points are [state, image] hex pairs");
            pf.points.emplace_back(State::from_hex(pt[0].get<std::string>(), pf.n),
                                   State::from_hex(pt[1].get<std::string>(), pf.n));
        }
        if (pf.n != n) throw parse_error("construction dimension disagrees with \"n\"");
        return Network(monotone_extension(pf));
    }
    throw parse_error("unknown construction \"" + name + "\"");
}

} // namespace

nlohmann::json network_to_json(const Network& net) {
    nlohmann::json doc =
        net.is_wired() ? wired_to_json(net.wired()) : rule_to_json(net.rule_net());
    doc["format"] = "boolnet-network";
    doc["version"] = kFormatVersion;
    doc["n"] = net.size();
    return doc;
}

Network network_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw parse_error("network document must be a JSON object");
    if (!doc.contains("format") || doc["format"] != "boolnet-network")
        throw parse_error("not a boolnet-network document");
    if (!doc.contains("version") || doc["version"] != kFormatVersion)
        throw parse_error("unsupported document version");
    const std::uint32_t n = require_u32(doc, "n");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw parse_error("network document needs a \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "wired") return wired_from_json(doc, n);
    if (kind == "table") return table_from_json(doc, n);
    if (kind == "construction") return construction_from_json(doc, n);
    throw parse_error("unknown network kind \"" + kind + "\"");
}

void save_network(const Network& net, const std::string& path) {
    nlohmann::json doc = network_to_json(net);
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << doc.dump(2) << '\n';
    if (!out.flush()) throw error("write failed for " + path);
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    return network_from_json(doc);
}

void write_sample_csv(std::ostream& out, const MetricReport& report) {
    out << "seed,sample_index,init_state_hex,flipped_bit,transient_a,period_a,"
           "transient_b,period_b,coalesced,coalescence_time,max_hamming,"
           "frac_ge_threshold,verdict\n";
    for (const auto& row : report.rows) {
        out << report.seed << ',' << row.sample_index << ',' << row.init_state.to_hex() << ',';
        if (row.flipped_bit) out << *row.flipped_bit;
        out << ',';
        if (row.transient_a) out << *row.transient_a;
        out << ',';
        if (row.period_a) out << *row.period_a;
        out << ',';
        if (row.transient_b) out << *row.transient_b;
        out << ',';
        if (row.period_b) out << *row.period_b;
        out << ',';
        if (row.coalesced) out << (*row.coalesced ? 1 : 0);
        out << ',';
        if (row.coalescence_time) out << *row.coalescence_time;
        out << ',';
        if (row.max_hamming) out << *row.max_hamming;
        out << ',';
        if (row.frac_ge) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", *row.frac_ge);
            out << buf;
        }
        out << ',' << row.verdict << '\n';
    }
}

void write_sample_csv_file(const std::string& path, const MetricReport& report) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    write_sample_csv(out, report);
    if (!out.flush()) throw error("write failed for " + path);
}

} // namespace boolnet
