#include "boolnet/verify.hpp"

#include <algorithm>
#include <string>

#include "boolnet/errors.hpp"

namespace boolnet {

DegreeProfile degree_profile(const WiredNetwork& net) {
    const std::uint32_t n = net.size();
    DegreeProfile p;
    p.indegree.resize(n);
    p.outdegree.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto& nd = net.node(i);
        p.indegree[i] = static_cast<std::uint32_t>(nd.inputs.size());
        for (auto in : nd.inputs) ++p.outdegree[in];
    }
    p.biquadratic = true;
    bool all_in_two = true;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (p.indegree[i] > 2 || p.outdegree[i] > 2) p.biquadratic = false;
        if (p.indegree[i] != 2) all_in_two = false;
    }
    p.strictly_biquadratic = p.biquadratic && all_in_two;
    if (p.biquadratic && all_in_two) {
        for (std::uint32_t i = 0; i < n; ++i)
            if (p.outdegree[i] != 2) {
                p.inconsistency = "node " + std::to_string(i) + " has outdegree " +
                                  std::to_string(p.outdegree[i]) +
                                  " in a closed all-indegree-2 network";
                p.strictly_biquadratic = false;
            }
    }
    return p;
}

CooperativityReport check_cooperativity_local(const WiredNetwork& net) {
    CooperativityReport rep;
    for (std::uint32_t v = 0; v < net.size(); ++v) {
        const auto& nd = net.node(v);
        const std::size_t indeg = nd.inputs.size();
        for (std::size_t j = 0; j < indeg; ++j) {
            const std::size_t lo_mask = (std::size_t(1) << j) - 1;
            for (std::size_t rest = 0; rest < (std::size_t(1) << (indeg - 1)); ++rest) {
                // rest enumerates the other inputs' values
                std::size_t base = (rest & lo_mask) | ((rest & ~lo_mask) << 1);
                ++rep.pairs_checked;
                if (nd.table[base] && !nd.table[base | (std::size_t(1) << j)]) {
                    CooperativityWitness w;
                    w.s = State(net.size());
                    for (std::size_t t = 0; t < indeg; ++t)
                        if (t != j && (base >> t) & 1) w.s.set(nd.inputs[t], true);
                    w.flip_bit = nd.inputs[j];
                    w.node = v;
                    rep.witness = std::move(w);
                    rep.cooperative = false;
                    return rep;
                }
            }
        }
    }
    rep.cooperative = true;
    return rep;
}

CooperativityReport check_cooperativity_global(const Network& net, std::uint32_t max_dim) {
    const std::uint32_t n = net.size();
    if (n > max_dim || n > 26)
        throw validation_error("global cooperativity sweep limited to " +
                               std::to_string(std::min<std::uint32_t>(max_dim, 26)) +
                               " variables (network has " + std::to_string(n) + ")");
    const std::uint64_t total = std::uint64_t(1) << n;
    std::vector<std::uint32_t> image(total);
    for (std::uint64_t v = 0; v < total; ++v)
        image[v] = static_cast<std::uint32_t>(net.step(State::from_value(v, n)).to_u64());

    CooperativityReport rep;
    for (std::uint64_t v = 0; v < total; ++v) {
        const std::uint32_t fv = image[v];
        for (std::uint32_t i = 0; i < n; ++i) {
            if ((v >> i) & 1) continue;
            ++rep.pairs_checked;
            const std::uint32_t fu = image[v | (std::uint64_t(1) << i)];
            if (fv & ~fu) {
                rep.witness = CooperativityWitness{State::from_value(v, n), i, std::nullopt};
                rep.cooperative = false;
                return rep;
            }
        }
    }
    rep.cooperative = true;
    return rep;
}

} // namespace boolnet
