#include "boolnet/network.hpp"

#include <algorithm>
#include <string>

#include "boolnet/errors.hpp"

namespace boolnet {

namespace {

constexpr std::uint32_t kMaxIndegree = 26;
constexpr std::uint32_t kMaxTableWidth = 26;

} // namespace

WiredNetwork::WiredNetwork(std::vector<WiredNode> nodes) : nodes_(std::move(nodes)) {
    const std::uint32_t n = size();
    if (n == 0) throw validation_error("network needs at least one node");
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto& nd = nodes_[i];
        if (nd.inputs.size() > kMaxIndegree)
            throw validation_error("node " + std::to_string(i) + ": indegree above " +
                                   std::to_string(kMaxIndegree));
        for (auto in : nd.inputs)
            if (in >= n)
                throw validation_error("node " + std::to_string(i) + ": input " +
                                       std::to_string(in) + " out of range");
        auto sorted = nd.inputs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw validation_error("node " + std::to_string(i) + ": duplicate input");
        if (nd.table.size() != (std::size_t(1) << nd.inputs.size()))
            throw validation_error("node " + std::to_string(i) + ": table size " +
                                   std::to_string(nd.table.size()) + " != 2^indegree");
    }
}

State WiredNetwork::step(const State& s) const {
    if (s.size() != size()) throw validation_error("state width does not match network");
    State out(size());
    for (std::uint32_t i = 0; i < size(); ++i) {
        const auto& nd = nodes_[i];
        std::size_t idx = 0;
        for (std::size_t j = 0; j < nd.inputs.size(); ++j)
            idx |= std::size_t(s.bit(nd.inputs[j])) << j;
        if (nd.table[idx]) out.set(i, true);
    }
    return out;
}

RuleNetwork::RuleNetwork(std::uint32_t n, Rule rule, nlohmann::json descriptor)
    : n_(n), rule_(std::move(rule)), descriptor_(std::move(descriptor)) {
    if (n_ == 0) throw validation_error("network needs at least one node");
    if (!rule_) throw validation_error("rule network needs a rule");
}

State RuleNetwork::step(const State& s) const {
    if (s.size() != n_) throw validation_error("state width does not match network");
    State out = rule_(s);
    if (out.size() != n_) throw validation_error("rule returned a state of wrong width");
    return out;
}

RuleNetwork make_table_network(std::uint32_t n, std::vector<std::uint32_t> next) {
    if (n == 0 || n > kMaxTableWidth)
        throw validation_error("table networks support 1.." + std::to_string(kMaxTableWidth) +
                               " variables");
    if (next.size() != (std::size_t(1) << n))
        throw validation_error("table needs exactly 2^n entries");
    for (auto v : next)
        if (n < 32 && (v >> n) != 0)
            throw validation_error("table entry does not fit in " + std::to_string(n) + " bits");
    auto shared = std::make_shared<std::vector<std::uint32_t>>(std::move(next));
    nlohmann::json desc{{"kind", "table"}};
    desc["next"] = *shared;
    return RuleNetwork(
        n,
        [shared, n](const State& s) {
            return State::from_value((*shared)[s.to_u64()], n);
        },
        std::move(desc));
}

std::uint32_t Network::size() const {
    return std::visit([](const auto& net) { return net.size(); }, impl_);
}

State Network::step(const State& s) const {
    return std::visit([&](const auto& net) { return net.step(s); }, impl_);
}

Trajectory simulate(const Network& net, const State& s0, std::uint64_t steps) {
    Trajectory tr;
    tr.states.reserve(steps + 1);
    tr.states.push_back(s0);
    for (std::uint64_t t = 0; t < steps; ++t)
        tr.states.push_back(net.step(tr.states.back()));
    return tr;
}

} // namespace boolnet
