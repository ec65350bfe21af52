#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include <json.hpp>

#include "boolnet/state.hpp"

namespace boolnet {

// One variable of an explicitly wired network.  `table` holds 2^|inputs|
// output bits; the table index is the integer formed from the input values
// with the first listed input as the least significant bit.
struct WiredNode {
    std::vector<std::uint32_t> inputs;
    std::vector<bool> table;
};

class WiredNetwork {
public:
    explicit WiredNetwork(std::vector<WiredNode> nodes);

    std::uint32_t size() const { return static_cast<std::uint32_t>(nodes_.size()); }
    const WiredNode& node(std::uint32_t i) const { return nodes_[i]; }
    const std::vector<WiredNode>& nodes() const { return nodes_; }

    State step(const State& s) const;

private:
    std::vector<WiredNode> nodes_;
};

// Network given by an update rule on whole states.  The descriptor carries
// what save_network needs to rebuild the rule bit-exactly: either
// {"kind":"table","next":[...]} or {"kind":"construction","name":..,"params":..}.
// An empty descriptor means the rule is anonymous; saving such a network
// materializes its table (small widths only).
class RuleNetwork {
public:
    using Rule = std::function<State(const State&)>;

    RuleNetwork(std::uint32_t n, Rule rule, nlohmann::json descriptor = {});

    std::uint32_t size() const { return n_; }
    State step(const State& s) const;
    const Rule& rule() const { return rule_; }
    const nlohmann::json& descriptor() const { return descriptor_; }

private:
    std::uint32_t n_;
    Rule rule_;
    nlohmann::json descriptor_;
};

// Explicit full-table network over n <= 26 variables; next[v] is the
// little-endian encoding of the successor of the state encoded by v.
RuleNetwork make_table_network(std::uint32_t n, std::vector<std::uint32_t> next);

class Network {
public:
    Network(WiredNetwork w) : impl_(std::move(w)) {}
    Network(RuleNetwork r) : impl_(std::move(r)) {}

    std::uint32_t size() const;
    State step(const State& s) const;

    bool is_wired() const { return std::holds_alternative<WiredNetwork>(impl_); }
    const WiredNetwork& wired() const { return std::get<WiredNetwork>(impl_); }
    const RuleNetwork& rule_net() const { return std::get<RuleNetwork>(impl_); }

private:
    std::variant<WiredNetwork, RuleNetwork> impl_;
};

struct Trajectory {
    std::vector<State> states; // states[t] after t steps; size == steps + 1
};

Trajectory simulate(const Network& net, const State& s0, std::uint64_t steps);

} // namespace boolnet
