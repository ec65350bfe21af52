#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "boolnet/analysis.hpp"
#include "boolnet/network.hpp"

namespace boolnet {

// Document form: {"format":"boolnet-network","version":1,"n":...} plus one
// payload kind.  "wired" lists nodes with input lists and truth-table
// strings (character t of the string is the output for input index t, first
// listed input in the low bit).  "table" lists the full successor table by
// state encoding.  "construction" names a generator and its parameters and
// is rebuilt bit-exactly on load.  Anonymous rule networks are saved by
// materializing their table, which is limited to small widths.
nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& doc);

void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

// Fixed-column per-sample CSV.  Fields a metric does not compute stay
// empty; fractions use six digits; states render as hex.  Bodies are
// byte-identical across reruns of the same configuration.
void write_sample_csv(std::ostream& out, const MetricReport& report);
void write_sample_csv_file(const std::string& path, const MetricReport& report);

} // namespace boolnet
