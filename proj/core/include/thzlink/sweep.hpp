#pragma once

#include <map>
#include <string>
#include <vector>

namespace thzlink {

// One resolved sweep: every key maps to one or more values; rows are the
// cartesian product in the command's declared key order (last key fastest).
using ParamLists = std::map<std::string, std::vector<double>>;

struct SweepTable {
  std::vector<std::string> columns;        // numeric columns, in emit order
  std::vector<std::vector<double>> rows;   // one vector per row
  std::vector<std::string> status;         // empty when the command has no status column
  bool any_failure = false;                // a row reported no_root or error
};

// Numeric cells rendered as %.8e (9 significant digits), comma separated,
// '\n' line endings; the status column, when present, is appended verbatim.
std::string format_csv(const SweepTable& table);

// Key order, default value specs and spacing for one command; exposed so the
// CLI and the tests share a single registry.
struct CommandDef {
  std::string name;
  std::vector<std::pair<std::string, std::string>> defaults;  // key -> value spec
  std::vector<std::string> sweepable;  // keys allowed to hold more than one value
};

const std::vector<CommandDef>& command_registry();
const CommandDef& command_def(const std::string& name);

// "a,b,c" or "lo:hi" / "lo:hi:n"; ranges expand to n points (default_points
// when n is omitted), geometrically when log_spacing is set.  Throws
// std::invalid_argument on malformed specs, n < 2, lo >= hi, or log spacing
// with lo <= 0.
std::vector<double> expand_value_spec(const std::string& spec, bool log_spacing,
                                      int default_points);

// True for keys swept geometrically by default (freq, dist, nb).
bool default_log_spacing(const std::string& key);

// Evaluate one command over fully resolved parameter lists.  Unknown keys and
// multi-valued non-sweepable keys throw std::invalid_argument.  Rows are
// computed concurrently and emitted in sweep order; solver failures mark the
// row no_root and set any_failure instead of throwing.
SweepTable run_command(const std::string& name, const ParamLists& params);

}  // namespace thzlink
