#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thzlink/sweep.hpp"

namespace {

// exit codes: 0 clean sweep, 1 a row failed or the output could not be
// written, 2 malformed arguments or config
constexpr int exit_ok = 0;
constexpr int exit_row_failure = 1;
constexpr int exit_usage = 2;

struct SubState {
  const thzlink::CommandDef* def = nullptr;
  CLI::App* sub = nullptr;
  std::map<std::string, std::string> flags;  // key -> value spec, bound to CLI options
  std::string out;
  std::string config;
  int points = 200;
  bool force_log = false;
  bool force_linear = false;
};

// defaults first, then sweep-only keys (radar's nb alternative axis)
std::vector<std::string> option_keys(const thzlink::CommandDef& def) {
  std::vector<std::string> keys;
  for (const auto& [key, spec] : def.defaults) keys.push_back(key);
  for (const auto& key : def.sweepable) {
    bool seen = false;
    for (const auto& have : keys) seen = seen || have == key;
    if (!seen) keys.push_back(key);
  }
  return keys;
}

std::string trimmed(const std::string& text) {
  size_t lo = text.find_first_not_of(" \t\r");
  if (lo == std::string::npos) return "";
  size_t hi = text.find_last_not_of(" \t\r");
  return text.substr(lo, hi - lo + 1);
}

// flat key = value lines, '#' starts a comment, keys must belong to the command
std::map<std::string, std::string> parse_config(const std::string& path,
                                                const std::vector<std::string>& known) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trimmed(line.substr(0, eq));
    std::string value = trimmed(line.substr(eq + 1));
    bool ok = false;
    for (const auto& k : known) ok = ok || k == key;
    if (!ok)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    if (value.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": empty value for '" + key + "'");
    entries[key] = value;
  }
  return entries;
}

std::string join_exact(const std::vector<double>& values) {
  std::string out;
  char buf[32];
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    out += buf;
  }
  return out;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out.flush());
}

int run(const SubState& st) {
  const auto& def = *st.def;
  auto known = option_keys(def);

  std::map<std::string, std::string> resolved(def.defaults.begin(), def.defaults.end());
  std::set<std::string> explicit_keys;
  if (!st.config.empty()) {
    for (const auto& [key, value] : parse_config(st.config, known)) {
      resolved[key] = value;
      explicit_keys.insert(key);
    }
  }
  for (const auto& [key, spec] : st.flags) {
    if (st.sub->count("--" + key) > 0) {
      resolved[key] = spec;
      explicit_keys.insert(key);
    }
  }

  // the radar axis is either frequency or background occupancy, never both;
  // a bare nb replaces the default frequency range
  if (def.name == "radar" && explicit_keys.count("nb") > 0) {
    if (explicit_keys.count("freq") > 0)
      throw std::invalid_argument("radar: give --freq or --nb, not both");
    resolved.erase("freq");
  }

  if (st.force_log && st.force_linear)
    throw std::invalid_argument("--log and --linear are mutually exclusive");

  std::string axis;
  for (const auto& [key, spec] : resolved) {
    if (spec.find(':') == std::string::npos) continue;
    if (!axis.empty())
      throw std::invalid_argument("only one range axis allowed ('" + axis + "' and '" +
                                  key + "' both use lo:hi)");
    axis = key;
  }

  thzlink::ParamLists params;
  for (const auto& [key, spec] : resolved) {
    bool log_spacing = thzlink::default_log_spacing(key);
    if (st.force_log) log_spacing = true;
    if (st.force_linear) log_spacing = false;
    params[key] = thzlink::expand_value_spec(spec, log_spacing, st.points);
  }

  thzlink::SweepTable table = thzlink::run_command(def.name, params);
  std::string csv = thzlink::format_csv(table);

  if (st.out.empty()) {
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  } else {
    if (!write_file(st.out, csv)) {
      std::fprintf(stderr, "thzlink: cannot write '%s'\n", st.out.c_str());
      return exit_row_failure;
    }
    // the sidecar is itself a config file; rerunning with it reproduces the
    // CSV byte for byte because every value is spelled out at full precision
    std::string meta = "# thzlink " + def.name + "\n";
    if (!axis.empty()) {
      bool log_spacing = thzlink::default_log_spacing(axis);
      if (st.force_log) log_spacing = true;
      if (st.force_linear) log_spacing = false;
      meta += "# axis = " + axis + (log_spacing ? " (log)" : " (linear)") + "\n";
    }
    for (const auto& key : known) {
      auto it = params.find(key);
      if (it == params.end()) continue;
      meta += key + " = " + join_exact(it->second) + "\n";
    }
    std::string meta_path = st.out + ".meta";
    if (!write_file(meta_path, meta)) {
      std::fprintf(stderr, "thzlink: cannot write '%s'\n", meta_path.c_str());
      return exit_row_failure;
    }
  }
  return table.any_failure ? exit_row_failure : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"terahertz quantum link performance sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "thzlink 1.0.0");

  const auto& registry = thzlink::command_registry();
  std::vector<SubState> states(registry.size());

  static const std::map<std::string, std::string> summaries = {
      {"entanglement-gen", "entanglement of a two-mode squeezed thermal source"},
      {"entanglement-dist", "entanglement surviving a lossy noisy link"},
      {"keyrate", "reverse-reconciliation key rate over a free-space link"},
      {"accessible-freq", "lowest frequency with a positive key rate"},
      {"min-aperture", "receiver aperture needed to reach a target key rate"},
      {"radar", "quantum illumination error exponents and advantage"},
  };

  for (size_t i = 0; i < registry.size(); ++i) {
    SubState& st = states[i];
    st.def = &registry[i];
    st.sub = app.add_subcommand(st.def->name, summaries.at(st.def->name));
    for (const auto& key : option_keys(*st.def)) {
      st.flags[key] = "";
      st.sub->add_option("--" + key, st.flags[key],
                         "value spec: single number, comma list, or lo:hi[:n]");
    }
    st.sub->add_option("--out", st.out, "write CSV here plus a .meta sidecar");
    st.sub->add_option("--config", st.config, "flat key = value file, applied before flags");
    st.sub->add_option("--points", st.points, "points for ranges without a count")
        ->check(CLI::Range(2, 1000000));
    st.sub->add_flag("--log", st.force_log, "force geometric spacing for the range axis");
    st.sub->add_flag("--linear", st.force_linear, "force linear spacing for the range axis");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  for (const auto& st : states) {
    if (!st.sub->parsed()) continue;
    try {
      return run(st);
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "thzlink: %s\n", e.what());
      return exit_usage;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "thzlink: %s\n", e.what());
      return exit_row_failure;
    }
  }
  return exit_usage;
}
