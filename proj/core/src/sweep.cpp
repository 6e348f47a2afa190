#include "thzlink/sweep.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "thzlink/link.hpp"
#include "thzlink/qkd.hpp"
#include "thzlink/radar.hpp"
#include "thzlink/thermal.hpp"

namespace thzlink {

namespace {

constexpr double nan_cell = std::numeric_limits<double>::quiet_NaN();

std::vector<CommandDef> make_registry() {
  return {
      {"entanglement-gen",
       {{"freq", "1e12,5e12"}, {"squeeze-db", "10"}, {"temp", "3:296"}},
       {"freq", "squeeze-db", "temp"}},
      {"entanglement-dist",
       {{"freq", "2e12,5e12"}, {"squeeze-db", "3,10"}, {"temp", "30"},
        {"eta", "0.1"}, {"trans", "0.01:0.99"}},
       {"freq", "squeeze-db", "trans"}},
      {"keyrate",
       {{"freq", "15e12,30e12,50e12"}, {"temp", "30,173"}, {"eta", "0.1"},
        {"w0", "0.1"}, {"ra", "0.1"}, {"dist", "1e3:3e5"}},
       {"freq", "temp", "dist"}},
      {"accessible-freq",
       {{"temp", "30"}, {"eta", "0.1"}, {"trans", "0.01:0.99"}},
       {"temp", "eta", "trans"}},
      {"min-aperture",
       {{"freq", "1e13:1e14"}, {"eta", "0.1"}, {"temp", "296"}, {"w0", "0.1"},
        {"dist", "5e5"}, {"target-rate", "1e-4"}},
       {"freq", "eta"}},
      {"radar",
       {{"freq", "1e12:1e13"}, {"temp", "296"}, {"kappa", "0.01"}, {"ns", "0.01"}},
       {"freq", "nb", "kappa", "ns"}},
  };
}

// cartesian product over the declared key order, last key fastest
struct Grid {
  std::vector<std::string> keys;
  std::vector<const std::vector<double>*> lists;

  size_t size() const {
    size_t n = 1;
    for (auto* l : lists) n *= l->size();
    return n;
  }
  std::vector<double> at(size_t idx) const {
    std::vector<double> point(keys.size());
    for (size_t k = keys.size(); k-- > 0;) {
      const auto& list = *lists[k];
      point[k] = list[idx % list.size()];
      idx /= list.size();
    }
    return point;
  }
};

Grid make_grid(const CommandDef& def, const ParamLists& params,
               const std::vector<std::string>& order) {
  for (const auto& [key, values] : params) {
    bool known = false;
    for (const auto& [dk, spec] : def.defaults) known = known || dk == key;
    for (const auto& sk : def.sweepable) known = known || sk == key;
    if (!known)
      throw std::invalid_argument("unknown parameter '" + key + "' for " + def.name);
    if (values.empty())
      throw std::invalid_argument("parameter '" + key + "' has no values");
    bool sweepable = false;
    for (const auto& s : def.sweepable) sweepable = sweepable || s == key;
    if (values.size() > 1 && !sweepable)
      throw std::invalid_argument("parameter '" + key + "' takes a single value for " +
                                  def.name);
  }
  Grid grid;
  for (const auto& key : order) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument("missing parameter '" + key + "' for " + def.name);
    grid.keys.push_back(key);
    grid.lists.push_back(&it->second);
  }
  return grid;
}

double scalar(const ParamLists& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty())
    throw std::invalid_argument("missing parameter '" + key + "'");
  return it->second.front();
}

struct RowOut {
  std::vector<double> cells;
  std::string status;
};

using RowFn = std::function<RowOut(const std::vector<double>&)>;

SweepTable evaluate(const Grid& grid, std::vector<std::string> columns, bool with_status,
                    const RowFn& fn) {
  SweepTable table;
  table.columns = std::move(columns);
  size_t n = grid.size();
  std::vector<RowOut> rows(n);

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        rows[i] = fn(grid.at(i));
      } catch (const std::exception&) {
        rows[i].cells.assign(table.columns.size() - grid.keys.size(), nan_cell);
        rows[i].status = "error";
      }
    }
  };
  unsigned hw = std::thread::hardware_concurrency();
  unsigned workers = std::min<unsigned>(hw > 0 ? hw : 1, 16);
  if (n < 2 || workers < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (size_t i = 0; i < n; ++i) {
    std::vector<double> full = grid.at(i);
    full.insert(full.end(), rows[i].cells.begin(), rows[i].cells.end());
    table.rows.push_back(std::move(full));
    if (with_status) {
      table.status.push_back(rows[i].status.empty() ? "ok" : rows[i].status);
      if (!rows[i].status.empty()) table.any_failure = true;
    } else if (!rows[i].status.empty()) {
      table.any_failure = true;
    }
  }
  return table;
}

SweepTable run_entanglement_gen(const CommandDef& def, const ParamLists& params) {
  Grid grid = make_grid(def, params, {"freq", "squeeze-db", "temp"});
  return evaluate(grid, {"freq_hz", "squeeze_db", "temp_k", "nbar", "e_ln"}, false,
                  [](const std::vector<double>& p) {
                    RowOut row;
                    row.cells = {thermal_occupancy(p[0], p[2]),
                                 entanglement_generated(p[0], p[2], p[1])};
                    return row;
                  });
}

SweepTable run_entanglement_dist(const CommandDef& def, const ParamLists& params) {
  Grid grid = make_grid(def, params, {"freq", "squeeze-db", "trans"});
  double temp = scalar(params, "temp");
  double eta = scalar(params, "eta");
  return evaluate(grid, {"freq_hz", "squeeze_db", "transmissivity", "e_ln_out"}, false,
                  [temp, eta](const std::vector<double>& p) {
                    RowOut row;
                    row.cells = {entanglement_distributed(p[0], temp, p[1], p[2], eta)};
                    return row;
                  });
}

SweepTable run_keyrate(const CommandDef& def, const ParamLists& params) {
  Grid grid = make_grid(def, params, {"freq", "temp", "dist"});
  double eta = scalar(params, "eta");
  double w0 = scalar(params, "w0");
  double ra = scalar(params, "ra");
  return evaluate(
      grid,
      {"freq_hz", "temp_k", "dist_m", "transmissivity", "rate_bits_per_use",
       "plob_bits_per_use"},
      false, [eta, w0, ra](const std::vector<double>& p) {
        double trans = link_transmissivity(p[0], w0, ra, p[2]);
        if (trans > 1.0 - 1e-12) trans = 1.0 - 1e-12;
        double v0 = thermal_variance(thermal_occupancy(p[0], p[1]));
        RowOut row;
        row.cells = {trans, rr_key_rate(v0, trans, eta).bits(), plob_bound(v0, trans)};
        return row;
      });
}

SweepTable run_accessible_freq(const CommandDef& def, const ParamLists& params) {
  Grid grid = make_grid(def, params, {"temp", "eta", "trans"});
  return evaluate(
      grid, {"temp_k", "eta", "transmissivity", "f_access_hz", "f_floor_hz"}, true,
      [](const std::vector<double>& p) {
        RowOut row;
        auto freq = accessible_frequency(p[2], p[0], p[1]);
        row.cells = {freq ? *freq : nan_cell, min_frequency_bound(p[2], p[0])};
        if (!freq) row.status = "no_root";
        return row;
      });
}

SweepTable run_min_aperture(const CommandDef& def, const ParamLists& params) {
  Grid grid = make_grid(def, params, {"freq", "eta"});
  double temp = scalar(params, "temp");
  double w0 = scalar(params, "w0");
  double dist = scalar(params, "dist");
  double target = scalar(params, "target-rate");
  return evaluate(grid, {"freq_hz", "eta", "ra_min_m"}, true,
                  [temp, w0, dist, target](const std::vector<double>& p) {
                    RowOut row;
                    auto ra = min_aperture_radius(p[0], temp, p[1], w0, dist, target);
                    row.cells = {ra ? *ra : nan_cell};
                    if (!ra) row.status = "no_root";
                    return row;
                  });
}

SweepTable run_radar(const CommandDef& def, const ParamLists& params) {
  bool by_nb = params.count("nb") > 0;
  if (by_nb && params.count("freq") > 0)
    throw std::invalid_argument("radar: sweep either freq or nb, not both");
  double temp = scalar(params, "temp");
  Grid grid = make_grid(def, params, {by_nb ? "nb" : "freq", "kappa", "ns"});

  // the conjugate axis (occupancy for a frequency sweep, and vice versa) is
  // echoed per row so the output is self-describing either way
  return evaluate(
      grid,
      {by_nb ? "nbar_b" : "freq_hz", "kappa", "ns", by_nb ? "freq_hz" : "nbar_b",
       "exponent_qi", "exponent_coh", "advantage_db"},
      false, [by_nb, temp](const std::vector<double>& p) {
        IlluminationScenario sc;
        sc.kappa = p[1];
        sc.signal_ns = p[2];
        double freq, nb;
        if (by_nb) {
          nb = p[0];
          freq = occupancy_to_frequency(nb, temp);
        } else {
          freq = p[0];
          nb = thermal_occupancy(freq, temp);
        }
        sc.background_nb = nb;
        double eq = qi_exponent(sc).exponent;
        double ec = coherent_exponent(sc).exponent;
        double adv = (eq > 0.0 && ec > 0.0) ? 10.0 * std::log10(eq / ec) : nan_cell;
        RowOut row;
        row.cells = {by_nb ? freq : nb, eq, ec, adv};
        return row;
      });
}

}  // namespace

const std::vector<CommandDef>& command_registry() {
  static const std::vector<CommandDef> defs = make_registry();
  return defs;
}

const CommandDef& command_def(const std::string& name) {
  for (const auto& def : command_registry())
    if (def.name == name) return def;
  throw std::invalid_argument("unknown command '" + name + "'");
}

bool default_log_spacing(const std::string& key) {
  return key == "freq" || key == "dist" || key == "nb";
}

std::vector<double> expand_value_spec(const std::string& spec, bool log_spacing,
                                      int default_points) {
  auto parse_num = [](const std::string& text) {
    size_t used = 0;
    double value;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + text + "'");
    }
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used])))
      ++used;
    if (used != text.size() || !std::isfinite(value))
      throw std::invalid_argument("bad number '" + text + "'");
    return value;
  };
  auto split = [](const std::string& text, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    for (size_t pos; (pos = text.find(sep, start)) != std::string::npos; start = pos + 1)
      parts.push_back(text.substr(start, pos - start));
    parts.push_back(text.substr(start));
    return parts;
  };

  if (spec.find(':') != std::string::npos) {
    auto parts = split(spec, ':');
    if (parts.size() != 2 && parts.size() != 3)
      throw std::invalid_argument("range spec needs lo:hi or lo:hi:count");
    double lo = parse_num(parts[0]);
    double hi = parse_num(parts[1]);
    long count = default_points;
    if (parts.size() == 3) {
      double c = parse_num(parts[2]);
      count = static_cast<long>(c);
      if (c != static_cast<double>(count))
        throw std::invalid_argument("range count must be an integer");
    }
    if (count < 2) throw std::invalid_argument("range needs at least 2 points");
    if (!(lo < hi)) throw std::invalid_argument("range needs lo < hi");
    if (log_spacing && !(lo > 0.0))
      throw std::invalid_argument("log spacing needs lo > 0");
    std::vector<double> values(count);
    for (long i = 0; i < count; ++i) {
      double f = static_cast<double>(i) / (count - 1);
      values[i] = log_spacing ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    return values;
  }

  std::vector<double> values;
  for (const auto& part : split(spec, ',')) values.push_back(parse_num(part));
  return values;
}

std::string format_csv(const SweepTable& table) {
  std::string out;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  bool with_status = !table.status.empty();
  if (with_status) out += ",status";
  out += '\n';
  char buf[32];
  for (size_t r = 0; r < table.rows.size(); ++r) {
    for (size_t c = 0; c < table.rows[r].size(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof buf, "%.8e", table.rows[r][c]);
      out += buf;
    }
    if (with_status) {
      out += ',';
      out += table.status[r];
    }
    out += '\n';
  }
  return out;
}

SweepTable run_command(const std::string& name, const ParamLists& params) {
  const CommandDef& def = command_def(name);
  if (name == "entanglement-gen") return run_entanglement_gen(def, params);
  if (name == "entanglement-dist") return run_entanglement_dist(def, params);
  if (name == "keyrate") return run_keyrate(def, params);
  if (name == "accessible-freq") return run_accessible_freq(def, params);
  if (name == "min-aperture") return run_min_aperture(def, params);
  return run_radar(def, params);
}

}  // namespace thzlink
