#include "altxy/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "altxy/ed.hpp"
#include "altxy/factorization.hpp"

namespace altxy {

namespace {

const std::vector<std::pair<Task, std::string>> kTaskNames{
    {Task::Spectrum, "spectrum"},         {Task::PhaseDiagram, "phase-diagram"}, {Task::ThermalMap, "thermal-map"},
    {Task::NgMap, "ng-map"},              {Task::Factorization, "factorization"}, {Task::Quench, "quench"},
    {Task::ErgodicityMap, "ergodicity-map"}, {Task::Scaling, "scaling"},        {Task::OracleCheck, "oracle-check"},
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

// Typed field readers; every failure names the key and the line it came from.
struct Reader {
  const std::string& key;
  const Entry& e;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(e.line, key, key + ": " + what + " (got '" + e.value + "')");
  }

  double number(const std::string& s) const {
    std::string t = trim(s);
    double scale = 1.0;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
      scale = std::numbers::pi;
      t = trim(t.substr(0, t.size() - 2));
      if (t.empty()) t = "1";
    }
    double v = 0.0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc() || r.ptr != t.data() + t.size() || !std::isfinite(v)) fail("expected a finite number");
    return v * scale;
  }
  double number() const { return number(e.value); }

  int integer(const std::string& s) const {
    const std::string t = trim(s);
    int v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc() || r.ptr != t.data() + t.size()) fail("expected an integer");
    return v;
  }
  int integer() const { return integer(e.value); }
  int positive() const {
    const int v = integer();
    if (v < 1) fail("expected a positive integer");
    return v;
  }

  bool boolean() const {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail("expected true or false");
  }

  GridSpec range() const {
    const auto p = split(e.value, ':');
    if (p.size() == 1) return {number(p[0]), number(p[0]), 1};
    if (p.size() != 3) fail("expected MIN:MAX:COUNT or a single value");
    GridSpec g{number(p[0]), number(p[1]), integer(p[2])};
    if (g.count < 1) fail("grid count must be at least 1");
    if (g.max < g.min) fail("MAX below MIN");
    return g;
  }

  std::pair<double, double> interval() const {
    const auto p = split(e.value, ':');
    if (p.size() != 2) fail("expected LO:HI");
    const double lo = number(p[0]), hi = number(p[1]);
    if (!(hi > lo)) fail("HI must exceed LO");
    return {lo, hi};
  }

  std::vector<double> numbers() const {
    std::vector<double> v;
    for (const auto& s : split(e.value, ',')) v.push_back(number(s));
    if (v.empty()) fail("empty list");
    return v;
  }

  std::vector<int> integers() const {
    std::vector<int> v;
    for (const auto& s : split(e.value, ',')) v.push_back(integer(s));
    if (v.empty()) fail("empty list");
    return v;
  }

  std::vector<Temperature> betas() const {
    std::vector<Temperature> v;
    for (const auto& s : split(e.value, ',')) {
      if (s == "inf") {
        v.push_back(Temperature::zero_temperature());
        continue;
      }
      const double b = number(s);
      if (b < 0) fail("beta must be nonnegative");
      v.push_back(Temperature::inverse(b));
    }
    if (v.empty()) fail("empty list");
    return v;
  }

  std::vector<Measure> measures() const {
    std::vector<Measure> v;
    for (const auto& s : split(e.value, ',')) {
      if (s == "ln") v.push_back(Measure::LN);
      else if (s == "qd") v.push_back(Measure::QD);
      else fail("measures are ln and qd");
    }
    if (v.empty()) fail("empty list");
    return v;
  }

  SystemSize size() const {
    const std::string& s = e.value;
    SystemSize out;
    if (s == "inf") return SystemSize::infinite();
    if (s.rfind("sum:", 0) == 0) out = SystemSize::pair_sum(integer(s.substr(4)));
    else if (s.rfind("exact:", 0) == 0) out = SystemSize::exact(integer(s.substr(6)));
    else out = SystemSize::exact(integer(s));
    try {
      out.validate();
    } catch (const std::exception& ex) {
      fail(ex.what());
    }
    return out;
  }
};

std::vector<std::pair<std::string, std::string>> defaults_for(Task t) {
  std::vector<std::pair<std::string, std::string>> d{
      {"model.J", "1"},
      {"model.gamma", "0.8"},
      {"grid.lambda1", "-2:2:201"},
      {"grid.lambda2", "-2:2:201"},
      {"grid.phi_points", "2048"},
      {"grid.time", "0:20:201"},
      {"physics.beta", "inf"},
      {"physics.size", "inf"},
      {"physics.measure", "ln,qd"},
      {"quench.post_h1", "0"},
      {"quench.post_h2", "0"},
      {"quench.t_begin", "100pi"},
      {"quench.t_end", "120pi"},
      {"quench.samples", "4000"},
      {"quench.delta", "1e-3"},
      {"ng.points", "400"},
      {"ng.T_max", "2"},
      {"ng.threshold", "1e-4"},
      {"scaling.axis", "lambda1"},
      {"scaling.fixed", "0"},
      {"scaling.bracket", "0.8:1.2"},
      {"scaling.sizes", "64,128,256,512,1024,2048"},
      {"scaling.path", "exact"},
      {"scaling.jump", "false"},
      {"scaling.delta", "1e-4"},
      {"scaling.lambda_c_inf", "auto"},
      {"oracle.N", "8"},
      {"output.path", to_string(t) + ".csv"},
      {"output.workers", "1"},
  };
  auto set = [&](const std::string& k, const std::string& v) {
    for (auto& [key, val] : d)
      if (key == k) val = v;
  };
  switch (t) {
    case Task::Spectrum:
      set("grid.lambda1", "0:0:1");
      set("grid.lambda2", "0:0:1");
      break;
    case Task::ThermalMap: set("physics.beta", "2"); break;
    case Task::Quench:
      set("grid.lambda1", "0:0:1");
      set("grid.lambda2", "0:0:1");
      set("physics.beta", "100");
      break;
    case Task::ErgodicityMap:
      set("grid.lambda1", "-2:2:21");
      set("grid.lambda2", "-2:2:21");
      set("physics.beta", "100");
      break;
    case Task::OracleCheck:
      set("grid.lambda1", "-2:2:5");
      set("grid.lambda2", "-2:2:5");
      set("physics.beta", "0.5,2,10");
      break;
    default: break;
  }
  return d;
}

void apply_key(SweepConfig& c, const std::string& key, const Entry& e) {
  const Reader r{key, e};
  if (key == "model.J") {
    c.J = r.number();
    if (!(c.J > 0)) r.fail("J must be positive");
  } else if (key == "model.gamma") {
    c.gammas = r.numbers();
  } else if (key == "grid.lambda1") {
    c.lambda1 = r.range();
  } else if (key == "grid.lambda2") {
    c.lambda2 = r.range();
  } else if (key == "grid.phi_points") {
    c.phi_points = r.positive();
  } else if (key == "grid.time") {
    c.time = r.range();
    if (c.time.min < 0) r.fail("times must be nonnegative");
    if (c.time.count > 1 && !(c.time.max > c.time.min)) r.fail("times must increase");
  } else if (key == "physics.beta") {
    c.betas = r.betas();
  } else if (key == "physics.size") {
    c.size = r.size();
  } else if (key == "physics.measure") {
    c.measures = r.measures();
  } else if (key == "quench.post_h1") {
    c.post.h1 = r.number();
  } else if (key == "quench.post_h2") {
    c.post.h2 = r.number();
  } else if (key == "quench.t_begin") {
    c.long_time.t_begin = r.number();
  } else if (key == "quench.t_end") {
    c.long_time.t_end = r.number();
  } else if (key == "quench.samples") {
    c.long_time.samples = r.positive();
  } else if (key == "quench.delta") {
    c.long_time.delta = r.number();
  } else if (key == "ng.points") {
    c.ng.points = r.positive();
  } else if (key == "ng.T_max") {
    c.ng.T_max = r.number();
    if (!(c.ng.T_max > 0)) r.fail("T_max must be positive");
  } else if (key == "ng.threshold") {
    c.ng.threshold = r.number();
  } else if (key == "scaling.axis") {
    if (e.value == "lambda1") c.axis = Axis::Lambda1;
    else if (e.value == "lambda2") c.axis = Axis::Lambda2;
    else r.fail("axis is lambda1 or lambda2");
  } else if (key == "scaling.fixed") {
    c.fixed = r.number();
  } else if (key == "scaling.bracket") {
    std::tie(c.bracket_lo, c.bracket_hi) = r.interval();
  } else if (key == "scaling.sizes") {
    c.sizes = r.integers();
  } else if (key == "scaling.path") {
    if (e.value == "exact") c.scaling_path = ScalingPath::Exact;
    else if (e.value == "sum") c.scaling_path = ScalingPath::PairSum;
    else if (e.value == "ed") c.scaling_path = ScalingPath::ED;
    else r.fail("path is exact, sum or ed");
  } else if (key == "scaling.jump") {
    c.jump = r.boolean();
  } else if (key == "scaling.delta") {
    c.jump_delta = r.number();
    if (!(c.jump_delta > 0)) r.fail("delta must be positive");
  } else if (key == "scaling.lambda_c_inf") {
    c.lambda_c_inf_set = e.value != "auto";
    if (c.lambda_c_inf_set) c.lambda_c_inf = r.number();
  } else if (key == "oracle.N") {
    c.oracle_N = r.integer();
    if (c.oracle_N < 4 || c.oracle_N % 4 != 0 || c.oracle_N > SpinHamiltonian::kMaxDenseSites)
      r.fail("oracle N must be 4, 8 or 12");
  } else if (key == "output.path") {
    if (e.value.empty()) r.fail("empty path");
    c.out = e.value;
  } else if (key == "output.workers") {
    c.workers = r.positive();
  } else {
    throw ConfigError(e.line, key, "unknown key " + key);
  }
}

// task-specific checks that span several keys
void check_consistency(const SweepConfig& c, const std::map<std::string, Entry>& entries) {
  auto line_of = [&](const std::string& k) { return entries.count(k) ? entries.at(k).line : 0; };
  if (c.task == Task::NgMap && c.size.kind == SizeKind::Exact)
    throw ConfigError(line_of("physics.size"), "physics.size", "ng-map needs size inf or sum:N");
  if (c.task == Task::Scaling) {
    if (c.gammas.size() != 1) throw ConfigError(line_of("model.gamma"), "model.gamma", "scaling takes one gamma");
    if (c.sizes.size() < 4) throw ConfigError(line_of("scaling.sizes"), "scaling.sizes", "scaling needs at least 4 sizes");
    for (int n : c.sizes) {
      const bool ok = c.scaling_path == ScalingPath::ED ? (n >= 4 && n % 2 == 0 && n <= SpinHamiltonian::kMaxSites)
                                                        : (n >= 4 && n % 4 == 0);
      if (!ok) throw ConfigError(line_of("scaling.sizes"), "scaling.sizes", "size " + std::to_string(n) + " not allowed on this path");
    }
    if (c.scaling_path == ScalingPath::ED && c.betas.size() == 1 && !c.betas[0].zero)
      throw ConfigError(line_of("physics.beta"), "physics.beta", "the ed scaling path is zero temperature only");
  }
  if (c.long_time.t_end <= c.long_time.t_begin)
    throw ConfigError(line_of("quench.t_end"), "quench.t_end", "t_end must exceed t_begin");
}

}  // namespace

std::string to_string(Task t) {
  for (const auto& [k, v] : kTaskNames)
    if (k == t) return v;
  return "?";
}

Task task_from_string(const std::string& s) {
  for (const auto& [k, v] : kTaskNames)
    if (v == s) return k;
  throw ConfigError(0, "task", "unknown task '" + s + "'");
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? min : min + (max - min) * i / (count - 1);
  return v;
}

std::string GridSpec::describe() const { return format_number(min) + ":" + format_number(max) + ":" + std::to_string(count); }

std::vector<std::pair<std::string, std::string>> documented_keys(Task t) {
  auto d = defaults_for(t);
  d.insert(d.begin(), {"task", to_string(t)});
  return d;
}

SweepConfig parse_config(const std::string& text, const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::map<std::string, Entry> file;
  std::istringstream in(text);
  std::string raw, section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineno, line, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(lineno, line, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, line, "expected key = value");
    const std::string k = trim(line.substr(0, eq));
    if (k.empty()) throw ConfigError(lineno, "", "empty key");
    const std::string full = section.empty() ? k : section + "." + k;
    if (file.count(full)) throw ConfigError(lineno, full, "duplicate key " + full);
    file[full] = {trim(line.substr(eq + 1)), lineno};
  }

  std::map<std::string, Entry> entries = file;
  for (const auto& [k, v] : overrides) entries[k] = {trim(v), 0};

  if (!entries.count("task")) throw ConfigError(0, "task", "missing task");
  SweepConfig c;
  try {
    c.task = task_from_string(entries.at("task").value);
  } catch (const ConfigError&) {
    throw ConfigError(entries.at("task").line, "task", "unknown task '" + entries.at("task").value + "'");
  }

  const auto defaults = defaults_for(c.task);
  std::set<std::string> known{"task"};
  for (const auto& [k, v] : defaults) known.insert(k);
  for (const auto& [k, e] : entries)
    if (!known.count(k)) throw ConfigError(e.line, k, "unknown key " + k);

  for (const auto& [k, v] : defaults) {
    const auto it = entries.find(k);
    const Entry e = it != entries.end() ? it->second : Entry{v, 0};
    apply_key(c, k, e);
    if (k.rfind("output.", 0) != 0) c.values[k] = e.value;
  }
  c.values["task"] = to_string(c.task);
  c.overrides = overrides;
  check_consistency(c, entries);
  return c;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) v = 0;  // drop the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string ResultTable::render() const {
  std::string s;
  for (const auto& [k, v] : metadata) s += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
  s += "\n";
  for (const auto& [idx, fields] : rows) {
    for (std::size_t i = 0; i < fields.size(); ++i) s += (i ? "," : "") + fields[i];
    s += "\n";
  }
  return s;
}

namespace {

using Values = std::vector<std::vector<std::vector<double>>>;  // [file][sub][column]

struct Layout {
  std::vector<std::string> suffixes;
  std::vector<std::string> coord_cols;
  std::vector<std::vector<std::string>> value_cols;
  std::size_t units = 0, per_unit = 1;
  std::function<std::vector<double>(std::size_t unit, std::size_t sub)> coords;
  std::function<Values(std::size_t unit)> compute;
};

double beta_value(Temperature t) { return t.zero ? std::numeric_limits<double>::infinity() : t.beta; }

// gamma (slowest), beta, lambda2, lambda1 (fastest)
struct MapGrid {
  std::vector<double> g, l1, l2;
  std::vector<Temperature> b;
  std::size_t size() const { return g.size() * b.size() * l1.size() * l2.size(); }
  struct Point {
    double gamma, lambda1, lambda2;
    Temperature temp;
  };
  Point at(std::size_t u) const {
    const std::size_t n1 = l1.size(), n2 = l2.size(), nb = b.size();
    return {g[u / (n1 * n2 * nb)], l1[u % n1], l2[(u / n1) % n2], b[(u / (n1 * n2)) % nb]};
  }
};

SystemParams params_of(const SweepConfig& c, const MapGrid::Point& p) {
  SystemParams s;
  s.J = c.J;
  s.gamma = p.gamma;
  s.lambda1 = p.lambda1;
  s.lambda2 = p.lambda2;
  s.validate();
  return s;
}

std::vector<std::string> measure_suffixes(const SweepConfig& c) {
  std::vector<std::string> s;
  for (Measure m : c.measures) s.push_back(m == Measure::LN ? "ln" : "qd");
  return s;
}

Layout make_layout(const SweepConfig& c) {
  Layout L;
  MapGrid grid{c.gammas, c.lambda1.values(), c.lambda2.values(), c.betas};
  const std::size_t nm = c.measures.size();
  auto map_coords = [grid](bool with_beta) {
    return [grid, with_beta](std::size_t u, std::size_t) {
      const auto p = grid.at(u);
      std::vector<double> v{p.gamma};
      if (with_beta) v.push_back(beta_value(p.temp));
      v.push_back(p.lambda1);
      v.push_back(p.lambda2);
      return v;
    };
  };
  auto per_measure = [&](std::vector<std::string> cols) {
    L.suffixes = measure_suffixes(c);
    L.value_cols.assign(nm, cols);
  };

  switch (c.task) {
    case Task::Spectrum: {
      grid.b = {Temperature::zero_temperature()};
      const int n = c.phi_points;
      auto phi = [n](std::size_t k) { return n == 1 ? 0.0 : std::numbers::pi / 2 * double(k) / (n - 1); };
      L.suffixes = {""};
      L.coord_cols = {"gamma", "lambda1", "lambda2", "phi"};
      std::vector<std::string> cols;
      for (int i = 0; i < 16; ++i) cols.push_back("e" + std::to_string(i));
      cols.push_back("gap");
      L.value_cols = {cols};
      L.units = grid.size();
      L.per_unit = n;
      L.coords = [grid, phi](std::size_t u, std::size_t k) {
        const auto p = grid.at(u);
        return std::vector<double>{p.gamma, p.lambda1, p.lambda2, phi(k)};
      };
      L.compute = [&c, grid, phi, n](std::size_t u) {
        const SystemParams p = params_of(c, grid.at(u));
        Values v(1, std::vector<std::vector<double>>(n));
        for (int k = 0; k < n; ++k) {
          const auto e = spectrum(p, phi(k));
          v[0][k].assign(e.begin(), e.end());
          v[0][k].push_back(e[1] - e[0]);
        }
        return v;
      };
      break;
    }
    case Task::PhaseDiagram:
    case Task::ThermalMap: {
      per_measure({"value"});
      L.coord_cols = {"gamma", "beta", "lambda1", "lambda2"};
      L.units = grid.size();
      L.coords = map_coords(true);
      L.compute = [&c, grid, nm](std::size_t u) {
        const auto pt = grid.at(u);
        const TwoSiteState s = assemble_rho(ces_observables(params_of(c, pt), pt.temp, c.size));
        Values v(nm, std::vector<std::vector<double>>(1));
        for (std::size_t m = 0; m < nm; ++m) v[m][0] = {measure_value(s, c.measures[m])};
        return v;
      };
      break;
    }
    case Task::NgMap: {
      grid.b = {Temperature::zero_temperature()};
      per_measure({"ng", "T_a", "T_b", "rise"});
      L.coord_cols = {"gamma", "lambda1", "lambda2"};
      L.units = grid.size();
      L.coords = map_coords(false);
      L.compute = [&c, grid, nm](std::size_t u) {
        const SystemParams p = params_of(c, grid.at(u));
        NonmonotonicityOptions o = c.ng;
        o.size = c.size;
        Values v(nm, std::vector<std::vector<double>>(1));
        for (std::size_t m = 0; m < nm; ++m) {
          const auto r = nonmonotonicity_detect(p, c.measures[m], o);
          double rise = 0.0;
          if (r.ng) {
            const auto ia = std::find(r.T.begin(), r.T.end(), r.T_a) - r.T.begin();
            const auto ib = std::find(r.T.begin(), r.T.end(), r.T_b) - r.T.begin();
            rise = r.values[ib] - r.values[ia];
          }
          v[m][0] = {r.ng ? 1.0 : 0.0, r.T_a, r.T_b, rise};
        }
        return v;
      };
      break;
    }
    case Task::Factorization: {
      grid.b = {Temperature::zero_temperature()};
      L.suffixes = {""};
      L.coord_cols = {"gamma", "lambda1", "lambda2"};
      L.value_cols = {{"residual", "on_line", "epsilon", "epsilon0", "excess", "theta_e", "theta_o"}};
      L.units = grid.size();
      L.coords = map_coords(false);
      L.compute = [&c, grid](std::size_t u) {
        const SystemParams p = params_of(c, grid.at(u));
        const SeparableAnsatz a = separable_energy(p);
        Values v(1, std::vector<std::vector<double>>(1));
        v[0][0] = {factorization_residual(p), on_factorization_line(p) ? 1.0 : 0.0, a.epsilon, a.epsilon0,
                   a.epsilon - a.epsilon0, a.theta_e, a.theta_o};
        return v;
      };
      break;
    }
    case Task::Quench: {
      per_measure({"value"});
      const std::vector<double> times = c.time.values();
      L.coord_cols = {"gamma", "beta", "lambda1", "lambda2", "t"};
      L.units = grid.size();
      L.per_unit = times.size();
      L.coords = [grid, times](std::size_t u, std::size_t k) {
        const auto p = grid.at(u);
        return std::vector<double>{p.gamma, beta_value(p.temp), p.lambda1, p.lambda2, times[k]};
      };
      L.compute = [&c, grid, times, nm](std::size_t u) {
        const auto pt = grid.at(u);
        QuenchSpec q{params_of(c, pt), c.post, pt.temp, c.size};
        const TimeSeries ts = time_series(q, c.measures[0], times, c.workers == 1);
        Values v(nm, std::vector<std::vector<double>>(times.size()));
        for (std::size_t k = 0; k < times.size(); ++k)
          for (std::size_t m = 0; m < nm; ++m)
            v[m][k] = {m == 0 ? ts.values[k] : measure_value(assemble_rho(ts.observables[k]), c.measures[m])};
        return v;
      };
      break;
    }
    case Task::ErgodicityMap: {
      per_measure({"eta", "q_time_avg", "q_eq_max", "T_eq_max", "fluctuation", "behaviour", "ergodic", "inconclusive"});
      L.coord_cols = {"gamma", "beta", "lambda1", "lambda2"};
      L.units = grid.size();
      L.coords = map_coords(true);
      L.compute = [&c, grid, nm](std::size_t u) {
        const auto pt = grid.at(u);
        QuenchSpec q{params_of(c, pt), c.post, pt.temp, c.size};
        LongTimeOptions o = c.long_time;
        o.parallel = c.workers == 1;
        Values v(nm, std::vector<std::vector<double>>(1));
        for (std::size_t m = 0; m < nm; ++m) {
          const ErgodicityReport r = ergodicity_score(q, c.measures[m], o);
          v[m][0] = {r.eta,
                     r.q_time_avg,
                     r.q_eq_max,
                     r.T_eq_max,
                     r.long_time.fluctuation,
                     double(static_cast<int>(r.long_time.behaviour)),
                     r.ergodic ? 1.0 : 0.0,
                     r.inconclusive ? 1.0 : 0.0};
        }
        return v;
      };
      break;
    }
    case Task::Scaling: {
      per_measure(c.jump ? std::vector<std::string>{"lambda_c", "slope", "jump"}
                         : std::vector<std::string>{"lambda_c", "slope"});
      L.coord_cols = {"N"};
      L.units = c.sizes.size();
      L.coords = [&c](std::size_t u, std::size_t) { return std::vector<double>{double(c.sizes[u])}; };
      L.compute = [&c, nm](std::size_t u) {
        const int N = c.sizes[u];
        const double gamma = c.gammas[0];
        const Temperature temp = c.betas[0];
        double lc_inf = c.lambda_c_inf;
        if (!c.lambda_c_inf_set)
          lc_inf = c.axis == Axis::Lambda1 ? afm_pm_boundary(c.fixed) : afm_dm_boundary(c.fixed, gamma);
        Values v(nm, std::vector<std::vector<double>>(1));
        for (std::size_t m = 0; m < nm; ++m) {
          Curve f;
          switch (c.scaling_path) {
            case ScalingPath::Exact: f = momentum_curve(c.measures[m], c.axis, c.fixed, gamma, SystemSize::exact(N), temp); break;
            case ScalingPath::PairSum: f = momentum_curve(c.measures[m], c.axis, c.fixed, gamma, SystemSize::pair_sum(N), temp); break;
            case ScalingPath::ED: f = ed_curve(c.measures[m], c.axis, c.fixed, gamma, N, temp); break;
          }
          PeakOptions po;
          po.parallel = c.workers == 1;
          const Pseudocritical pc = locate_pseudocritical(f, c.bracket_lo, c.bracket_hi, po);
          v[m][0] = {pc.lambda_c, pc.slope};
          if (c.jump) v[m][0].push_back(jump_magnitude(f, lc_inf, c.jump_delta));
        }
        return v;
      };
      break;
    }
    case Task::OracleCheck: {
      L.suffixes = {""};
      L.coord_cols = {"gamma", "beta", "lambda1", "lambda2"};
      L.value_cols = {{"max_dev", "pass"}};
      L.units = grid.size();
      L.coords = map_coords(true);
      L.compute = [&c, grid](std::size_t u) {
        const auto pt = grid.at(u);
        const SystemParams p = params_of(c, pt);
        const TwoSiteState mom = assemble_rho(ces_observables(p, pt.temp, SystemSize::exact(c.oracle_N)));
        const TwoSiteState ed = thermal_two_site(symmetric_spectrum(SpinHamiltonian(p, c.oracle_N)), pt.temp);
        const double dev = (mom.rho - ed.rho).max_abs();
        Values v(1, std::vector<std::vector<double>>(1));
        v[0][0] = {dev, dev < 1e-8 ? 1.0 : 0.0};
        return v;
      };
      break;
    }
  }
  return L;
}

std::string file_for(const std::string& base, const std::string& suffix) {
  if (suffix.empty()) return base;
  const std::filesystem::path p(base);
  const std::string ext = p.extension().string();
  std::filesystem::path out = p;
  out.replace_filename(p.stem().string() + "_" + suffix + (ext.empty() ? ".csv" : ext));
  return out.string();
}

bool is_volatile_key(const std::string& k) {
  return k == "timestamp" || k.rfind("fit.", 0) == 0 || k.rfind("jump_fit.", 0) == 0;
}

std::vector<std::pair<std::string, std::string>> stable_metadata(const std::vector<std::pair<std::string, std::string>>& m) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& kv : m)
    if (!is_volatile_key(kv.first)) out.push_back(kv);
  return out;
}

// Rows of an existing file whose configuration matches; anything else is discarded.
void load_existing(const std::string& path, ResultTable& table, std::ostream& log) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return;
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::map<long, std::vector<std::string>> rows;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string::npos) break;  // truncated last line
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!have_header && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!have_header) {
      header = split(line, ',');
      have_header = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != table.columns.size()) continue;
    long idx = 0;
    const auto r = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), idx);
    if (r.ec != std::errc() || r.ptr != fields[0].data() + fields[0].size()) continue;
    rows[idx] = std::move(fields);
  }
  if (header != table.columns || stable_metadata(meta) != stable_metadata(table.metadata)) {
    log << "note: " << path << " was written with a different configuration; recomputing\n";
    return;
  }
  table.rows = std::move(rows);
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(0, "output.path", "cannot write " + tmp);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

std::string timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double parse_field(const std::string& s) {
  if (s == "NaN") return std::nan("");
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = std::nan("");
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

void add_fits(const SweepConfig& c, ResultTable& t) {
  std::vector<double> N, lc, jumps;
  const auto col = [&](const std::string& name) {
    return std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin();
  };
  const auto iN = col("N"), ilc = col("lambda_c"), ij = col("jump");
  for (const auto& [idx, f] : t.rows) {
    N.push_back(parse_field(f[iN]));
    lc.push_back(parse_field(f[ilc]));
    if (c.jump) jumps.push_back(parse_field(f[ij]));
  }
  double lc_inf = c.lambda_c_inf;
  if (!c.lambda_c_inf_set)
    lc_inf = c.axis == Axis::Lambda1 ? afm_pm_boundary(c.fixed) : afm_dm_boundary(c.fixed, c.gammas[0]);
  t.metadata.emplace_back("fit.lambda_c_inf", format_number(lc_inf));
  try {
    const ScalingFit f = fit_power_law(N, lc, lc_inf, c.axis, c.fixed);
    t.metadata.emplace_back("fit.nu", format_number(f.nu));
    t.metadata.emplace_back("fit.nu_error", format_number(f.nu_error));
    t.metadata.emplace_back("fit.ln_alpha", format_number(f.ln_alpha));
    t.metadata.emplace_back("fit.ln_alpha_error", format_number(f.ln_alpha_error));
    t.metadata.emplace_back("fit.points", std::to_string(f.N.size()));
  } catch (const std::exception& e) {
    t.metadata.emplace_back("fit.error", sanitize(e.what()));
  }
  if (!c.jump) return;
  try {
    const JumpFit f = fit_jump_decay(N, jumps);
    t.metadata.emplace_back("jump_fit.nu", format_number(f.nu));
    t.metadata.emplace_back("jump_fit.nu_error", format_number(f.nu_error));
    t.metadata.emplace_back("jump_fit.ln_alpha", format_number(f.ln_alpha));
    t.metadata.emplace_back("jump_fit.ln_alpha_error", format_number(f.ln_alpha_error));
  } catch (const std::exception& e) {
    t.metadata.emplace_back("jump_fit.error", sanitize(e.what()));
  }
}

}  // namespace

RunSummary run(const SweepConfig& c, std::ostream& log) {
  const Layout L = make_layout(c);
  const std::size_t nf = L.suffixes.size();
  const std::string stamp = timestamp_now();

  std::vector<ResultTable> tables(nf);
  RunSummary summary;
  for (std::size_t f = 0; f < nf; ++f) {
    ResultTable& t = tables[f];
    t.metadata.emplace_back("version", kVersion);
    t.metadata.emplace_back("task", to_string(c.task));
    if (!L.suffixes[f].empty()) t.metadata.emplace_back("measure", L.suffixes[f]);
    for (const auto& [k, v] : c.values)
      if (k != "task") t.metadata.emplace_back(k, v);
    for (const auto& [k, v] : c.overrides)
      if (k.rfind("output.", 0) != 0) t.metadata.emplace_back("override." + k, v);
    t.metadata.emplace_back("tolerance.quadrature", format_number(QuadratureOptions{}.tolerance));
    t.metadata.emplace_back("tolerance.discord", format_number(DiscordOptions{}.objective_tolerance));
    t.columns.push_back("index");
    t.columns.insert(t.columns.end(), L.coord_cols.begin(), L.coord_cols.end());
    t.columns.insert(t.columns.end(), L.value_cols[f].begin(), L.value_cols[f].end());
    t.columns.push_back("error");
    summary.files.push_back(file_for(c.out, L.suffixes[f]));

    const auto parent = std::filesystem::path(summary.files[f]).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent))
      throw ConfigError(0, "output.path", "directory does not exist: " + parent.string());
    load_existing(summary.files[f], t, log);
    // rewrite the kept rows so that appends start on a clean line
    ResultTable head = t;
    head.metadata.emplace_back("timestamp", stamp);
    write_atomic(summary.files[f], head.render());
  }

  std::vector<std::size_t> missing;
  for (std::size_t u = 0; u < L.units; ++u) {
    bool need = false;
    for (std::size_t f = 0; f < nf && !need; ++f)
      for (std::size_t k = 0; k < L.per_unit && !need; ++k) need = !tables[f].rows.count(long(u * L.per_unit + k));
    if (need) missing.push_back(u);
  }
  summary.reused = long(L.units - missing.size());

  std::vector<std::ofstream> appenders;
  for (std::size_t f = 0; f < nf; ++f) appenders.emplace_back(summary.files[f], std::ios::binary | std::ios::app);

  const std::size_t chunk = std::max<std::size_t>(16, 4 * std::size_t(c.workers));
  for (std::size_t start = 0; start < missing.size(); start += chunk) {
    const std::size_t end = std::min(missing.size(), start + chunk);
    std::vector<Values> results(end - start);
    std::vector<std::string> errors(end - start);
    const long n = long(end - start);
    auto one = [&](long i) {
      try {
        results[i] = L.compute(missing[start + i]);
      } catch (const std::exception& e) {
        errors[i] = sanitize(e.what());
        if (errors[i].empty()) errors[i] = "error";
      }
    };
    if (c.workers > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(c.workers)
      for (long i = 0; i < n; ++i) one(i);
    } else {
      for (long i = 0; i < n; ++i) one(i);
    }
    for (long i = 0; i < n; ++i) {
      const std::size_t u = missing[start + i];
      if (!errors[i].empty()) ++summary.failed;
      for (std::size_t f = 0; f < nf; ++f) {
        std::string text;
        for (std::size_t k = 0; k < L.per_unit; ++k) {
          const long idx = long(u * L.per_unit + k);
          if (tables[f].rows.count(idx)) continue;
          std::vector<std::string> fields{std::to_string(idx)};
          for (double x : L.coords(u, k)) fields.push_back(format_number(x));
          for (std::size_t j = 0; j < L.value_cols[f].size(); ++j)
            fields.push_back(errors[i].empty() ? format_number(results[i][f][k][j]) : "NaN");
          fields.push_back(errors[i]);
          for (std::size_t j = 0; j < fields.size(); ++j) text += (j ? "," : "") + fields[j];
          text += "\n";
          tables[f].rows[idx] = std::move(fields);
        }
        appenders[f] << text;
        appenders[f].flush();
      }
      ++summary.computed;
    }
  }
  appenders.clear();

  bool bad = false;
  for (std::size_t f = 0; f < nf; ++f) {
    ResultTable& t = tables[f];
    const auto err = t.columns.size() - 1;
    const auto pass = std::find(t.columns.begin(), t.columns.end(), "pass") - t.columns.begin();
    for (const auto& [idx, fields] : t.rows) {
      if (!fields[err].empty()) bad = true;
      if (std::size_t(pass) < t.columns.size() && fields[pass] != "1") bad = true;
    }
    if (c.task == Task::Scaling) add_fits(c, t);
    t.metadata.emplace_back("timestamp", stamp);
    write_atomic(summary.files[f], t.render());
  }
  summary.exit_code = bad ? 3 : 0;
  log << to_string(c.task) << ": " << summary.computed << " computed, " << summary.reused << " reused, "
      << summary.failed << " failed\n";
  return summary;
}

}  // namespace altxy
