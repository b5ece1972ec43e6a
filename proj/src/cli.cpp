#include "fhd/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhd/error.hpp"
#include "fhd/mms.hpp"

namespace fhd {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::pair<Mode, std::string_view>, 3> kModes{{
    {Mode::Converge, "converge"},
    {Mode::Energy, "energy"},
    {Mode::Run, "run"},
}};

struct ParamKey {
  std::string_view name;
  double ModelParams::*field;
};

constexpr std::array<ParamKey, 10> kParamKeys{{
    {"rho", &ModelParams::rho},
    {"kappa", &ModelParams::kappa},
    {"eta", &ModelParams::eta},
    {"zeta", &ModelParams::zeta},
    {"mu0", &ModelParams::mu0},
    {"sigma", &ModelParams::sigma},
    {"eta_p", &ModelParams::eta_p},
    {"lambda_p", &ModelParams::lambda_p},
    {"tau", &ModelParams::tau},
    {"chi0", &ModelParams::chi0},
}};

constexpr std::array<std::string_view, 11> kKeys{
    "mode", "example", "k", "dt", "T", "sweeps", "strict_energy",
    "out", "solver_tol", "solver_method", "solver_max_iter"};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string normalize_key(std::string_view key) {
  std::string k = trim(key);
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = s.find(',', start);
    const std::string item =
        trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (!item.empty()) out.push_back(item);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() ||
      !std::isfinite(v))
    throw ConfigError(key, "not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& key, std::string_view text) {
  const std::string s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError(key, "not an integer: '" + s + "'");
  return v;
}

bool parse_bool(const std::string& key, std::string_view text) {
  std::string s = trim(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key, "not a boolean: '" + s + "'");
}

std::string format_exact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_scalar_text(const std::string& key, const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_exact(v.get<double>());
  throw ConfigError(key, "unsupported JSON value");
}

ConfigPairs parse_json_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<file>", "JSON config must be an object");
  ConfigPairs out;
  for (const auto& [k, v] : doc.items()) {
    const std::string key = normalize_key(k);
    if (v.is_object() && key == "params") {
      for (const auto& [pk, pv] : v.items())
        out[normalize_key(pk)] = json_scalar_text(pk, pv);
      continue;
    }
    if (v.is_array()) {
      std::string joined;
      for (const auto& item : v) {
        if (!joined.empty()) joined += ",";
        joined += json_scalar_text(key, item);
      }
      out[key] = joined;
    } else {
      out[key] = json_scalar_text(key, v);
    }
  }
  return out;
}

ConfigPairs parse_flat_config(std::string_view text) {
  ConfigPairs out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("<line " + std::to_string(lineno) + ">",
                        "expected key = value");
    out[normalize_key(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

bool is_known_key(const std::string& key) {
  for (auto k : kKeys)
    if (k == key) return true;
  for (const auto& p : kParamKeys)
    if (p.name == key) return true;
  return false;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join_strings(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i];
  }
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::string dt_tag(double dt) {
  std::string s = format_number(dt);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

json error_json(const ErrorRecord& e) {
  json j = json::object();
  for (int i = 0; i < kErrorColumns; ++i)
    j[std::string(column_name(i))] = e[static_cast<std::size_t>(i)];
  return j;
}

}  // namespace

std::string_view to_string(Mode m) {
  for (const auto& [mode, name] : kModes)
    if (mode == m) return name;
  return "?";
}

Mode mode_from_string(std::string_view s) {
  for (const auto& [mode, name] : kModes)
    if (name == s) return mode;
  throw ConfigError("mode", "unknown mode '" + std::string(s) + "'");
}

ConfigPairs parse_config_text(std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_json_config(t);
  return parse_flat_config(text);
}

ConfigPairs read_config_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

double resolve_dt(std::string_view rule, int K) {
  const std::string r = trim(rule);
  if (r == "1/K" || r == "1/k") {
    if (K < 1) throw ConfigError("k", "mesh subdivisions must be >= 1");
    return 1.0 / K;
  }
  const std::size_t slash = r.find('/');
  double v = 0.0;
  if (slash != std::string::npos) {
    const double num = parse_double("dt", r.substr(0, slash));
    const double den = parse_double("dt", r.substr(slash + 1));
    if (den == 0.0) throw ConfigError("dt", "zero denominator in '" + r + "'");
    v = num / den;
  } else {
    v = parse_double("dt", r);
  }
  if (!(v > 0.0)) throw ConfigError("dt", "time step must be positive");
  return v;
}

ExperimentSpec resolve_config(const ConfigPairs& pairs) {
  for (const auto& [key, value] : pairs)
    if (!is_known_key(key)) throw ConfigError(key, "unknown key");
  const auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = pairs.find(key);
    if (it == pairs.end()) return std::nullopt;
    return it->second;
  };

  ExperimentSpec s;
  if (auto v = get("mode")) s.mode = mode_from_string(trim(*v));
  const bool energy = s.mode == Mode::Energy;

  s.example = energy ? 3 : 1;
  if (auto v = get("example")) s.example = parse_int("example", *v);
  if (s.example < 1 || s.example > 3)
    throw ConfigError("example", "unknown example id " + std::to_string(s.example));
  if (s.mode == Mode::Converge && s.example == 3)
    throw ConfigError("example", "example 3 has no exact solution to converge to");

  if (energy) s.k = {16};
  else if (s.mode == Mode::Run) s.k = {8};
  if (auto v = get("k")) {
    s.k.clear();
    for (const auto& item : split_list(*v)) s.k.push_back(parse_int("k", item));
  }
  if (s.k.empty()) throw ConfigError("k", "mesh list is empty");
  for (std::size_t i = 0; i < s.k.size(); ++i) {
    if (s.k[i] < 1) throw ConfigError("k", "mesh subdivisions must be >= 1");
    if (i > 0 && s.k[i] <= s.k[i - 1])
      throw ConfigError("k", "mesh list must be strictly ascending");
  }
  if (s.mode == Mode::Run && s.k.size() != 1)
    throw ConfigError("k", "run mode takes a single mesh");

  if (energy) s.dt = {"1/16", "1/32", "1/64"};
  if (auto v = get("dt")) s.dt = split_list(*v);
  if (s.dt.empty()) throw ConfigError("dt", "time-step list is empty");
  if (!energy && s.dt.size() != 1)
    throw ConfigError("dt", "only energy mode takes several time steps");

  s.T = s.example == 2 ? 2.0 : 1.0;
  if (auto v = get("T")) s.T = parse_double("T", *v);
  if (!(s.T > 0.0)) throw ConfigError("T", "final time must be positive");

  if (auto v = get("sweeps")) s.sweeps = parse_int("sweeps", *v);
  if (s.sweeps < 1) throw ConfigError("sweeps", "at least one sweep required");
  if (auto v = get("strict_energy")) s.strict = parse_bool("strict_energy", *v);
  if (auto v = get("out")) s.out = trim(*v);
  if (s.out.empty()) throw ConfigError("out", "output directory is empty");

  if (auto v = get("solver_tol")) s.solver.tol = parse_double("solver_tol", *v);
  if (!(s.solver.tol > 0.0)) throw ConfigError("solver_tol", "must be positive");
  if (auto v = get("solver_method")) {
    const std::string m = trim(*v);
    if (m == "direct") s.solver.method = SolverOptions::Method::Direct;
    else if (m == "iterative") s.solver.method = SolverOptions::Method::Iterative;
    else throw ConfigError("solver_method", "expected direct or iterative");
  }
  if (auto v = get("solver_max_iter"))
    s.solver.max_iter = parse_int("solver_max_iter", *v);
  if (s.solver.max_iter < 1) throw ConfigError("solver_max_iter", "must be >= 1");

  for (const auto& p : kParamKeys) {
    const std::string key(p.name);
    if (auto v = get(key.c_str())) s.params.*p.field = parse_double(key, *v);
    if (!(s.params.*p.field > 0.0)) throw ConfigError(key, "must be positive");
  }

  for (const auto& rule : s.dt)
    for (int K : s.k) {
      const double dt = resolve_dt(rule, K);
      const double n = s.T / dt;
      if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n) || std::round(n) < 1)
        throw ConfigError("dt", "T not an integer multiple of dt (" + rule +
                                    " at K=" + std::to_string(K) + ")");
    }
  return s;
}

ExperimentSpec parse_config(std::string_view text) {
  return resolve_config(parse_config_text(text));
}

std::string emit_config(const ExperimentSpec& s) {
  std::ostringstream o;
  o << "mode = " << to_string(s.mode) << "\n";
  o << "example = " << s.example << "\n";
  o << "k = " << join_ints(s.k) << "\n";
  o << "dt = " << join_strings(s.dt) << "\n";
  o << "T = " << format_exact(s.T) << "\n";
  o << "sweeps = " << s.sweeps << "\n";
  o << "strict_energy = " << (s.strict ? "true" : "false") << "\n";
  o << "out = " << s.out << "\n";
  o << "solver_tol = " << format_exact(s.solver.tol) << "\n";
  o << "solver_method = "
    << (s.solver.method == SolverOptions::Method::Direct ? "direct" : "iterative")
    << "\n";
  o << "solver_max_iter = " << s.solver.max_iter << "\n";
  for (const auto& p : kParamKeys)
    o << p.name << " = " << format_exact(s.params.*p.field) << "\n";
  return o.str();
}

std::string format_number(double x) {
  char buf[32];
  if (x != 0.0 && std::abs(x) < 1e-3)
    std::snprintf(buf, sizeof buf, "%.5e", x);
  else
    std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

RunConfig run_config(const ExperimentSpec& spec, int K, double dt) {
  RunConfig c;
  c.params = spec.params;
  c.K = K;
  c.dt = dt;
  c.T = spec.T;
  c.sweeps = spec.sweeps;
  c.strict = spec.strict;
  c.example = spec.example;
  c.solver = spec.solver;
  return c;
}

ConvergenceTable convergence_study(const ExperimentSpec& spec) {
  const Manufactured exact(spec.example, spec.params);
  ConvergenceTable t;
  for (int K : spec.k) {
    const RunConfig c = run_config(spec, K, resolve_dt(spec.dt.front(), K));
    const Discretization disc(K, c.discretization);
    const State s = run(c, disc);
    t.k.push_back(K);
    t.h.push_back(1.0 / K);
    t.errors.push_back(errors(s, disc, exact, s.t));
  }
  if (t.k.size() >= 2) {
    for (int i = 0; i < kErrorColumns; ++i) {
      std::vector<double> col;
      for (const auto& e : t.errors) col.push_back(e[static_cast<std::size_t>(i)]);
      t.order_ls[static_cast<std::size_t>(i)] = convergence_order(t.h, col);
      t.order_last[static_cast<std::size_t>(i)] = last_pair_order(t.h, col);
    }
  }
  return t;
}

std::string convergence_csv(const ConvergenceTable& t) {
  std::ostringstream o;
  o << "K,h";
  for (int i = 0; i < kErrorColumns; ++i) o << "," << column_name(i);
  o << "\n";
  for (std::size_t r = 0; r < t.k.size(); ++r) {
    o << t.k[r] << "," << format_number(t.h[r]);
    for (double e : t.errors[r]) o << "," << format_number(e);
    o << "\n";
  }
  if (t.k.size() >= 2) {
    o << "order_ls,";
    for (double v : t.order_ls) o << "," << format_number(v);
    o << "\norder_last,";
    for (double v : t.order_last) o << "," << format_number(v);
    o << "\n";
  }
  return o.str();
}

std::string convergence_json(const ConvergenceTable& t, const ExperimentSpec& s) {
  json j;
  j["example"] = s.example;
  j["T"] = s.T;
  j["dt"] = s.dt.front();
  j["rows"] = json::array();
  for (std::size_t r = 0; r < t.k.size(); ++r) {
    json row;
    row["K"] = t.k[r];
    row["h"] = t.h[r];
    row["errors"] = error_json(t.errors[r]);
    j["rows"].push_back(row);
  }
  if (t.k.size() >= 2) {
    j["order_ls"] = error_json(t.order_ls);
    j["order_last"] = error_json(t.order_last);
  }
  return j.dump(2) + "\n";
}

std::vector<EnergyRecord> energy_series(const ExperimentSpec& spec, int K,
                                        double dt) {
  const RunConfig c = run_config(spec, K, dt);
  const Discretization disc(K, c.discretization);
  std::vector<EnergyRecord> out;
  run(c, disc, [&](const State& s, const StepInfo&) {
    out.push_back(energy_record(s, disc, spec.params));
  });
  return out;
}

std::string energy_csv(const std::vector<EnergyRecord>& series) {
  std::ostringstream o;
  o << "n,t,E,F\n";
  for (const auto& r : series)
    o << r.n << "," << format_number(r.t) << "," << format_number(r.E()) << ","
      << format_number(r.F()) << "\n";
  return o.str();
}

int run_experiment(const ExperimentSpec& spec) {
  const std::filesystem::path out(spec.out);
  const std::string tag = "ex" + std::to_string(spec.example);
  try {
    switch (spec.mode) {
      case Mode::Converge: {
        const ConvergenceTable t = convergence_study(spec);
        write_file(out / ("converge_" + tag + ".csv"), convergence_csv(t));
        write_file(out / ("converge_" + tag + ".json"), convergence_json(t, spec));
        std::cout << convergence_csv(t);
        break;
      }
      case Mode::Energy: {
        for (int K : spec.k)
          for (const auto& rule : spec.dt) {
            const double dt = resolve_dt(rule, K);
            const auto series = energy_series(spec, K, dt);
            const std::string name = "energy_" + tag + "_K" + std::to_string(K) +
                                     "_dt" + dt_tag(dt) + ".csv";
            write_file(out / name, energy_csv(series));
            std::cout << name << ": E0 = " << format_number(series.front().E())
                      << ", E_N = " << format_number(series.back().E()) << "\n";
          }
        break;
      }
      case Mode::Run: {
        const int K = spec.k.front();
        const RunConfig c = run_config(spec, K, resolve_dt(spec.dt.front(), K));
        const Discretization disc(K, c.discretization);
        int total_sweeps = 0;
        const State s = run(c, disc, [&](const State&, const StepInfo& info) {
          total_sweeps += info.sweeps;
        });
        const Stepper stepper(disc, c.params, c.dt,
                              example_sources(c.example, c.params), c.solver);
        const auto res = stepper.residuals(s);
        const EnergyRecord e = energy_record(s, disc, c.params);
        json j;
        j["example"] = spec.example;
        j["K"] = K;
        j["dt"] = c.dt;
        j["T"] = s.t;
        j["steps"] = s.step;
        j["sweeps"] = total_sweeps;
        j["energy"] = e.E();
        j["dissipation"] = e.F();
        j["residuals"] = {{"incompressibility", res.incompressibility},
                          {"magnetostatic", res.magnetostatic},
                          {"k_consistency", res.k_consistency}};
        const Manufactured mf(spec.example, spec.params);
        if (mf.has_exact_solution())
          j["errors"] = error_json(errors(s, disc, mf, s.t));
        const std::string text = j.dump(2) + "\n";
        write_file(out / ("run_" + tag + "_K" + std::to_string(K) + ".json"), text);
        std::cout << text;
        break;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Ferrohydrodynamics finite element solver"};
  app.require_subcommand(1);
  std::map<std::string, std::string> flags;
  std::string config_path;

  for (Mode m : {Mode::Converge, Mode::Energy, Mode::Run}) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(m)));
    sub->add_option("--config", config_path, "key=value or JSON config file");
    const auto opt = [&](const char* flag, const char* key, const char* help) {
      sub->add_option_function<std::string>(
          flag, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };
    opt("--example", "example", "manufactured example (1, 2, 3)");
    opt("--k", "k", "mesh subdivisions, comma separated");
    opt("--dt", "dt", "time step rule(s): 1/K, a number or a fraction");
    opt("--T", "T", "final time");
    opt("--sweeps", "sweeps", "quasi-Newton sweeps per step");
    opt("--out", "out", "output directory");
    opt("--solver-tol", "solver_tol", "linear solver relative tolerance");
    sub->add_flag_callback(
        "--strict-energy", [&flags] { flags["strict_energy"] = "true"; },
        "iterate every step to the strict tolerance");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  ExperimentSpec spec;
  try {
    ConfigPairs pairs;
    if (!config_path.empty()) pairs = read_config_file(config_path);
    for (const auto& [k, v] : flags) pairs[k] = v;
    pairs["mode"] = app.get_subcommands().front()->get_name();
    spec = resolve_config(pairs);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return run_experiment(spec);
}

}  // namespace fhd
