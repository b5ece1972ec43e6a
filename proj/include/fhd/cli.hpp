#ifndef FHD_CLI_HPP
#define FHD_CLI_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fhd/diagnostics.hpp"
#include "fhd/forms.hpp"
#include "fhd/linsolve.hpp"

namespace fhd {

enum class Mode { Converge, Energy, Run };

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);

/// A fully resolved experiment.
///
/// Time steps are rules: "1/K" ties the step to the mesh, anything else is
/// a fixed number or fraction ("0.03125", "1/64"). Energy mode runs every
/// (K, dt) pair; the other modes expect a single rule.
struct ExperimentSpec {
  Mode mode = Mode::Converge;
  int example = 1;
  std::vector<int> k{4, 8, 16};
  std::vector<std::string> dt{"1/K"};
  double T = 1.0;
  int sweeps = 2;
  bool strict = false;
  ModelParams params;
  SolverOptions solver;
  std::string out = "results";

  bool operator==(const ExperimentSpec&) const = default;
};

/// Raw key/value configuration, before defaults are applied.
using ConfigPairs = std::map<std::string, std::string>;

/// Parses a flat `key = value` file (with `#` comments) or a JSON object.
/// Arrays become comma-separated values.
ConfigPairs parse_config_text(std::string_view text);
ConfigPairs read_config_file(const std::filesystem::path& path);

/// Applies defaults and validates. Unknown keys, unparsable values and an
/// inconsistent T/dt throw ConfigError naming the key.
ExperimentSpec resolve_config(const ConfigPairs& pairs);

/// Convenience: resolve_config(parse_config_text(text)).
ExperimentSpec parse_config(std::string_view text);

/// Fully explicit `key = value` text; parse_config(emit_config(s)) == s.
std::string emit_config(const ExperimentSpec& spec);

/// Time step of `rule` on a K x K x K mesh.
double resolve_dt(std::string_view rule, int K);

/// Number formatting of every CSV: six significant digits, lowercase
/// scientific notation below 1e-3.
std::string format_number(double x);

/// The run configuration of one (K, dt) job of a spec.
RunConfig run_config(const ExperimentSpec& spec, int K, double dt);

struct ConvergenceTable {
  std::vector<int> k;
  std::vector<double> h;
  std::vector<ErrorRecord> errors;
  ErrorRecord order_ls{};
  ErrorRecord order_last{};
};

/// Mesh size used for the order fits: h = 1/K (proportional to the cell
/// diameter sqrt(3)/K).
ConvergenceTable convergence_study(const ExperimentSpec& spec);

std::string convergence_csv(const ConvergenceTable& t);
std::string convergence_json(const ConvergenceTable& t, const ExperimentSpec& s);

/// Energy series (n, t, E, F) of one run.
std::vector<EnergyRecord> energy_series(const ExperimentSpec& spec, int K,
                                        double dt);
std::string energy_csv(const std::vector<EnergyRecord>& series);

/// Runs the experiment, writes its files under spec.out and returns the
/// process exit code. Errors are reported on stderr.
int run_experiment(const ExperimentSpec& spec);

/// Command-line entry point: `fhd <converge|energy|run> [--config FILE]
/// [--example N] [--k 4,8] [--dt RULE[,RULE]] [--T T] [--sweeps M]
/// [--strict-energy] [--out DIR] [--solver-tol TOL]`.
int cli_main(int argc, char** argv);

}  // namespace fhd

#endif  // FHD_CLI_HPP
