#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fhd/cli.hpp"
#include "fhd/error.hpp"

using namespace fhd;

namespace {

std::string config_error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("fhd_cli_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Cli, DefaultConvergenceStudy) {
  const ExperimentSpec s = parse_config("mode = converge\nexample = 1\n");
  EXPECT_EQ(s.mode, Mode::Converge);
  EXPECT_EQ(s.example, 1);
  EXPECT_EQ(s.k, (std::vector<int>{4, 8, 16}));
  EXPECT_EQ(s.dt, (std::vector<std::string>{"1/K"}));
  EXPECT_EQ(s.T, 1.0);
  EXPECT_EQ(s.sweeps, 2);
  EXPECT_EQ(s.params, ModelParams{});
  EXPECT_EQ(s.solver.tol, 1e-10);
  EXPECT_EQ(parse_config(""), s);
}

TEST(Cli, ModeDefaults) {
  const ExperimentSpec e = parse_config("mode = energy");
  EXPECT_EQ(e.example, 3);
  EXPECT_EQ(e.k, (std::vector<int>{16}));
  EXPECT_EQ(e.dt, (std::vector<std::string>{"1/16", "1/32", "1/64"}));
  const ExperimentSpec r = parse_config("mode = run\nexample = 2");
  EXPECT_EQ(r.k, (std::vector<int>{8}));
  EXPECT_EQ(r.T, 2.0);
}

TEST(Cli, DtRules) {
  EXPECT_DOUBLE_EQ(resolve_dt("1/K", 8), 0.125);
  EXPECT_DOUBLE_EQ(resolve_dt("1/64", 8), 1.0 / 64);
  EXPECT_DOUBLE_EQ(resolve_dt("0.25", 8), 0.25);
  EXPECT_THROW(resolve_dt("abc", 8), ConfigError);
  EXPECT_THROW(resolve_dt("-1", 8), ConfigError);
}

TEST(Cli, InconsistentFinalTimeNamesDt) {
  EXPECT_EQ(config_error_key("T = 1\ndt = 0.3\nk = 4"), "dt");
}

TEST(Cli, ErrorsNameTheKey) {
  EXPECT_EQ(config_error_key("bogus = 1"), "bogus");
  EXPECT_EQ(config_error_key("sweeps = two"), "sweeps");
  EXPECT_EQ(config_error_key("sweeps = 0"), "sweeps");
  EXPECT_EQ(config_error_key("k = 8,4"), "k");
  EXPECT_EQ(config_error_key("k ="), "k");
  EXPECT_EQ(config_error_key("mode = plot"), "mode");
  EXPECT_EQ(config_error_key("example = 3"), "example");
  EXPECT_EQ(config_error_key("tau = 0"), "tau");
  EXPECT_EQ(config_error_key("solver_tol = -1"), "solver_tol");
  EXPECT_EQ(config_error_key("mode = converge\ndt = 1/K,1/16"), "dt");
  EXPECT_EQ(config_error_key("strict_energy = maybe"), "strict_energy");
}

TEST(Cli, JsonAndFlatConfigsAgree) {
  const ExperimentSpec flat = parse_config(
      "# comment\nmode = energy\nk = 8, 16\ndt = 1/16,1/32\nT = 0.25\n"
      "strict-energy = true\nmu0 = 2\n");
  const ExperimentSpec json = parse_config(
      R"({"mode": "energy", "k": [8, 16], "dt": ["1/16", "1/32"], "T": 0.25,
          "strict_energy": true, "params": {"mu0": 2}})");
  EXPECT_EQ(flat, json);
  EXPECT_TRUE(flat.strict);
  EXPECT_EQ(flat.params.mu0, 2.0);
  EXPECT_EQ(config_error_key("{\"k\": "), "<file>");
}

TEST(Cli, EmitParseRoundTrip) {
  ExperimentSpec s = parse_config("mode = energy");
  s.T = 0.25;
  s.params.chi0 = 1.0 / 3.0;
  s.solver.tol = 3e-11;
  s.out = "out dir";
  s.strict = true;
  EXPECT_EQ(parse_config(emit_config(s)), s);
  const ExperimentSpec d = parse_config("");
  EXPECT_EQ(parse_config(emit_config(d)), d);
}

TEST(Cli, NumberFormatting) {
  EXPECT_EQ(format_number(0.0554), "0.0554");
  EXPECT_EQ(format_number(0.123456789), "0.123457");
  EXPECT_EQ(format_number(1.9942), "1.9942");
  EXPECT_EQ(format_number(0.0009), "9.00000e-04");
  EXPECT_EQ(format_number(-1.5e-7), "-1.50000e-07");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(16), "16");
}

TEST(Cli, ConvergenceCsvStructure) {
  ExperimentSpec s = parse_config("k = 1,2\nT = 1");
  const ConvergenceTable t = convergence_study(s);
  const std::string csv = convergence_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0],
            "K,h,u_L2,u_H1,p_L2,m_L2,divm_L2,H_L2,divH_L2,z_L2,k_L2,omega_L2,"
            "omega_H1,phi_L2");
  EXPECT_EQ(lines[1].rfind("1,1,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("2,0.5,", 0), 0u);
  EXPECT_EQ(lines[3].rfind("order_ls,,", 0), 0u);
  EXPECT_EQ(lines[4].rfind("order_last,,", 0), 0u);
  for (const auto& l : lines) EXPECT_EQ(std::count(l.begin(), l.end(), ','), 13) << l;
  EXPECT_EQ(convergence_csv(convergence_study(s)), csv);
}

TEST(Cli, EnergyModeWritesOneSeriesPerStep) {
  const auto dir = scratch_dir("energy");
  ExperimentSpec s = parse_config("mode = energy\nk = 2\ndt = 1/4,1/8\nT = 0.25");
  s.out = dir.string();
  ASSERT_EQ(run_experiment(s), 0);
  const std::string a = read_file(dir / "energy_ex3_K2_dt0p25.csv");
  const std::string b = read_file(dir / "energy_ex3_K2_dt0p125.csv");
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 2);
  EXPECT_EQ(std::count(b.begin(), b.end(), '\n'), 1 + 3);
  EXPECT_EQ(a.rfind("n,t,E,F\n0,0,", 0), 0u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, RunModeWritesDiagnosticsJson) {
  const auto dir = scratch_dir("run");
  ExperimentSpec s = parse_config("mode = run\nexample = 2\nk = 2\nT = 1");
  s.out = dir.string();
  ASSERT_EQ(run_experiment(s), 0);
  const std::string j = read_file(dir / "run_ex2_K2.json");
  for (const char* key : {"\"errors\"", "\"u_L2\"", "\"energy\"", "\"residuals\"", "\"steps\": 2"})
    EXPECT_NE(j.find(key), std::string::npos) << key;
  std::filesystem::remove_all(dir);
}

TEST(Cli, CommandLineFlagsOverrideFile) {
  const auto dir = scratch_dir("flags");
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "cfg.txt");
    f << "k = 4\nT = 2\n";
  }
  const std::string cfg = (dir / "cfg.txt").string();
  const std::string out = (dir / "out").string();
  const char* argv[] = {"fhd", "run", "--config", cfg.c_str(), "--k", "1",
                        "--T", "1", "--out", out.c_str()};
  EXPECT_EQ(cli_main(10, const_cast<char**>(argv)), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "run_ex1_K1.json"));
  const char* bad[] = {"fhd", "run", "--k", "1", "--dt", "0.3"};
  EXPECT_EQ(cli_main(6, const_cast<char**>(bad)), 2);
  std::filesystem::remove_all(dir);
}
