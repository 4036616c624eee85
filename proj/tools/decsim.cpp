#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "decoh/coefficients.hpp"
#include "decoh/einselection.hpp"
#include "decoh/scenario.hpp"
#include "decoh/serialize.hpp"
#include "decoh/timescales.hpp"
#include "decoh/wigner.hpp"

namespace {

using namespace decoh;

struct CommonFlags {
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  int snapshot_every = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out-dir", flags.out_dir, "Output directory (overrides the config)");
  cmd->add_option("--seed", flags.seed, "Random seed (overrides the config)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--threads", flags.threads, "Deterministic thread count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--snapshot-every", flags.snapshot_every, "Snapshot cadence in steps")
      ->check(CLI::PositiveNumber);
}

RunOverrides to_overrides(const CommonFlags& flags) {
  RunOverrides ov;
  ov.out_dir = flags.out_dir;
  ov.seed = flags.seed;
  ov.seed_set = flags.seed_set;
  ov.snapshot_every = flags.snapshot_every;
  ov.threads = flags.threads;
  return ov;
}

std::filesystem::path resolve_out_dir(const ScenarioConfig& cfg, const CommonFlags& flags) {
  return flags.out_dir.empty() ? cfg.output.directory : flags.out_dir;
}

std::vector<std::string> stamp_with_seed(const ScenarioConfig& cfg, const CommonFlags& flags) {
  auto stamp = cfg.stamp();
  stamp.push_back("seed=" + std::to_string(flags.seed_set ? flags.seed : cfg.seed));
  return stamp;
}

int cmd_run(const std::string& config_path, const CommonFlags& flags) {
  run_scenario(ScenarioConfig::parse_file(config_path), to_overrides(flags));
  return 0;
}

int cmd_coeffs(const std::string& config_path, const CommonFlags& flags) {
  const ScenarioConfig cfg = ScenarioConfig::parse_file(config_path);
  const CouplingSpectrum spectrum = cfg.make_spectrum();
  const DecoherenceTensor g = decoherence_coeffs(spectrum);
  const DissipationTensor gamma = dissipation_coeffs(spectrum);
  const auto [theta, rotated] = canonical_rotation(g, 1.0, 1.0);
  const char* cls =
      g.classification == GClassification::NonDegenerate ? "nondegenerate" : "degenerate";

  const auto dir = resolve_out_dir(cfg, flags);
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / "coeffs.csv");
  for (const auto& c : stamp_with_seed(cfg, flags)) os << "# " << c << "\n";
  os << "quantity,value\n";
  os << "g_xx," << format_double(g.g(0, 0)) << "\n";
  os << "g_xp," << format_double(g.g(0, 1)) << "\n";
  os << "g_pp," << format_double(g.g(1, 1)) << "\n";
  os << "gamma_xx," << format_double(gamma.gamma(0, 0)) << "\n";
  os << "gamma_xp," << format_double(gamma.gamma(0, 1)) << "\n";
  os << "gamma_pp," << format_double(gamma.gamma(1, 1)) << "\n";
  os << "theta," << format_double(theta) << "\n";
  os << "classification," << cls << "\n";
  std::cout << "classification " << cls << "\n";
  return 0;
}

int cmd_timescales(const TimescaleParams& params) {
  const Timescales ts = timescales(params);
  const bool ordered = ts.t_dec < ts.t_mix && ts.t_mix < ts.t_wp;
  std::cout << "t_dec," << format_double(ts.t_dec) << "\n";
  std::cout << "t_mix," << format_double(ts.t_mix) << "\n";
  std::cout << "t_wp," << format_double(ts.t_wp) << "\n";
  std::cout << "ordered," << (ordered ? "true" : "false") << "\n";
  return 0;
}

int cmd_nogo(const std::string& config_path, const CommonFlags& flags) {
  const ScenarioConfig cfg = ScenarioConfig::parse_file(config_path);
  const DecoherenceTensor g = decoherence_coeffs(cfg.make_spectrum());
  const auto dir = resolve_out_dir(cfg, flags);
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / "report_nogo.txt");
  for (const auto& c : stamp_with_seed(cfg, flags)) os << "# " << c << "\n";
  if (g.classification != GClassification::NonDegenerate) {
    os << "INAPPLICABLE nogo degenerate tensor\n";
    std::cout << "inapplicable\n";
    return 0;
  }
  const auto report =
      nogo_check(g, cfg.make_grid(), 64, 256, flags.seed_set ? flags.seed : cfg.seed);
  os << report.to_text();
  std::cout << (report.passed ? "PASS" : "FAIL") << " nogo_floor " << report.floor << "\n";
  return 0;
}

int cmd_kernel(const std::string& config_path, const CommonFlags& flags) {
  const ScenarioConfig cfg = ScenarioConfig::parse_file(config_path);
  const GasSpec gas = cfg.make_gas();
  std::vector<double> xi;
  for (int i = 0; i <= cfg.gas.xi_count; ++i)
    xi.push_back(cfg.gas.xi_max * i / cfg.gas.xi_count);
  const KernelTable table = localization_kernel(gas, xi);
  const double gpp = effective_gpp(gas, cfg.system.hbar);

  const auto dir = resolve_out_dir(cfg, flags);
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / "kernel.csv");
  for (const auto& c : stamp_with_seed(cfg, flags)) os << "# " << c << "\n";
  os << "# effective_gpp=" << format_double(gpp) << "\n";
  os << "xi,F\n";
  for (size_t i = 0; i < table.xi.size(); ++i)
    os << format_double(table.xi[i]) << "," << format_double(table.f[i]) << "\n";
  std::cout << "effective_gpp " << format_double(gpp) << "\n";
  return 0;
}

int check(bool ok, const char* name, int& failures) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
  if (!ok) ++failures;
  return failures;
}

/// Quick structural self-checks; the full acceptance suite lives in the tests.
int cmd_selftest() {
  int failures = 0;

  const auto grid = PhaseSpaceGrid::conjugate(-8.0, 8.0, 32, 1.0);
  Vector psi(grid.n_x);
  for (int i = 0; i < grid.n_x; ++i) psi(i) = std::exp(-0.5 * grid.x(i) * grid.x(i));
  psi.normalize();
  const DensityOperator rho{Operator(psi * psi.adjoint(), SpaceTag::Collective)};
  const auto w = wigner_transform(rho, grid);
  check(std::abs(w.integral() - 1.0) < 1e-10, "wigner_normalization", failures);
  const auto back = inverse_wigner(w);
  check((back.mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-10, "wigner_round_trip", failures);

  std::vector<std::pair<Complex, double>> couplings = {{0.2, 0.9}, {0.1, 1.3}};
  const auto spectrum = oscillator_bath(couplings, 2.0, 2, BathForm::Ladder, 1.0, 1.0);
  const auto g = decoherence_coeffs(spectrum);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g.g);
  check(es.eigenvalues().minCoeff() > -1e-12, "coefficients_positive", failures);

  TimescaleParams tp;
  const auto ts = timescales(tp);
  check(ts.t_dec > 0 && ts.t_mix > 0 && ts.t_wp > 0, "timescales_positive", failures);

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoherence scenario simulator"};
  app.require_subcommand(1);

  std::string config_path;
  CommonFlags flags;
  TimescaleParams tparams;

  auto* run = app.add_subcommand("run", "Execute a scenario config");
  run->add_option("config", config_path, "Scenario config file")->required();
  add_common(run, flags);

  auto* coeffs = app.add_subcommand("coeffs", "Coefficient report for the configured bath");
  coeffs->add_option("config", config_path, "Scenario config file")->required();
  add_common(coeffs, flags);

  auto* tsc = app.add_subcommand("timescales", "Evaluate the characteristic time formulas");
  tsc->add_option("--m", tparams.mass, "Collective mass");
  tsc->add_option("--T", tparams.temperature, "Temperature");
  tsc->add_option("--gamma", tparams.gamma_pp, "Friction coefficient");
  tsc->add_option("--omega", tparams.omega, "Oscillator frequency");
  tsc->add_option("--dx", tparams.delta_x, "Packet separation");
  tsc->add_option("--hbar", tparams.hbar, "hbar");

  auto* nogo = app.add_subcommand("nogo", "No-go theorem sampling check");
  nogo->add_option("config", config_path, "Scenario config file")->required();
  add_common(nogo, flags);

  auto* kernel = app.add_subcommand("kernel", "Collisional localization kernel");
  kernel->add_option("config", config_path, "Scenario config file")->required();
  add_common(kernel, flags);

  app.add_subcommand("selftest", "Quick structural self-checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, flags);
    if (coeffs->parsed()) return cmd_coeffs(config_path, flags);
    if (tsc->parsed()) return cmd_timescales(tparams);
    if (nogo->parsed()) return cmd_nogo(config_path, flags);
    if (kernel->parsed()) return cmd_kernel(config_path, flags);
    return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "decsim: " << e.what() << "\n";
    return 1;
  }
}
