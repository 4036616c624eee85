#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "decoh/coefficients.hpp"
#include "decoh/evolution_spec.hpp"
#include "decoh/grid.hpp"
#include "decoh/scattering.hpp"
#include "decoh/spectrum.hpp"

namespace decoh {

enum class HcModel { Harmonic, Tabulated };
enum class BathModel { None, Oscillator, File };
enum class InitialType { Packet, Cat, MixedCell };
enum class GasModel { HardSphere, Tabulated };

struct SystemSection {
  double hbar = 1.0;
  HcModel h_c = HcModel::Harmonic;
  double mass = 1.0;
  double omega = 1.0;
  std::string h_c_file;
};

struct BathSection {
  BathModel model = BathModel::None;
  BathForm form = BathForm::PositionOnly;
  double temperature = 1.0;
  int truncation = 2;
  std::vector<Complex> lambdas;
  std::vector<double> omegas;
  double epsilon = 0.0;  // 0 keeps the spectrum default
  std::string file;
};

struct GridSection {
  double x_min = -10.0;
  double x_max = 10.0;
  int n_x = 128;
};

struct InitialSection {
  InitialType type = InitialType::Packet;
  double x0 = 0.0;
  double p0 = 0.0;
  double width = 1.0;
  double separation = 4.0;      // cat branch separation in x
  double cell_half_x = 4.0;     // mixed cell half-widths
  double cell_half_p = 4.0;
};

struct AnalysisSection {
  bool nogo = false;
  bool pointer = false;
  bool sieve = false;
};

struct GasSection {
  bool present = false;
  GasModel model = GasModel::HardSphere;
  double radius = 1.0;
  double k0 = 0.0;          // monochromatic flux momentum
  double temperature = 0.0; // alternative to k0: thermal 8-point flux
  double flux = 1.0;
  double particle_mass = 1.0;
  double cos_theta_max = 1.0;
  std::string file;         // tabulated dsigma/dOmega rows `cos_theta,value`
  double xi_max = 10.0;
  int xi_count = 100;
};

struct OutputSection {
  std::string directory = "out";
  int snapshot_every = 10;
};

struct ScenarioConfig {
  SystemSection system;
  BathSection bath;
  GridSection grid;
  EvolutionSpec evolution;
  InitialSection initial;
  AnalysisSection analysis;
  GasSection gas;
  OutputSection output;
  std::uint64_t seed = 0;

  std::string source_name;
  std::uint64_t config_hash = 0;

  /// Strict parse: unknown sections or keys fail with the line number.
  static ScenarioConfig parse(std::istream& is, const std::string& name);
  static ScenarioConfig parse_file(const std::string& path);

  PhaseSpaceGrid make_grid() const;
  CouplingSpectrum make_spectrum() const;  // throws if bath model is None
  GasSpec make_gas() const;                // throws if no [gas] section
  std::vector<std::string> stamp() const;  // header comments: version + hash
};

struct RunOverrides {
  std::string out_dir;      // empty keeps the config value
  std::uint64_t seed = 0;
  bool seed_set = false;
  int snapshot_every = 0;   // 0 keeps the config value
  int threads = 1;
};

/// Executes the scenario: evolves the configured initial state, writes
/// trajectory.csv, coeffs.csv when a bath is present, Wigner snapshots for
/// phase-space modes, and any requested analysis reports.
void run_scenario(const ScenarioConfig& config, const RunOverrides& overrides);

}  // namespace decoh
