#include "decoh/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "decoh/einselection.hpp"
#include "decoh/master.hpp"
#include "decoh/phase_space_evolution.hpp"
#include "decoh/poly.hpp"
#include "decoh/quasi_projector.hpp"
#include "decoh/semiclassical.hpp"
#include "decoh/serialize.hpp"
#include "decoh/wigner.hpp"

namespace decoh {

namespace {

constexpr const char* kVersion = "decsim 0.1.0";

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
  throw std::invalid_argument(name + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

struct KeyValue {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, KeyValue>;

double to_double(const std::string& name, const KeyValue& kv) {
  try {
    size_t pos = 0;
    const double v = std::stod(kv.value, &pos);
    if (pos != kv.value.size()) throw std::invalid_argument(kv.value);
    return v;
  } catch (const std::exception&) {
    fail(name, kv.line, "expected a number, got '" + kv.value + "'");
  }
}

int to_int(const std::string& name, const KeyValue& kv) {
  const double v = to_double(name, kv);
  if (v != std::floor(v)) fail(name, kv.line, "expected an integer, got '" + kv.value + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& name, const KeyValue& kv) {
  if (kv.value == "true") return true;
  if (kv.value == "false") return false;
  fail(name, kv.line, "expected true or false, got '" + kv.value + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

/// Applies `handler(key, kv)` for each entry; handler returns false on
/// unknown keys.
void consume(const std::string& name, const std::string& section_label, const Section& section,
             const std::function<bool(const std::string&, const KeyValue&)>& handler) {
  for (const auto& [key, kv] : section) {
    if (!handler(key, kv))
      fail(name, kv.line, "unknown key '" + key + "' in [" + section_label + "]");
  }
}

EvolutionMode mode_from_string(const std::string& name, const KeyValue& kv) {
  if (kv.value == "exact") return EvolutionMode::ExactOracle;
  if (kv.value == "retarded") return EvolutionMode::RetardedMaster;
  if (kv.value == "markov") return EvolutionMode::MarkovMaster;
  if (kv.value == "closed") return EvolutionMode::PureDecoherenceClosed;
  if (kv.value == "heat_kernel") return EvolutionMode::HeatKernel;
  if (kv.value == "finite_difference") return EvolutionMode::FiniteDifference;
  if (kv.value == "semiclassical") return EvolutionMode::Semiclassical;
  fail(name, kv.line, "unknown evolution mode '" + kv.value + "'");
}

Complex parse_complex(const std::string& name, int line, const std::string& tok) {
  const auto parts = split(tok, ':');
  try {
    if (parts.size() == 1) return Complex(std::stod(parts[0]), 0.0);
    if (parts.size() == 2) return Complex(std::stod(parts[0]), std::stod(parts[1]));
  } catch (const std::exception&) {
  }
  fail(name, line, "expected re or re:im, got '" + tok + "'");
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(std::istream& is, const std::string& name) {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
  std::string raw, line, current;
  int lineno = 0;
  Section top;

  while (std::getline(is, line)) {
    ++lineno;
    raw += line;
    raw += "\n";
    const size_t hash_pos = line.find('#');
    std::string body = trim(hash_pos == std::string::npos ? line : line.substr(0, hash_pos));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') fail(name, lineno, "malformed section header '" + body + "'");
      current = trim(body.substr(1, body.size() - 2));
      if (sections.count(current)) fail(name, lineno, "duplicate section [" + current + "]");
      sections[current];
      section_lines[current] = lineno;
      continue;
    }
    const size_t eq = body.find('=');
    if (eq == std::string::npos) fail(name, lineno, "expected key = value, got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) fail(name, lineno, "empty key or value");
    Section& target = current.empty() ? top : sections[current];
    if (target.count(key)) fail(name, lineno, "duplicate key '" + key + "'");
    target[key] = {value, lineno};
  }

  ScenarioConfig cfg;
  cfg.source_name = name;
  cfg.config_hash = fnv1a(raw);

  consume(name, "", top, [&](const std::string& key, const KeyValue& kv) {
    if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_double(name, kv));
      return true;
    }
    return false;
  });

  for (const auto& [label, section] : sections) {
    if (label == "system") {
      consume(name, label, section, [&](const std::string& key, const KeyValue& kv) {
        if (key == "hbar") cfg.system.hbar = to_double(name, kv);
        else if (key == "h_c") {
          if (kv.value == "harmonic") cfg.system.h_c = HcModel::Harmonic;
          else if (kv.value == "tabulated") cfg.system.h_c = HcModel::Tabulated;
          else fail(name, kv.line, "h_c must be harmonic or tabulated");
        } else if (key == "mass") cfg.system.mass = to_double(name, kv);
        else if (key == "omega") cfg.system.omega = to_double(name, kv);
        else if (key == "h_c_file") cfg.system.h_c_file = kv.value;
        else return false;
        return true;
      });
    } else if (label == "bath") {
      consume(name, label, section, [&](const std::string& key, const KeyValue& kv) {
        if (key == "model") {
          if (kv.value == "oscillator") cfg.bath.model = BathModel::Oscillator;
          else if (kv.value == "file") cfg.bath.model = BathModel::File;
          else if (kv.value == "none") cfg.bath.model = BathModel::None;
          else fail(name, kv.line, "bath model must be oscillator, file, or none");
        } else if (key == "form") {
          if (kv.value == "position_only") cfg.bath.form = BathForm::PositionOnly;
          else if (kv.value == "ladder") cfg.bath.form = BathForm::Ladder;
          else fail(name, kv.line, "bath form must be position_only or ladder");
        } else if (key == "temperature") cfg.bath.temperature = to_double(name, kv);
        else if (key == "truncation") cfg.bath.truncation = to_int(name, kv);
        else if (key == "epsilon") cfg.bath.epsilon = to_double(name, kv);
        else if (key == "file") cfg.bath.file = kv.value;
        else if (key == "lambdas") {
          for (const auto& tok : split(kv.value, ','))
            cfg.bath.lambdas.push_back(parse_complex(name, kv.line, tok));
        } else if (key == "omegas") {
          for (const auto& tok : split(kv.value, ','))
            cfg.bath.omegas.push_back(to_double(name, {tok, kv.line}));
        } else return false;
        return true;
      });
    } else if (label == "grid") {
      consume(name, label, section, [&](const std::string& key, const KeyValue& kv) {
        if (key == "x_min") cfg.grid.x_min = to_double(name, kv);
        else if (key == "x_max") cfg.grid.x_max = to_double(name, kv);
        else if (key == "n_x") cfg.grid.n_x = to_int(name, kv);
        else return false;
        return true;
      });
    } else if (label == "evolution") {
      consume(name, label, section, [&](const std::string& key, const KeyValue& kv) {
        if (key == "mode") cfg.evolution.mode = mode_from_string(name, kv);
        else if (key == "t_final") cfg.evolution.t_final = to_double(name, kv);
        else if (key == "dt") cfg.evolution.dt = to_double(name, kv);
        else if (key == "include_flow")
          cfg.evolution.include_hamiltonian_flow = to_bool(name, kv);
        else if (key == "hbar_order") cfg.evolution.hbar_order = to_int(name, kv);
        else return false;
        return true;
      });
    } else if (label == "initial") {
      consume(name, label, section, [&](const std::string& key, const KeyValue& kv) {
        if (key == "type") {
          if (kv.value == "packet") cfg.initial.type = InitialType::Packet;
          else if (kv.value == "cat") cfg.initial.type = InitialType::Cat;
          else if (kv.value == "mixed_cell") cfg.initial.type = InitialType::MixedCell;
          else fail(name, kv.line, "initial type must be packet, cat, or mixed_cell");
        } else if (key == "x0") cfg.initial.x0 = to_double(name, kv);
        else if (key == "p0") cfg.initial.p0 = to_double(name, kv);
        else if (key == "width") cfg.initial.width = to_double(name, kv);
        else if (key == "separation") cfg.initial.separation = to_double(name, kv);
        else if (key == "cell_half_x") cfg.initial.cell_half_x = to_double(name, kv);
        else if (key == "cell_half_p") cfg.initial.cell_half_p = to_double(name, kv);
        else return false;
        return true;
      });
    } else if (label == "analysis") {
      consume(name, label, section, [&](const std::string& key, const KeyValue& kv) {
        if (key != "diagnostics") return false;
        for (const auto& tok : split(kv.value, ',')) {
          if (tok == "nogo") cfg.analysis.nogo = true;
          else if (tok == "pointer") cfg.analysis.pointer = true;
          else if (tok == "sieve") cfg.analysis.sieve = true;
          else if (tok == "none") continue;
          else fail(name, kv.line, "unknown diagnostic '" + tok + "'");
        }
        return true;
      });
    } else if (label == "gas") {
      cfg.gas.present = true;
      consume(name, label, section, [&](const std::string& key, const KeyValue& kv) {
        if (key == "model") {
          if (kv.value == "hard_sphere") cfg.gas.model = GasModel::HardSphere;
          else if (kv.value == "tabulated") cfg.gas.model = GasModel::Tabulated;
          else fail(name, kv.line, "gas model must be hard_sphere or tabulated");
        } else if (key == "radius") cfg.gas.radius = to_double(name, kv);
        else if (key == "k0") cfg.gas.k0 = to_double(name, kv);
        else if (key == "temperature") cfg.gas.temperature = to_double(name, kv);
        else if (key == "flux") cfg.gas.flux = to_double(name, kv);
        else if (key == "particle_mass") cfg.gas.particle_mass = to_double(name, kv);
        else if (key == "cos_theta_max") cfg.gas.cos_theta_max = to_double(name, kv);
        else if (key == "file") cfg.gas.file = kv.value;
        else if (key == "xi_max") cfg.gas.xi_max = to_double(name, kv);
        else if (key == "xi_count") cfg.gas.xi_count = to_int(name, kv);
        else return false;
        return true;
      });
    } else if (label == "output") {
      consume(name, label, section, [&](const std::string& key, const KeyValue& kv) {
        if (key == "directory") cfg.output.directory = kv.value;
        else if (key == "snapshot_every") cfg.output.snapshot_every = to_int(name, kv);
        else return false;
        return true;
      });
    } else {
      fail(name, section_lines[label], "unknown section [" + label + "]");
    }
  }

  if (cfg.bath.model == BathModel::Oscillator &&
      cfg.bath.lambdas.size() != cfg.bath.omegas.size())
    fail(name, 0, "bath lambdas and omegas must have equal length");
  if (cfg.output.snapshot_every < 1) fail(name, 0, "snapshot_every must be >= 1");
  cfg.evolution.validate();
  return cfg;
}

ScenarioConfig ScenarioConfig::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config file not found: " + path);
  return parse(is, path);
}

PhaseSpaceGrid ScenarioConfig::make_grid() const {
  return PhaseSpaceGrid::conjugate(grid.x_min, grid.x_max, grid.n_x, system.hbar);
}

CouplingSpectrum ScenarioConfig::make_spectrum() const {
  if (bath.model == BathModel::None)
    throw std::invalid_argument("scenario has no bath ([bath] model is none)");
  if (bath.model == BathModel::File) {
    std::ifstream is(bath.file);
    if (!is) throw std::invalid_argument("spectrum file not found: " + bath.file);
    CouplingSpectrum s = read_spectrum(is);
    if (bath.epsilon > 0.0) s.regularization_epsilon = bath.epsilon;
    return s;
  }
  std::vector<std::pair<Complex, double>> couplings;
  for (size_t i = 0; i < bath.lambdas.size(); ++i)
    couplings.emplace_back(bath.lambdas[i], bath.omegas[i]);
  CouplingSpectrum s = oscillator_bath(couplings, bath.temperature, bath.truncation, bath.form,
                                       system.hbar, system.mass);
  if (bath.epsilon > 0.0) s.regularization_epsilon = bath.epsilon;
  return s;
}

GasSpec ScenarioConfig::make_gas() const {
  if (!gas.present) throw std::invalid_argument("scenario has no [gas] section");
  GasSpec spec;
  if (gas.model == GasModel::HardSphere) {
    if (gas.k0 > 0.0) {
      spec = GasSpec::hard_sphere(gas.radius, gas.k0, gas.flux);
    } else if (gas.temperature > 0.0) {
      spec = GasSpec::hard_sphere(gas.radius, 1.0, gas.flux);
      spec.flux.clear();
    } else {
      throw std::invalid_argument("[gas]: set k0 or temperature");
    }
  } else {
    std::ifstream is(gas.file);
    if (!is) throw std::invalid_argument("gas cross-section file not found: " + gas.file);
    std::vector<std::pair<double, double>> table;
    std::string line;
    while (std::getline(is, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto cells = split(line, ',');
      if (cells.size() != 2)
        throw std::invalid_argument("gas table rows must be cos_theta,dsigma");
      table.emplace_back(std::stod(cells[0]), std::stod(cells[1]));
    }
    if (table.size() < 2) throw std::invalid_argument("gas table needs at least two rows");
    spec.dsigma = [table](double, double c) {
      if (c <= table.front().first) return table.front().second;
      if (c >= table.back().first) return table.back().second;
      for (size_t i = 1; i < table.size(); ++i)
        if (c <= table[i].first) {
          const double t = (c - table[i - 1].first) / (table[i].first - table[i - 1].first);
          return (1.0 - t) * table[i - 1].second + t * table[i].second;
        }
      return table.back().second;
    };
    if (gas.k0 > 0.0) spec.flux = {{gas.k0, gas.flux}};
  }
  if (gas.temperature > 0.0 && spec.flux.empty()) {
    // 8-point radial quadrature of the Maxwell speed weight k^2 exp(-k^2/2s^2)
    const double s = std::sqrt(gas.particle_mass * gas.temperature);
    const int n = 8;
    double norm = 0.0;
    std::vector<FluxComponent> comps;
    for (int i = 0; i < n; ++i) {
      const double k = s * 4.0 * (i + 0.5) / n;
      const double w = k * k * std::exp(-0.5 * k * k / (s * s));
      comps.push_back({k, w});
      norm += w;
    }
    for (auto& c : comps) c.weight *= gas.flux / norm;
    spec.flux = comps;
  }
  spec.particle_mass = gas.particle_mass;
  spec.temperature = gas.temperature;
  spec.cos_theta_max = gas.cos_theta_max;
  spec.validate();
  return spec;
}

std::vector<std::string> ScenarioConfig::stamp() const {
  std::ostringstream hash;
  hash << std::hex << config_hash;
  return {kVersion, "config=" + hash.str()};
}

namespace {

Vector packet_state(const PhaseSpaceGrid& grid, double x0, double p0, double width) {
  Vector psi(grid.n_x);
  for (int i = 0; i < grid.n_x; ++i) {
    const double dx = grid.x(i) - x0;
    psi(i) = std::polar(std::exp(-0.25 * dx * dx / (width * width)),
                        p0 * grid.x(i) / grid.hbar);
  }
  const double n = psi.norm();
  if (!(n > 0.0)) throw std::invalid_argument("initial packet underflows on this grid");
  psi /= n;
  return psi;
}

DensityOperator initial_state(const ScenarioConfig& cfg, const PhaseSpaceGrid& grid) {
  const InitialSection& init = cfg.initial;
  switch (init.type) {
    case InitialType::Packet: {
      const Vector psi = packet_state(grid, init.x0, init.p0, init.width);
      return DensityOperator(Operator(psi * psi.adjoint(), SpaceTag::Collective));
    }
    case InitialType::Cat: {
      const Vector a = packet_state(grid, init.x0 - 0.5 * init.separation, init.p0, init.width);
      const Vector b = packet_state(grid, init.x0 + 0.5 * init.separation, init.p0, init.width);
      Vector psi = a + b;
      psi /= psi.norm();
      return DensityOperator(Operator(psi * psi.adjoint(), SpaceTag::Collective));
    }
    case InitialType::MixedCell: {
      PhaseCell cell;
      cell.center_x = init.x0;
      cell.center_p = init.p0;
      cell.half_width_x = init.cell_half_x;
      cell.half_width_p = init.cell_half_p;
      Matrix m = quasi_projector(cell, grid).op.mat();
      m /= m.trace();
      return DensityOperator(Operator(m, SpaceTag::Collective));
    }
  }
  throw std::logic_error("unreachable");
}

Operator collective_hamiltonian(const ScenarioConfig& cfg, const PhaseSpaceGrid& grid) {
  if (cfg.system.h_c == HcModel::Tabulated) {
    std::ifstream is(cfg.system.h_c_file);
    if (!is)
      throw std::invalid_argument("collective Hamiltonian file not found: " +
                                  cfg.system.h_c_file);
    Operator h = read_operator(is);
    if (h.dim() != grid.n_x)
      throw std::invalid_argument("tabulated Hamiltonian dimension does not match the grid");
    return h;
  }
  const Matrix x = position_operator(grid).mat();
  const Matrix p = momentum_operator(grid).mat();
  const double m = cfg.system.mass, w = cfg.system.omega;
  return Operator(p * p / (2.0 * m) + 0.5 * m * w * w * x * x, SpaceTag::Collective);
}

struct TrajectoryRow {
  double t, trace_re, purity, offdiag_l2, energy_c;
};

TrajectoryRow metrics(double t, const Matrix& rho, const Matrix& h_c) {
  TrajectoryRow row;
  row.t = t;
  row.trace_re = rho.trace().real();
  row.purity = (rho * rho).trace().real();
  double off = 0.0;
  for (int i = 0; i < rho.rows(); ++i)
    for (int j = 0; j < rho.cols(); ++j)
      if (i != j) off += std::norm(rho(i, j));
  row.offdiag_l2 = std::sqrt(off);
  row.energy_c = (rho * h_c).trace().real();
  return row;
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path.string());
  body(os);
}

}  // namespace

void run_scenario(const ScenarioConfig& config, const RunOverrides& overrides) {
  if (overrides.threads < 1) throw std::invalid_argument("--threads must be >= 1");
  const std::uint64_t seed = overrides.seed_set ? overrides.seed : config.seed;
  const int snapshot_every =
      overrides.snapshot_every > 0 ? overrides.snapshot_every : config.output.snapshot_every;
  const std::string out_dir =
      overrides.out_dir.empty() ? config.output.directory : overrides.out_dir;

  // build everything (including file reads) before any output is created
  const PhaseSpaceGrid grid = config.make_grid();
  const Operator h_c = collective_hamiltonian(config, grid);
  const DensityOperator rho0 = initial_state(config, grid);

  std::optional<CouplingSpectrum> spectrum;
  std::optional<DecoherenceTensor> g;
  std::optional<DissipationTensor> gamma;
  if (config.bath.model != BathModel::None) {
    spectrum = config.make_spectrum();
    g = decoherence_coeffs(*spectrum);
    gamma = dissipation_coeffs(*spectrum);
  }

  const EvolutionSpec& spec = config.evolution;
  const bool master_mode = spec.mode == EvolutionMode::MarkovMaster ||
                           spec.mode == EvolutionMode::RetardedMaster;
  const bool phase_space_mode = spec.mode == EvolutionMode::HeatKernel ||
                                spec.mode == EvolutionMode::FiniteDifference ||
                                spec.mode == EvolutionMode::Semiclassical;
  if (spec.mode == EvolutionMode::ExactOracle)
    throw std::invalid_argument(
        "mode=exact is reserved for the test-suite oracle; use markov or retarded");
  if ((master_mode || spec.mode == EvolutionMode::PureDecoherenceClosed || phase_space_mode) &&
      !g.has_value() && spec.mode != EvolutionMode::Semiclassical)
    throw std::invalid_argument("the selected evolution mode needs a [bath] section");

  std::optional<GasSpec> gas;
  if (config.gas.present) gas = config.make_gas();

  std::vector<std::string> stamp = config.stamp();
  stamp.push_back("seed=" + std::to_string(seed));

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  if (g.has_value()) {
    write_file(dir / "coeffs.csv", [&](std::ostream& os) {
      for (const auto& c : stamp) os << "# " << c << "\n";
      os << "quantity,value\n";
      os << "g_xx," << format_double(g->g(0, 0)) << "\n";
      os << "g_xp," << format_double(g->g(0, 1)) << "\n";
      os << "g_pp," << format_double(g->g(1, 1)) << "\n";
      os << "gamma_xx," << format_double(gamma->gamma(0, 0)) << "\n";
      os << "gamma_xp," << format_double(gamma->gamma(0, 1)) << "\n";
      os << "gamma_pp," << format_double(gamma->gamma(1, 1)) << "\n";
      const auto [theta, rotated] = canonical_rotation(*g, 1.0, 1.0);
      os << "theta," << format_double(theta) << "\n";
      os << "classification,"
         << (g->classification == GClassification::NonDegenerate ? "nondegenerate"
                                                                 : "degenerate")
         << "\n";
    });
  }

  std::vector<std::vector<double>> rows;
  int snapshot_index = 0;
  auto snapshot = [&](const WignerFunction& w) {
    write_file(dir / ("wigner_t" + std::to_string(snapshot_index) + ".csv"),
               [&](std::ostream& os) { write_wigner(os, w, stamp); });
    ++snapshot_index;
  };
  auto add_row = [&](const TrajectoryRow& r) {
    rows.push_back({r.t, r.trace_re, r.purity, r.offdiag_l2, r.energy_c});
  };

  if (master_mode) {
    CollectiveCoupling coupling{position_operator(grid), std::nullopt};
    bool needs_p = false;
    for (const auto& t : spectrum->transitions)
      if (t.h1p != Complex(0.0, 0.0)) needs_p = true;
    if (needs_p) coupling.p_op = momentum_operator(grid);
    const MasterTrajectory traj = evolve_master(rho0, h_c, coupling, *spectrum, spec);
    for (size_t i = 0; i < traj.times.size(); ++i)
      if (i % snapshot_every == 0 || i + 1 == traj.times.size())
        add_row(metrics(traj.times[i], traj.states[i].mat(), h_c.mat()));
  } else if (spec.mode == EvolutionMode::PureDecoherenceClosed) {
    const int steps = std::max(1, static_cast<int>(std::llround(spec.t_final / spec.dt)));
    for (int i = 0; i <= steps; i += snapshot_every) {
      const double t = spec.t_final * i / steps;
      const DensityOperator rho = pure_decoherence_closed(rho0, *g, t, grid);
      add_row(metrics(t, rho.mat(), h_c.mat()));
    }
  } else if (spec.mode == EvolutionMode::Semiclassical) {
    const HamiltonField h =
        HamiltonField::from_poly(Poly2::coord_p() * Poly2::coord_p() * (0.5 / config.system.mass) +
                                     Poly2::coord_x() * Poly2::coord_x() *
                                         (0.5 * config.system.mass * config.system.omega *
                                          config.system.omega),
                                 grid);
    const WignerTrajectory traj =
        semiclassical_evolve(wigner_transform(rho0, grid), h, spec, g, snapshot_every);
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const DensityOperator rho = inverse_wigner(traj.states[i]);
      add_row(metrics(traj.times[i], rho.mat(), h_c.mat()));
      snapshot(traj.states[i]);
    }
  } else {
    // heat_kernel / finite_difference
    const int steps = std::max(1, static_cast<int>(std::llround(spec.t_final / spec.dt)));
    const double dt = spec.t_final / steps;
    WignerFunction w = wigner_transform(rho0, grid);
    for (int i = 0; i <= steps; ++i) {
      if (i % snapshot_every == 0 || i == steps) {
        const DensityOperator rho = inverse_wigner(w);
        add_row(metrics(i * dt, rho.mat(), h_c.mat()));
        snapshot(w);
      }
      if (i == steps) break;
      w = spec.mode == EvolutionMode::HeatKernel ? heat_kernel_evolve(w, *g, dt)
                                                 : finite_difference_pure(w, *g, dt, dt);
    }
  }

  write_file(dir / "trajectory.csv", [&](std::ostream& os) {
    write_table(os, "t,trace_re,purity,offdiag_l2,energy_c", rows, stamp);
  });

  if (gas.has_value()) {
    std::vector<double> xi;
    for (int i = 0; i <= config.gas.xi_count; ++i)
      xi.push_back(config.gas.xi_max * i / config.gas.xi_count);
    const KernelTable table = localization_kernel(*gas, xi);
    write_file(dir / "kernel.csv", [&](std::ostream& os) {
      auto comments = stamp;
      comments.push_back("effective_gpp=" +
                         format_double(effective_gpp(*gas, config.system.hbar)));
      for (const auto& c : comments) os << "# " << c << "\n";
      os << "xi,F\n";
      for (size_t i = 0; i < table.xi.size(); ++i)
        os << format_double(table.xi[i]) << "," << format_double(table.f[i]) << "\n";
    });
  }

  if (config.analysis.nogo || config.analysis.pointer || config.analysis.sieve) {
    if (!g.has_value())
      throw std::invalid_argument("analysis diagnostics need a [bath] section");
    if (config.analysis.nogo) {
      write_file(dir / "report_nogo.txt", [&](std::ostream& os) {
        for (const auto& c : stamp) os << "# " << c << "\n";
        if (g->classification != GClassification::NonDegenerate)
          os << "INAPPLICABLE nogo degenerate tensor\n";
        else
          os << nogo_check(*g, grid, 64, 256, seed).to_text();
      });
    }
    if (config.analysis.pointer) {
      // evenly spaced subset of position states keeps the pair loop tractable
      std::vector<Vector> basis;
      const int count = std::min(grid.n_x, 16);
      for (int i = 0; i < count; ++i)
        basis.push_back(Vector::Unit(grid.n_x, i * (grid.n_x / count)));
      write_file(dir / "report_pointer.txt", [&](std::ostream& os) {
        for (const auto& c : stamp) os << "# " << c << "\n";
        os << pointer_basis_check(*g, grid, basis, 16, seed).to_text();
      });
    }
    if (config.analysis.sieve) {
      std::vector<std::pair<std::string, DensityOperator>> candidates;
      ScenarioConfig cell_cfg = config;
      cell_cfg.initial.type = InitialType::MixedCell;
      candidates.emplace_back("cell", initial_state(cell_cfg, grid));
      ScenarioConfig packet_cfg = config;
      packet_cfg.initial.type = InitialType::Packet;
      packet_cfg.initial.width = std::sqrt(grid.hbar / (config.system.mass *
                                                        config.system.omega));
      candidates.emplace_back("coherent", initial_state(packet_cfg, grid));
      write_file(dir / "report_sieve.txt", [&](std::ostream& os) {
        for (const auto& c : stamp) os << "# " << c << "\n";
        os << purity_sieve(candidates, *g, grid, spec.t_final > 0 ? spec.t_final : 1.0, 16)
                  .to_text();
      });
    }
  }
}

}  // namespace decoh
