#include "decoh/einselection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "decoh/phase_space_evolution.hpp"
#include "decoh/rng.hpp"
#include "decoh/wigner.hpp"

namespace decoh {

namespace {

Matrix momentum_basis(const PhaseSpaceGrid& grid) {
  const int n = grid.n_x;
  Matrix f(n, n);
  const double norm = 1.0 / std::sqrt(double(n));
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m)
      f(a, m) = std::polar(norm, grid.p(m) * grid.x(a) / grid.hbar);
  return f;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix random_density(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

Vector coherent_state(const PhaseSpaceGrid& grid, double x0, double p0) {
  Vector psi(grid.n_x);
  for (int i = 0; i < grid.n_x; ++i) {
    const double dx = grid.x(i) - x0;
    psi(i) = std::polar(std::exp(-0.25 * dx * dx / grid.hbar), p0 * grid.x(i) / grid.hbar);
  }
  psi.normalize();
  return psi;
}

Vector random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector psi(n);
  for (int i = 0; i < n; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  psi.normalize();
  return psi;
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

Operator position_operator(const PhaseSpaceGrid& grid) {
  Matrix x = Matrix::Zero(grid.n_x, grid.n_x);
  for (int i = 0; i < grid.n_x; ++i) x(i, i) = grid.x(i);
  return Operator(x, SpaceTag::Collective);
}

Operator momentum_operator(const PhaseSpaceGrid& grid) {
  const Matrix f = momentum_basis(grid);
  Matrix p = Matrix::Zero(grid.n_x, grid.n_x);
  for (int m = 0; m < grid.n_x; ++m) p(m, m) = grid.p(m);
  return Operator(f * p * f.adjoint(), SpaceTag::Collective);
}

Matrix decoherence_generator(const Matrix& rho, const DecoherenceTensor& g,
                             const PhaseSpaceGrid& grid) {
  if (rho.rows() != grid.n_x || rho.cols() != grid.n_x)
    throw std::invalid_argument("decoherence_generator: density shape does not match grid");
  const double inv = 1.0 / (grid.hbar * grid.hbar);
  Matrix out = Matrix::Zero(grid.n_x, grid.n_x);
  const Matrix x = position_operator(grid).mat();
  if (g.g(1, 1) != 0.0) out -= g.g(1, 1) * inv * commutator(x, commutator(x, rho));
  if (g.g(0, 0) != 0.0 || g.g(0, 1) != 0.0) {
    const Matrix p = momentum_operator(grid).mat();
    if (g.g(0, 0) != 0.0) out -= g.g(0, 0) * inv * commutator(p, commutator(p, rho));
    // [X,.] ~ i hbar d/dp and [P,.] ~ -i hbar d/dx on symbols, so the mixed
    // derivative enters with the opposite sign of the pure second derivatives
    if (g.g(0, 1) != 0.0)
      out += g.g(0, 1) * inv *
             (commutator(x, commutator(p, rho)) + commutator(p, commutator(x, rho)));
  }
  return out;
}

std::string PointerBasisReport::to_text() const {
  std::ostringstream os;
  os << "quantity,value\n";
  os << "max_diagonal_residual," << max_diagonal_residual << "\n";
  os << "min_offdiagonal_damping," << min_offdiagonal_damping << "\n";
  os << pass_fail(max_diagonal_residual < 1e-8) << " pointer_diagonal " << max_diagonal_residual
     << " 1e-8\n";
  os << pass_fail(min_offdiagonal_damping > 0.0) << " pointer_damping " << min_offdiagonal_damping
     << " 0\n";
  return os.str();
}

PointerBasisReport pointer_basis_check(const DecoherenceTensor& g, const PhaseSpaceGrid& grid,
                                       const std::vector<Vector>& basis, int samples,
                                       std::uint64_t seed) {
  if (basis.empty()) throw std::invalid_argument("pointer_basis_check: basis is empty");
  for (const auto& b : basis)
    if (b.size() != grid.n_x)
      throw std::invalid_argument("pointer_basis_check: basis dimension does not match grid");
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      const Complex ip = basis[i].dot(basis[j]);
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(ip - target) > 1e-10)
        throw std::invalid_argument("pointer_basis_check: basis is not orthonormal");
    }

  PointerBasisReport report;
  report.max_diagonal_residual = 0.0;
  for (int s = 0; s < samples; ++s) {
    auto rng = substream(seed, "pointer_rho", s);
    const Matrix rho = random_density(rng, grid.n_x);
    const Matrix d = decoherence_generator(rho, g, grid);
    const double scale = d.cwiseAbs().maxCoeff();
    if (scale == 0.0) continue;
    for (const auto& b : basis) {
      const double diag = std::abs((b.adjoint() * d * b)(0, 0));
      report.max_diagonal_residual = std::max(report.max_diagonal_residual, diag / scale);
    }
  }

  // strict damping probed on the Hermitian pair densities |j><k| + |k><j|
  report.min_offdiagonal_damping = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t k = j + 1; k < basis.size(); ++k) {
      const Matrix pair = basis[j] * basis[k].adjoint() + basis[k] * basis[j].adjoint();
      const Matrix d = decoherence_generator(pair, g, grid);
      const double scale = d.cwiseAbs().maxCoeff();
      const double damping =
          scale > 0.0 ? -std::real((basis[j].adjoint() * d * basis[k])(0, 0)) / scale : 0.0;
      report.min_offdiagonal_damping = std::min(report.min_offdiagonal_damping, damping);
    }

  report.passed = report.max_diagonal_residual < 1e-8 && report.min_offdiagonal_damping > 0.0;
  return report;
}

std::string NogoReport::to_text() const {
  std::ostringstream os;
  os << "psi,max_over_rho\n";
  for (size_t i = 0; i < per_psi.size(); ++i) os << i << "," << per_psi[i] << "\n";
  os << pass_fail(passed) << " nogo_floor " << floor << " 1e-6\n";
  return os.str();
}

NogoReport nogo_check(const DecoherenceTensor& g, const PhaseSpaceGrid& grid, int psi_samples,
                      int rho_samples, std::uint64_t seed) {
  if (g.classification != GClassification::NonDegenerate)
    throw std::invalid_argument(
        "nogo_check: degenerate tensor is inapplicable (its pointer basis satisfies the "
        "diagonal condition)");
  if (psi_samples < 1 || rho_samples < 1)
    throw std::invalid_argument("nogo_check: sample counts must be >= 1");

  std::vector<Vector> psis;
  psis.reserve(psi_samples);
  const int coherent = psi_samples / 4;
  for (int i = 0; i < coherent; ++i) {
    auto rng = substream(seed, "nogo_coherent", i);
    std::uniform_real_distribution<double> ux(grid.x_min + 0.25 * (grid.x_max - grid.x_min),
                                              grid.x_max - 0.25 * (grid.x_max - grid.x_min));
    std::uniform_real_distribution<double> up(grid.p_min + 0.25 * (grid.p_max - grid.p_min),
                                              grid.p_max - 0.25 * (grid.p_max - grid.p_min));
    psis.push_back(coherent_state(grid, ux(rng), up(rng)));
  }
  for (int i = coherent; i < psi_samples; ++i) {
    auto rng = substream(seed, "nogo_psi", i);
    psis.push_back(random_state(rng, grid.n_x));
  }

  NogoReport report;
  report.per_psi.assign(psi_samples, 0.0);
  for (int r = 0; r < rho_samples; ++r) {
    auto rng = substream(seed, "nogo_rho", r);
    const Matrix rho = random_density(rng, grid.n_x);
    const Matrix d = decoherence_generator(rho, g, grid);
    for (int i = 0; i < psi_samples; ++i) {
      const double v = std::abs((psis[i].adjoint() * d * psis[i])(0, 0));
      report.per_psi[i] = std::max(report.per_psi[i], v);
    }
  }
  report.global_max = *std::max_element(report.per_psi.begin(), report.per_psi.end());
  if (report.global_max > 0.0) {
    for (double& v : report.per_psi) v /= report.global_max;
    report.floor = *std::min_element(report.per_psi.begin(), report.per_psi.end());
  }
  report.passed = report.floor > 1e-6;
  return report;
}

std::string SieveReport::to_text() const {
  std::ostringstream os;
  os << "rank,label,mean_retention,final_purity\n";
  for (size_t i = 0; i < ranked.size(); ++i)
    os << i << "," << ranked[i].label << "," << ranked[i].mean_retention << ","
       << ranked[i].final_purity << "\n";
  if (!ranked.empty()) {
    const double drop = 1.0 - ranked.front().final_purity / ranked.front().purity.front();
    os << pass_fail(drop < 0.1) << " sieve_top_drop " << drop << " 0.1\n";
  }
  return os.str();
}

SieveReport purity_sieve(const std::vector<std::pair<std::string, DensityOperator>>& candidates,
                         const DecoherenceTensor& g, const PhaseSpaceGrid& grid, double window,
                         int samples) {
  if (!(window > 0.0)) throw std::invalid_argument("purity_sieve: window must be > 0");
  if (samples < 1) throw std::invalid_argument("purity_sieve: samples must be >= 1");

  SieveReport report;
  for (int s = 0; s <= samples; ++s) report.times.push_back(window * s / samples);
  const bool nondegenerate = g.classification == GClassification::NonDegenerate;

  for (const auto& [label, rho0] : candidates) {
    SieveEntry entry;
    entry.label = label;
    if (nondegenerate) {
      WignerFunction w = wigner_transform(rho0, grid);
      const double dt = window / samples;
      entry.purity.push_back(w.purity());
      for (int s = 1; s <= samples; ++s) {
        w = heat_kernel_evolve(w, g, dt);
        entry.purity.push_back(w.purity());
      }
    } else {
      for (double t : report.times) {
        const DensityOperator rho = pure_decoherence_closed(rho0, g, t, grid);
        entry.purity.push_back(std::real((rho.mat() * rho.mat()).trace()));
      }
    }
    entry.final_purity = entry.purity.back();
    double sum = 0.0;
    for (double v : entry.purity) sum += v;
    entry.mean_retention =
        entry.purity.front() > 0.0 ? sum / entry.purity.size() / entry.purity.front() : 0.0;
    report.ranked.push_back(std::move(entry));
  }

  std::stable_sort(report.ranked.begin(), report.ranked.end(),
                   [](const SieveEntry& a, const SieveEntry& b) {
                     return a.mean_retention > b.mean_retention;
                   });
  return report;
}

std::string CatStateReport::to_text() const {
  std::ostringstream os;
  os << "t,interference_norm,diagonal_overlap\n";
  for (size_t i = 0; i < times.size(); ++i)
    os << times[i] << "," << interference_norm[i] << "," << diagonal_overlap[i] << "\n";
  os << pass_fail(decay_rate > 0.0) << " interference_decay " << decay_rate << " 0\n";
  return os.str();
}

CatStateReport cat_state_experiment(const Vector& psi1, const Vector& psi2,
                                    const DecoherenceTensor& g, const PhaseSpaceGrid& grid,
                                    const std::vector<double>& t_grid) {
  if (psi1.size() != grid.n_x || psi2.size() != grid.n_x)
    throw std::invalid_argument("cat_state_experiment: state dimension does not match grid");
  if (std::abs(psi1.norm() - 1.0) > 1e-8 || std::abs(psi2.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("cat_state_experiment: states must be normalized");
  if (t_grid.empty()) throw std::invalid_argument("cat_state_experiment: empty time grid");

  const Matrix cross = psi1 * psi2.adjoint() + psi2 * psi1.adjoint();
  const Matrix p1 = psi1 * psi1.adjoint();
  const Matrix p2 = psi2 * psi2.adjoint();
  const bool nondegenerate = g.classification == GClassification::NonDegenerate;

  auto evolved = [&](const Matrix& m, double t) -> Matrix {
    const DensityOperator rho{Operator(m, SpaceTag::Collective)};
    if (!nondegenerate) return pure_decoherence_closed(rho, g, t, grid).mat();
    const WignerFunction w = heat_kernel_evolve(wigner_transform(rho, grid), g, t);
    return inverse_wigner(w).mat();
  };

  CatStateReport report;
  report.times = t_grid;
  for (double t : t_grid) {
    if (t < 0.0) throw std::invalid_argument("cat_state_experiment: times must be >= 0");
    report.interference_norm.push_back(evolved(cross, t).norm());
    const Matrix a = evolved(p1, t), b = evolved(p2, t);
    double overlap = 0.0, na = 0.0, nb = 0.0;
    for (int i = 0; i < grid.n_x; ++i) {
      const double da = std::max(0.0, std::real(a(i, i)));
      const double db = std::max(0.0, std::real(b(i, i)));
      overlap += std::sqrt(da * db);
      na += da;
      nb += db;
    }
    report.diagonal_overlap.push_back(na > 0.0 && nb > 0.0 ? overlap / std::sqrt(na * nb) : 0.0);
  }

  // least-squares slope of log interference norm
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  const double floor = 1e-12 * report.interference_norm.front();
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (report.interference_norm[i] <= floor) continue;
    const double y = std::log(report.interference_norm[i]);
    sx += t_grid[i];
    sy += y;
    sxx += t_grid[i] * t_grid[i];
    sxy += t_grid[i] * y;
    ++count;
  }
  const double denom = count * sxx - sx * sx;
  report.decay_rate = denom > 0.0 ? -(count * sxy - sx * sy) / denom : 0.0;
  return report;
}

}  // namespace decoh
