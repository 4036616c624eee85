#include "decoh/phase_space_evolution.hpp"

#include <cmath>
#include <numbers>

namespace decoh {

namespace {

enum class DegenerateCase { Position, Momentum, Null };

DegenerateCase classify_degenerate(const DecoherenceTensor& g) {
  const double scale = g.g.cwiseAbs().maxCoeff();
  if (scale == 0.0) return DegenerateCase::Null;
  const double tol = 1e-12 * scale;
  const bool xp_zero = std::abs(g.g(0, 1)) <= tol && std::abs(g.g(1, 0)) <= tol;
  if (xp_zero && std::abs(g.g(0, 0)) <= tol) return DegenerateCase::Position;
  if (xp_zero && std::abs(g.g(1, 1)) <= tol) return DegenerateCase::Momentum;
  throw std::invalid_argument(
      "pure_decoherence_closed: tensor is not of the single-coefficient degenerate form "
      "(use heat_kernel_evolve)");
}

/// Columns are the grid's discrete momentum eigenvectors <x_a|p_m>.
Matrix momentum_basis(const PhaseSpaceGrid& grid) {
  const int n = grid.n_x;
  Matrix f(n, n);
  const double norm = 1.0 / std::sqrt(double(n));
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m)
      f(a, m) = std::polar(norm, grid.p(m) * grid.x(a) / grid.hbar);
  return f;
}

}  // namespace

DensityOperator pure_decoherence_closed(const DensityOperator& rho_r0, const DecoherenceTensor& g,
                                        double t, const PhaseSpaceGrid& grid) {
  if (t < 0.0) throw std::invalid_argument("pure_decoherence_closed: t must be >= 0");
  if (rho_r0.dim() != grid.n_x)
    throw std::invalid_argument("pure_decoherence_closed: density dimension must match grid.n_x");
  const DegenerateCase which = classify_degenerate(g);
  if (which == DegenerateCase::Null || t == 0.0) return rho_r0;

  const double hbar2 = grid.hbar * grid.hbar;
  if (which == DegenerateCase::Position) {
    Matrix out = rho_r0.mat();
    for (int i = 0; i < grid.n_x; ++i)
      for (int j = 0; j < grid.n_x; ++j) {
        const double xi = grid.x(i) - grid.x(j);
        out(i, j) *= std::exp(-g.g(1, 1) * xi * xi * t / hbar2);
      }
    return DensityOperator(Operator(out, rho_r0.tag()));
  }

  const Matrix f = momentum_basis(grid);
  Matrix tilde = f.adjoint() * rho_r0.mat() * f;
  for (int i = 0; i < grid.n_x; ++i)
    for (int j = 0; j < grid.n_x; ++j) {
      const double eta = grid.p(i) - grid.p(j);
      tilde(i, j) *= std::exp(-g.g(0, 0) * eta * eta * t / hbar2);
    }
  return DensityOperator(Operator(f * tilde * f.adjoint(), rho_r0.tag()), 1e-9);
}

namespace {

/// Wavenumbers of the periodic grid, kx = 2 pi j / L.
double wavenumber(int j, int n, double step) {
  return 2.0 * std::numbers::pi * signed_freq(j, n) / (n * step);
}

}  // namespace

WignerFunction heat_kernel_evolve(const WignerFunction& w0, const DecoherenceTensor& g, double t) {
  if (g.classification != GClassification::NonDegenerate)
    throw std::invalid_argument("heat_kernel_evolve: degenerate tensor (use the closed form)");
  if (t < 0.0) throw std::invalid_argument("heat_kernel_evolve: t must be >= 0");
  const PhaseSpaceGrid& grid = w0.grid;

  ComplexField f = w0.values.cast<Complex>();
  fft_along_x(f, -1);
  fft_along_p(f, -1);
  for (int jx = 0; jx < grid.n_x; ++jx) {
    const double kx = wavenumber(jx, grid.n_x, grid.dx());
    for (int jp = 0; jp < grid.n_p; ++jp) {
      const double kp = wavenumber(jp, grid.n_p, grid.dp());
      const double form =
          g.g(0, 0) * kx * kx + 2.0 * g.g(0, 1) * kx * kp + g.g(1, 1) * kp * kp;
      f(jx, jp) *= std::exp(-t * form);
    }
  }
  fft_along_x(f, 1);
  fft_along_p(f, 1);
  f /= double(grid.n_x) * grid.n_p;

  WignerFunction out;
  out.grid = grid;
  out.values = f.real();
  out.max_imag = std::max(w0.max_imag, f.imag().cwiseAbs().maxCoeff());
  return out;
}

WignerFunction finite_difference_pure(const WignerFunction& w0, const DecoherenceTensor& g,
                                      double t, double dt) {
  if (t < 0.0) throw std::invalid_argument("finite_difference_pure: t must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("finite_difference_pure: dt must be > 0");
  const PhaseSpaceGrid& grid = w0.grid;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g.g);
  const double gmax = es.eigenvalues().maxCoeff();
  if (gmax <= 0.0 || t == 0.0) return w0;

  const double dx2 = grid.dx() * grid.dx(), dp2 = grid.dp() * grid.dp();
  const double bound = 0.4 * std::min(dx2, dp2) / gmax;
  if (dt > bound * (1.0 + 1e-12))
    throw std::invalid_argument("finite_difference_pure: dt exceeds the stability bound, use dt <= " +
                                std::to_string(bound));

  // the spectral operator is stiffer than the nominal grid bound; subdivide
  // each step to keep the explicit midpoint scheme inside |1 + z + z^2/2| <= 1
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double lambda_max = gmax * pi2 * (1.0 / dx2 + 1.0 / dp2);
  const int total_steps =
      std::max(static_cast<int>(std::ceil(t / dt)),
               static_cast<int>(std::ceil(t * lambda_max / 1.8)));
  const double h = t / total_steps;

  auto rhs = [&](const RealField& w) -> RealField {
    RealField out = RealField::Zero(grid.n_x, grid.n_p);
    if (g.g(0, 0) != 0.0) out += g.g(0, 0) * spectral_dx(w, grid, 2);
    if (g.g(1, 1) != 0.0) out += g.g(1, 1) * spectral_dp(w, grid, 2);
    if (g.g(0, 1) != 0.0) out += 2.0 * g.g(0, 1) * spectral_dp(spectral_dx(w, grid, 1), grid, 1);
    return out;
  };

  WignerFunction out = w0;
  for (int s = 0; s < total_steps; ++s) {
    RealField mid = out.values + 0.5 * h * rhs(out.values);
    out.values += h * rhs(mid);
  }
  return out;
}

}  // namespace decoh
