#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace decoh {

using RealField = Eigen::ArrayXXd;     // (x index, p index)
using ComplexField = Eigen::ArrayXXcd;

/// Uniform periodic phase-space grid for one conjugate pair. Transform-grade
/// grids satisfy dx*dp*n = 2*pi*hbar so the discrete Wigner/Weyl transform is
/// exactly invertible.
struct PhaseSpaceGrid {
  double x_min = 0, x_max = 0, p_min = 0, p_max = 0;
  int n_x = 0, n_p = 0;
  double hbar = 1.0;

  PhaseSpaceGrid() = default;
  PhaseSpaceGrid(double xmin, double xmax, double pmin, double pmax, int nx, int np, double hb);

  /// Grid conjugate to an n-point position range: centered momentum window
  /// with dp = 2*pi*hbar/(n*dx).
  static PhaseSpaceGrid conjugate(double xmin, double xmax, int n, double hb);

  double dx() const { return (x_max - x_min) / n_x; }
  double dp() const { return (p_max - p_min) / n_p; }
  double x(int j) const { return x_min + j * dx(); }
  double p(int m) const { return p_min + m * dp(); }
  double cell_area() const { return dx() * dp(); }

  bool transform_consistent(double rel_tol = 1e-9) const;
  void require_transform_consistent() const;

  bool operator==(const PhaseSpaceGrid& o) const;
  bool operator!=(const PhaseSpaceGrid& o) const { return !(*this == o); }
};

/// Rectangular cell with a raised-cosine smoothing band used by the
/// microlocal quasi-projector.
struct PhaseCell {
  double center_x = 0, center_p = 0;
  double half_width_x = 0, half_width_p = 0;
  double margin = 0.1;  // smoothing fraction of each half-width, in (0, 0.5)

  double area() const { return 4.0 * half_width_x * half_width_p; }
};

}  // namespace decoh
