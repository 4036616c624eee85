#include "decoh/quasi_projector.hpp"

#include "decoh/wigner.hpp"

namespace decoh {

namespace {

/// 1 for r <= 1 - m, 0 for r >= 1, half-cosine in between.
double raised_cosine(double r, double m) {
  if (r <= 1.0 - m) return 1.0;
  if (r >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(M_PI * (r - (1.0 - m)) / m));
}

}  // namespace

QuasiProjector quasi_projector(const PhaseCell& cell, const PhaseSpaceGrid& grid) {
  grid.require_transform_consistent();
  if (!(cell.half_width_x > 0.0) || !(cell.half_width_p > 0.0))
    throw std::invalid_argument("quasi_projector: cell must have positive half-widths");
  if (!(cell.margin > 0.0) || !(cell.margin < 0.5))
    throw std::invalid_argument("quasi_projector: margin must lie in (0, 0.5)");
  const double planck = 2.0 * M_PI * grid.hbar;
  if (cell.area() < planck)
    throw std::invalid_argument("quasi_projector: cell area below 2*pi*hbar has no classical cell");
  if (cell.center_x < grid.x_min || cell.center_x > grid.x_max || cell.center_p < grid.p_min ||
      cell.center_p > grid.p_max)
    throw std::invalid_argument("quasi_projector: cell center outside the grid");

  ComplexField field(grid.n_x, grid.n_p);
  for (int j = 0; j < grid.n_x; ++j) {
    const double ux = raised_cosine(std::abs(grid.x(j) - cell.center_x) / cell.half_width_x,
                                    cell.margin);
    for (int m = 0; m < grid.n_p; ++m) {
      const double up = raised_cosine(std::abs(grid.p(m) - cell.center_p) / cell.half_width_p,
                                      cell.margin);
      field(j, m) = ux * up;
    }
  }

  Matrix m = symbol_to_matrix(field, grid);
  return QuasiProjector{OperatorSymbol::scalar(field, grid),
                        Operator(((m + m.adjoint()) / 2.0).eval(), SpaceTag::Collective),
                        cell.area() < 10.0 * planck};
}

}  // namespace decoh
