#include "decoh/grid.hpp"

namespace decoh {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

PhaseSpaceGrid::PhaseSpaceGrid(double xmin, double xmax, double pmin, double pmax, int nx, int np,
                               double hb)
    : x_min(xmin), x_max(xmax), p_min(pmin), p_max(pmax), n_x(nx), n_p(np), hbar(hb) {
  if (!(x_max > x_min) || !(p_max > p_min))
    throw std::invalid_argument("PhaseSpaceGrid: empty range");
  if (!power_of_two(n_x) || !power_of_two(n_p))
    throw std::invalid_argument("PhaseSpaceGrid: n_x and n_p must be powers of two");
  if (!(hbar > 0.0)) throw std::invalid_argument("PhaseSpaceGrid: hbar must be positive");
}

PhaseSpaceGrid PhaseSpaceGrid::conjugate(double xmin, double xmax, int n, double hb) {
  const double dx = (xmax - xmin) / n;
  const double dp = 2.0 * M_PI * hb / (n * dx);
  return PhaseSpaceGrid(xmin, xmax, -0.5 * n * dp, 0.5 * n * dp, n, n, hb);
}

bool PhaseSpaceGrid::transform_consistent(double rel_tol) const {
  if (n_x != n_p) return false;
  const double lhs = dx() * dp() * n_x;
  const double rhs = 2.0 * M_PI * hbar;
  return std::abs(lhs - rhs) <= rel_tol * rhs;
}

void PhaseSpaceGrid::require_transform_consistent() const {
  if (!transform_consistent())
    throw std::invalid_argument(
        "PhaseSpaceGrid: dx*dp*n = 2*pi*hbar required for operator<->symbol transforms");
}

bool PhaseSpaceGrid::operator==(const PhaseSpaceGrid& o) const {
  return x_min == o.x_min && x_max == o.x_max && p_min == o.p_min && p_max == o.p_max &&
         n_x == o.n_x && n_p == o.n_p && hbar == o.hbar;
}

}  // namespace decoh
