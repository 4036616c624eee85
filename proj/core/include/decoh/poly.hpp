#pragma once

#include <complex>
#include <vector>

#include "decoh/grid.hpp"

namespace decoh {

/// Dense bivariate polynomial in (x, p) with complex coefficients,
/// coeff(i, j) multiplying x^i p^j. Gives exact derivatives for the
/// low-order symbols (coordinates, quadratic Hamiltonians) where spectral
/// differentiation of the periodic grid samples would alias.
class Poly2 {
 public:
  Poly2() : deg_x_(0), deg_p_(0), c_(1, 0.0) {}
  Poly2(int deg_x, int deg_p)
      : deg_x_(deg_x), deg_p_(deg_p), c_(static_cast<size_t>(deg_x + 1) * (deg_p + 1), 0.0) {}

  static Poly2 constant(std::complex<double> v) {
    Poly2 r;
    r.at(0, 0) = v;
    return r;
  }
  static Poly2 coord_x() {
    Poly2 r(1, 0);
    r.at(1, 0) = 1.0;
    return r;
  }
  static Poly2 coord_p() {
    Poly2 r(0, 1);
    r.at(0, 1) = 1.0;
    return r;
  }

  int deg_x() const { return deg_x_; }
  int deg_p() const { return deg_p_; }
  std::complex<double>& at(int i, int j) { return c_[static_cast<size_t>(i) * (deg_p_ + 1) + j]; }
  std::complex<double> at(int i, int j) const {
    if (i > deg_x_ || j > deg_p_) return 0.0;
    return c_[static_cast<size_t>(i) * (deg_p_ + 1) + j];
  }

  Poly2 dx() const;
  Poly2 dp() const;
  Poly2 operator+(const Poly2& o) const;
  Poly2 operator-(const Poly2& o) const;
  Poly2 operator*(const Poly2& o) const;
  Poly2 operator*(std::complex<double> s) const;

  std::complex<double> eval(double x, double p) const;
  ComplexField eval_grid(const PhaseSpaceGrid& g) const;

  bool is_zero(double tol = 0.0) const;

 private:
  int deg_x_, deg_p_;
  std::vector<std::complex<double>> c_;
};

}  // namespace decoh
