#include "decoh/poly.hpp"

#include <algorithm>

namespace decoh {

Poly2 Poly2::dx() const {
  Poly2 r(std::max(deg_x_ - 1, 0), deg_p_);
  for (int i = 1; i <= deg_x_; ++i)
    for (int j = 0; j <= deg_p_; ++j) r.at(i - 1, j) = static_cast<double>(i) * at(i, j);
  return r;
}

Poly2 Poly2::dp() const {
  Poly2 r(deg_x_, std::max(deg_p_ - 1, 0));
  for (int i = 0; i <= deg_x_; ++i)
    for (int j = 1; j <= deg_p_; ++j) r.at(i, j - 1) = static_cast<double>(j) * at(i, j);
  return r;
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 r(std::max(deg_x_, o.deg_x_), std::max(deg_p_, o.deg_p_));
  for (int i = 0; i <= r.deg_x_; ++i)
    for (int j = 0; j <= r.deg_p_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
  return r;
}

Poly2 Poly2::operator-(const Poly2& o) const {
  Poly2 r(std::max(deg_x_, o.deg_x_), std::max(deg_p_, o.deg_p_));
  for (int i = 0; i <= r.deg_x_; ++i)
    for (int j = 0; j <= r.deg_p_; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
  return r;
}

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 r(deg_x_ + o.deg_x_, deg_p_ + o.deg_p_);
  for (int i = 0; i <= deg_x_; ++i)
    for (int j = 0; j <= deg_p_; ++j) {
      if (at(i, j) == 0.0) continue;
      for (int k = 0; k <= o.deg_x_; ++k)
        for (int l = 0; l <= o.deg_p_; ++l) r.at(i + k, j + l) += at(i, j) * o.at(k, l);
    }
  return r;
}

Poly2 Poly2::operator*(std::complex<double> s) const {
  Poly2 r = *this;
  for (int i = 0; i <= deg_x_; ++i)
    for (int j = 0; j <= deg_p_; ++j) r.at(i, j) = at(i, j) * s;
  return r;
}

std::complex<double> Poly2::eval(double x, double p) const {
  std::complex<double> acc = 0.0;
  for (int i = deg_x_; i >= 0; --i) {
    std::complex<double> row = 0.0;
    for (int j = deg_p_; j >= 0; --j) row = row * p + at(i, j);
    acc = acc * x + row;
  }
  return acc;
}

ComplexField Poly2::eval_grid(const PhaseSpaceGrid& g) const {
  ComplexField f(g.n_x, g.n_p);
  for (int j = 0; j < g.n_x; ++j)
    for (int m = 0; m < g.n_p; ++m) f(j, m) = eval(g.x(j), g.p(m));
  return f;
}

bool Poly2::is_zero(double tol) const {
  for (const auto& v : c_)
    if (std::abs(v) > tol) return false;
  return true;
}

}  // namespace decoh
