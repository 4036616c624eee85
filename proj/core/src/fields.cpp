#include "decoh/fields.hpp"

#include <vector>

#include "fft.hpp"

namespace decoh {

void fft_along_x(ComplexField& f, int sign) {
  const int n = static_cast<int>(f.rows());
  for (int m = 0; m < f.cols(); ++m) detail::Fft1d::run(f.col(m).data(), n, sign);
}

void fft_along_p(ComplexField& f, int sign) {
  const int n = static_cast<int>(f.cols());
  std::vector<std::complex<double>> row(n);
  for (int j = 0; j < f.rows(); ++j) {
    for (int m = 0; m < n; ++m) row[m] = f(j, m);
    detail::Fft1d::run(row.data(), n, sign);
    for (int m = 0; m < n; ++m) f(j, m) = row[m];
  }
}

int signed_freq(int j, int n) { return j <= n / 2 - 1 ? j : j - n; }

namespace {

std::vector<std::complex<double>> deriv_multipliers(int n, double length, int order) {
  std::vector<std::complex<double>> mult(n);
  for (int j = 0; j < n; ++j) {
    const int f = signed_freq(j, n);
    if (order % 2 == 1 && f == -n / 2) {
      mult[j] = 0.0;
      continue;
    }
    const std::complex<double> ik(0.0, 2.0 * M_PI * f / length);
    mult[j] = std::pow(ik, order);
  }
  return mult;
}

}  // namespace

ComplexField spectral_dx(const ComplexField& f, const PhaseSpaceGrid& g, int order) {
  if (f.rows() != g.n_x || f.cols() != g.n_p)
    throw std::invalid_argument("spectral_dx: field does not match grid");
  ComplexField out = f;
  fft_along_x(out, -1);
  const auto mult = deriv_multipliers(g.n_x, g.x_max - g.x_min, order);
  for (int j = 0; j < g.n_x; ++j) out.row(j) *= mult[j] / static_cast<double>(g.n_x);
  fft_along_x(out, +1);
  return out;
}

ComplexField spectral_dp(const ComplexField& f, const PhaseSpaceGrid& g, int order) {
  if (f.rows() != g.n_x || f.cols() != g.n_p)
    throw std::invalid_argument("spectral_dp: field does not match grid");
  ComplexField out = f;
  fft_along_p(out, -1);
  const auto mult = deriv_multipliers(g.n_p, g.p_max - g.p_min, order);
  for (int m = 0; m < g.n_p; ++m) out.col(m) *= mult[m] / static_cast<double>(g.n_p);
  fft_along_p(out, +1);
  return out;
}

RealField spectral_dx(const RealField& f, const PhaseSpaceGrid& g, int order) {
  return spectral_dx(f.cast<std::complex<double>>().eval(), g, order).real();
}

RealField spectral_dp(const RealField& f, const PhaseSpaceGrid& g, int order) {
  return spectral_dp(f.cast<std::complex<double>>().eval(), g, order).real();
}

double boundary_mass_fraction(const RealField& f) {
  const double total = f.abs().sum();
  if (total == 0.0) return 0.0;
  double edge = f.row(0).abs().sum() + f.row(f.rows() - 1).abs().sum();
  if (f.cols() > 1) {
    edge += f.col(0).abs().sum() + f.col(f.cols() - 1).abs().sum();
    edge -= std::abs(f(0, 0)) + std::abs(f(0, f.cols() - 1)) + std::abs(f(f.rows() - 1, 0)) +
            std::abs(f(f.rows() - 1, f.cols() - 1));
  }
  return edge / total;
}

}  // namespace decoh
