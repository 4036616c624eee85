#include "decoh/scattering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace decoh {

namespace {

struct Quadrature {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on the recurrence.
Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    q.x[i] = -x;
    q.x[n - 1 - i] = x;
    q.w[i] = q.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

// Maps [-1, 1] quadrature onto [lo, hi].
double integrate_cos_theta(const GasSpec& gas, double k, double lo, double hi, int order,
                           const std::function<double(double cos_theta)>& factor) {
  const Quadrature q = gauss_legendre(order);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const double c = mid + half * q.x[i];
    const double ds = gas.dsigma(k, c);
    if (!(ds >= 0.0))
      throw std::invalid_argument("GasSpec: differential cross-section must be >= 0");
    sum += q.w[i] * ds * factor(c);
  }
  return 2.0 * std::numbers::pi * half * sum;
}

constexpr int kOrderStart = 16;
constexpr int kOrderMax = 8192;

// Adaptive order doubling until the relative change drops below 0.1%.
double adaptive_cos_theta(const GasSpec& gas, double k,
                          const std::function<double(double cos_theta)>& factor,
                          const char* what) {
  const double lo = -1.0, hi = gas.cos_theta_max;
  double prev = integrate_cos_theta(gas, k, lo, hi, kOrderStart, factor);
  for (int order = 2 * kOrderStart; order <= kOrderMax; order *= 2) {
    const double cur = integrate_cos_theta(gas, k, lo, hi, order, factor);
    if (std::abs(cur - prev) <= 1e-3 * std::max(std::abs(cur), 1e-300)) return cur;
    prev = cur;
  }
  throw std::runtime_error(std::string("scattering: angular quadrature for ") + what +
                           " did not converge; forward peak needs a cos_theta_max cutoff");
}

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

// Single-component kernel value. For a rigid (k, k') pair at scattering angle
// theta the isotropic incident average plus the azimuthal integral is a
// uniform orientation average of the momentum transfer q, and the plane-wave
// average over orientations is sinc(|q| xi) with |q| = k sqrt(2 (1 - cos)).
double kernel_component(const GasSpec& gas, double k, double xi) {
  return adaptive_cos_theta(
      gas, k,
      [&](double c) {
        const double q = k * std::sqrt(std::max(0.0, 2.0 * (1.0 - c)));
        return 1.0 - sinc(q * xi);
      },
      "localization kernel");
}

double kernel_value(const GasSpec& gas, double xi) {
  double f = 0.0;
  for (const auto& comp : gas.flux) f += comp.weight * kernel_component(gas, comp.k, xi);
  return f;
}

}  // namespace

GasSpec GasSpec::hard_sphere(double radius, double k0, double flux_total) {
  if (radius <= 0.0) throw std::invalid_argument("GasSpec: radius must be > 0");
  if (k0 <= 0.0) throw std::invalid_argument("GasSpec: k0 must be > 0");
  if (flux_total <= 0.0) throw std::invalid_argument("GasSpec: flux must be > 0");
  GasSpec gas;
  const double r2 = radius * radius;
  gas.dsigma = [r2](double, double) { return 0.25 * r2; };
  gas.flux = {{k0, flux_total}};
  return gas;
}

void GasSpec::validate() const {
  if (!dsigma) throw std::invalid_argument("GasSpec: cross-section is not set");
  if (flux.empty()) throw std::invalid_argument("GasSpec: flux distribution is empty");
  for (const auto& comp : flux) {
    if (!(comp.k >= 0.0)) throw std::invalid_argument("GasSpec: flux momenta must be >= 0");
    if (!(comp.weight > 0.0)) throw std::invalid_argument("GasSpec: flux weights must be > 0");
  }
  if (!(cos_theta_max > -1.0 && cos_theta_max <= 1.0))
    throw std::invalid_argument("GasSpec: cos_theta_max must lie in (-1, 1]");
  if (particle_mass <= 0.0) throw std::invalid_argument("GasSpec: particle mass must be > 0");
  if (temperature < 0.0) throw std::invalid_argument("GasSpec: temperature must be >= 0");
}

double total_cross_section(const GasSpec& gas, double k) {
  gas.validate();
  return adaptive_cos_theta(
      gas, k, [](double) { return 1.0; }, "total cross-section");
}

KernelTable localization_kernel(const GasSpec& gas, const std::vector<double>& xi_grid) {
  gas.validate();
  KernelTable table;
  table.xi = xi_grid;
  table.f.reserve(xi_grid.size());
  for (double xi : xi_grid) table.f.push_back(kernel_value(gas, xi));
  return table;
}

double effective_gpp(const GasSpec& gas, double hbar) {
  gas.validate();
  if (hbar <= 0.0) throw std::invalid_argument("effective_gpp: hbar must be > 0");

  double rate = 0.0, k_max = 0.0;
  for (const auto& comp : gas.flux) {
    rate += comp.weight * total_cross_section(gas, comp.k);
    k_max = std::max(k_max, comp.k);
  }
  if (rate <= 0.0 || k_max <= 0.0) return 0.0;

  // Richardson pair F(xi), F(xi/2) isolates the quadratic coefficient; shrink
  // xi until the two estimates agree.
  double xi = 0.1 / k_max;
  for (int attempt = 0; attempt < 12; ++attempt) {
    const double full = kernel_value(gas, xi) / (xi * xi);
    const double half = kernel_value(gas, 0.5 * xi) / (0.25 * xi * xi);
    if (std::abs(full - half) <= 1e-3 * std::abs(half)) {
      const double lambda = (4.0 * half - full) / 3.0;
      return hbar * hbar * lambda;
    }
    xi *= 0.5;
  }
  throw std::runtime_error("effective_gpp: no quadratic regime found at small separations");
}

}  // namespace decoh
