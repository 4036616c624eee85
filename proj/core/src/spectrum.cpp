#include "decoh/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace decoh {

void CouplingSpectrum::validate(double tol) const {
  if (!(beta >= 0.0)) throw std::invalid_argument("CouplingSpectrum: beta must be >= 0");
  if (!(hbar > 0.0)) throw std::invalid_argument("CouplingSpectrum: hbar must be positive");
  double scale = 0.0;
  for (const auto& t : transitions) scale = std::max({scale, std::abs(t.h1x), std::abs(t.h1p)});
  std::map<std::pair<int, int>, const Transition*> index;
  for (const auto& t : transitions) {
    if (!(t.weight > 0.0)) throw std::invalid_argument("CouplingSpectrum: weights must be > 0");
    if (!index.emplace(std::make_pair(t.n, t.nprime), &t).second)
      throw std::invalid_argument("CouplingSpectrum: duplicate transition");
  }
  for (const auto& t : transitions) {
    auto it = index.find({t.nprime, t.n});
    if (it == index.end())
      throw std::invalid_argument("CouplingSpectrum: missing Hermitian partner transition");
    const Transition& u = *it->second;
    if (std::abs(t.h1x - std::conj(u.h1x)) > tol * scale ||
        std::abs(t.h1p - std::conj(u.h1p)) > tol * scale)
      throw std::invalid_argument("CouplingSpectrum: Hermiticity violated");
    if (std::abs(t.omega + u.omega) > tol * (1.0 + std::abs(t.omega)))
      throw std::invalid_argument("CouplingSpectrum: omega must be antisymmetric");
  }
}

CouplingSpectrum oscillator_bath(const std::vector<std::pair<Complex, double>>& couplings,
                                 double temperature, int mode_truncation, BathForm form,
                                 double hbar, double mass) {
  if (mode_truncation < 2)
    throw std::invalid_argument("oscillator_bath: need at least 2 levels per mode");
  if (temperature < 0.0) throw std::invalid_argument("oscillator_bath: negative temperature");

  CouplingSpectrum spec;
  spec.hbar = hbar;
  const double beta_max = 700.0;  // exp underflow guard on the level weights
  spec.beta = temperature > 0.0 ? 1.0 / temperature : beta_max;
  spec.beta_clamped = !(temperature > 0.0);

  double omega_max = 0.0;
  int base = 0;
  for (const auto& [lambda, omega] : couplings) {
    omega_max = std::max(omega_max, omega);
    if (lambda == Complex(0.0, 0.0)) {
      base += mode_truncation;
      continue;
    }
    // per-mode thermal weights, normalized within the truncated ladder
    std::vector<double> rho(mode_truncation);
    double z = 0.0;
    for (int m = 0; m < mode_truncation; ++m) {
      rho[m] = std::exp(-std::min(spec.beta * hbar * omega * m, beta_max));
      z += rho[m];
    }
    for (double& r : rho) r /= z;

    for (int m = 0; m + 1 < mode_truncation; ++m) {
      const double elem = std::sqrt(m + 1.0);
      // p_nn' = sqrt(rho_n rho_n'), equal to exp(-beta(E_n+E_n')/2 - alpha);
      // factored square roots avoid product underflow near zero temperature,
      // and fully underflowed transitions are dropped
      const double weight = std::sqrt(rho[m]) * std::sqrt(rho[m + 1]);
      if (!(weight > 0.0)) continue;
      Transition down;  // n = m (lower), n' = m+1: lowering element of a
      down.n = base + m;
      down.nprime = base + m + 1;
      down.h1x = lambda * elem;
      down.omega = -omega;
      down.weight = weight;
      Transition up;
      up.n = base + m + 1;
      up.nprime = base + m;
      up.h1x = std::conj(lambda) * elem;
      up.omega = omega;
      up.weight = weight;
      if (form == BathForm::Ladder) {
        const Complex i(0.0, 1.0);
        down.h1p = -i * down.h1x / (mass * omega);
        up.h1p = i * up.h1x / (mass * omega);
      }
      spec.transitions.push_back(down);
      spec.transitions.push_back(up);
    }
    base += mode_truncation;
  }
  spec.omega_cutoff = omega_max > 0.0 ? omega_max : 1.0;
  return spec;
}

}  // namespace decoh
