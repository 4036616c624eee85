#pragma once

#include <vector>

#include "decoh/operator.hpp"

namespace decoh {

/// One environment transition entering the coefficient sums.
struct Transition {
  int n = 0, nprime = 0;
  Complex h1x{0.0, 0.0};  // <n| dH1/dx |n'>
  Complex h1p{0.0, 0.0};  // <n| dH1/dp |n'>
  double omega = 0.0;     // omega_nn' = (E_n - E_n')/hbar
  double weight = 0.0;    // p_nn' = exp(-beta (E_n + E_n')/2 - alpha)
};

/// Environment transition data feeding all coefficient formulas.
struct CouplingSpectrum {
  std::vector<Transition> transitions;
  double beta = 0.0;
  double hbar = 1.0;
  double omega_cutoff = 1.0;           // bandwidth Omega
  double regularization_epsilon = 0.0;  // 0 selects the default Omega/1000
  bool beta_clamped = false;

  double epsilon() const {
    return regularization_epsilon > 0.0 ? regularization_epsilon : omega_cutoff / 1000.0;
  }

  /// Hermiticity pairing, positive weights, omega antisymmetry.
  void validate(double tol = 1e-9) const;
};

/// Thermal-weighted transitions of truncated oscillator modes.
enum class BathForm { PositionOnly, Ladder };

CouplingSpectrum oscillator_bath(const std::vector<std::pair<Complex, double>>& couplings,
                                 double temperature, int mode_truncation, BathForm form,
                                 double hbar = 1.0, double mass = 1.0);

}  // namespace decoh
