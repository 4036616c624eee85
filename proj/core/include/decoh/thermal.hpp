#pragma once

#include "decoh/operator.hpp"

namespace decoh {

/// Normalized environment density rho_e = exp(-beta H_e - alpha) together with
/// the energy moments used by the projection superoperator.
struct ThermalEnvironment {
  Operator hamiltonian;   // environment-tagged, Hermitian
  DensityOperator rho_e;  // unit trace
  double beta = 0.0;
  double alpha = 0.0;     // log of the partition sum
  double energy = 0.0;    // E = tr(H_e rho_e)
  double variance = 0.0;  // Delta^2 = tr(H_e^2 rho_e) - E^2
};

/// beta = 0 gives the maximally mixed environment; beta < 0 is rejected.
ThermalEnvironment thermal_state(const Operator& h_e, double beta);

}  // namespace decoh
