#pragma once

#include <optional>
#include <vector>

#include "decoh/evolution_spec.hpp"
#include "decoh/operator.hpp"
#include "decoh/spectrum.hpp"

namespace decoh {

/// Collective-side factors of the coupling H1 = X (x) Bx + P (x) Bp; the
/// environment matrix elements of Bx, Bp live in the CouplingSpectrum.
struct CollectiveCoupling {
  Operator x_op;
  std::optional<Operator> p_op;
};

struct MasterTrajectory {
  std::vector<double> times;
  std::vector<DensityOperator> states;
};

/// Reduced evolution under the memory-kernel master equation, either with the
/// full retarded kernel (history buffer, collective rotation inside the
/// integral) or in the Markovian limit where retardation is dropped.
/// Requires a renormalized coupling: the thermal mean of each environment
/// factor must vanish.
MasterTrajectory evolve_master(const DensityOperator& rho_r0, const Operator& h_c,
                               const CollectiveCoupling& coupling,
                               const CouplingSpectrum& spectrum, const EvolutionSpec& spec);

}  // namespace decoh
