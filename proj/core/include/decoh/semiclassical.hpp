#pragma once

#include <optional>
#include <vector>

#include "decoh/coefficients.hpp"
#include "decoh/evolution_spec.hpp"
#include "decoh/poly.hpp"
#include "decoh/wigner.hpp"

namespace decoh {

/// Hamilton function on the phase-space grid with derivatives cached through
/// third order. Polynomial-backed fields get exact derivatives; grid-backed
/// fields differentiate spectrally and therefore assume periodicity.
struct HamiltonField {
  PhaseSpaceGrid grid;
  RealField h;
  RealField h_x, h_p;
  RealField h_xxx, h_xpp, h_pxx, h_ppp;

  static HamiltonField from_poly(const Poly2& poly, const PhaseSpaceGrid& grid);
  static HamiltonField from_field(const RealField& values, const PhaseSpaceGrid& grid);
};

struct WignerTrajectory {
  std::vector<double> times;
  std::vector<WignerFunction> states;
};

/// Liouville flow dW/dt = {h, W} with the hbar^2 Moyal correction at
/// hbar_order 2; when a decoherence tensor is supplied the smearing is
/// combined by Strang splitting around each flow step. Aborts if probability
/// mass reaches the grid boundary.
WignerTrajectory semiclassical_evolve(const WignerFunction& w0, const HamiltonField& h,
                                      const EvolutionSpec& spec,
                                      const std::optional<DecoherenceTensor>& g = std::nullopt,
                                      int snapshot_stride = 1);

}  // namespace decoh
