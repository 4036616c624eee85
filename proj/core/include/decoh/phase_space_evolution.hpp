#pragma once

#include "decoh/coefficients.hpp"
#include "decoh/grid.hpp"
#include "decoh/operator.hpp"
#include "decoh/wigner.hpp"

namespace decoh {

/// Degenerate pure decoherence in closed form. With only g^{pp} nonzero the
/// position matrix elements decay as exp(-g^{pp}(x-x')^2 t/hbar^2); with only
/// g^{xx} nonzero the dual statement holds in the momentum basis of the grid.
DensityOperator pure_decoherence_closed(const DensityOperator& rho_r0, const DecoherenceTensor& g,
                                        double t, const PhaseSpaceGrid& grid);

/// Non-degenerate smearing: Gaussian convolution with covariance 2gt, applied
/// as an exact Fourier multiplier.
WignerFunction heat_kernel_evolve(const WignerFunction& w0, const DecoherenceTensor& g, double t);

/// Explicit time stepping of dW/dt = d_i(g^{ij} d_j W) with spectral spatial
/// derivatives; independent cross-check of heat_kernel_evolve. The caller's dt
/// must respect the explicit-scheme bound 0.4*min(dx^2,dp^2)/max_eig(g);
/// internally the step is subdivided further to the spectral stability limit.
WignerFunction finite_difference_pure(const WignerFunction& w0, const DecoherenceTensor& g,
                                      double t, double dt);

}  // namespace decoh
