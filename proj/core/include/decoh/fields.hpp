#pragma once

#include "decoh/grid.hpp"

namespace decoh {

/// Unnormalized FFT along the x (first) or p (second) index; sign -1 forward.
void fft_along_x(ComplexField& f, int sign);
void fft_along_p(ComplexField& f, int sign);

/// Signed FFT frequency for index j of an n-point grid (j<=n/2-1 -> j, else j-n).
int signed_freq(int j, int n);

/// Spectral partial derivatives on the periodic grid. Odd orders zero the
/// Nyquist mode.
ComplexField spectral_dx(const ComplexField& f, const PhaseSpaceGrid& g, int order = 1);
ComplexField spectral_dp(const ComplexField& f, const PhaseSpaceGrid& g, int order = 1);
RealField spectral_dx(const RealField& f, const PhaseSpaceGrid& g, int order = 1);
RealField spectral_dp(const RealField& f, const PhaseSpaceGrid& g, int order = 1);

/// Fraction of |f| mass in the outermost ring of the grid.
double boundary_mass_fraction(const RealField& f);

}  // namespace decoh
