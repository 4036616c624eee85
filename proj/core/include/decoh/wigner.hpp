#pragma once

#include "decoh/fields.hpp"
#include "decoh/grid.hpp"
#include "decoh/operator.hpp"

namespace decoh {

/// Wigner function of a collective density on a transform-consistent grid.
/// Convention: W(x,p) = sum_xi dxi-free chord transform so that
/// (dx*dp/2*pi*hbar) * sum W = tr(rho) exactly and the symbol of the identity
/// is the constant 1.
struct WignerFunction {
  PhaseSpaceGrid grid;
  RealField values;
  double max_imag = 0.0;  // residual imaginary part discarded by the transform

  double integral() const;  // (2*pi*hbar)^-1 int W dx dp
  double purity() const;    // (2*pi*hbar)^-1 int W^2 dx dp
  double boundary_mass() const { return boundary_mass_fraction(values); }
};

/// Position-basis matrix -> discrete Weyl symbol on the grid (exactly
/// invertible; chords interpolated to half-integer offsets spectrally).
ComplexField matrix_to_symbol(const Matrix& m, const PhaseSpaceGrid& grid);

/// Exact inverse of matrix_to_symbol.
Matrix symbol_to_matrix(const ComplexField& a, const PhaseSpaceGrid& grid);

WignerFunction wigner_transform(const DensityOperator& rho_r, const PhaseSpaceGrid& grid);

/// Round-trip inverse; re-Hermitizes the reconstructed matrix.
DensityOperator inverse_wigner(const WignerFunction& w);

}  // namespace decoh
