#pragma once

#include "decoh/symbol.hpp"

namespace decoh {

struct QuasiProjector {
  OperatorSymbol symbol;
  Operator op;
  bool small_cell_warning = false;  // area below 10 * 2*pi*hbar
};

/// Microlocal quasi-projector for a phase-space cell: symbol 1 deep inside,
/// raised-cosine roll-off across the margin band, 0 outside. Cells with area
/// below 2*pi*hbar are rejected.
QuasiProjector quasi_projector(const PhaseCell& cell, const PhaseSpaceGrid& grid);

}  // namespace decoh
