#pragma once

#include <optional>
#include <vector>

#include "decoh/grid.hpp"
#include "decoh/operator.hpp"
#include "decoh/poly.hpp"

namespace decoh {

/// One environment matrix element (n,n') of an operator-valued symbol. A
/// polynomial backing, when present, supplies exact derivatives for the
/// star-product terms (grid samples of unbounded coordinates are periodic
/// sawtooths whose spectral derivatives would be wrong).
struct SymbolBlock {
  int n = 0, nprime = 0;
  ComplexField values;
  std::optional<Poly2> poly;
};

/// Weyl symbol with block-sparse environment structure; scalar symbols have a
/// single (0,0) block and env_dim 1.
struct OperatorSymbol {
  PhaseSpaceGrid grid;
  int env_dim = 1;
  std::vector<SymbolBlock> blocks;

  static OperatorSymbol scalar(ComplexField values, const PhaseSpaceGrid& g);
  static OperatorSymbol from_poly(const Poly2& p, const PhaseSpaceGrid& g);
  static OperatorSymbol coordinate_x(const PhaseSpaceGrid& g);
  static OperatorSymbol coordinate_p(const PhaseSpaceGrid& g);
  static OperatorSymbol constant(Complex c, const PhaseSpaceGrid& g);

  bool is_scalar() const { return env_dim == 1 && blocks.size() == 1; }
  const SymbolBlock* block(int n, int nprime) const;

  OperatorSymbol operator+(const OperatorSymbol& o) const;
  OperatorSymbol operator-(const OperatorSymbol& o) const;
  OperatorSymbol operator*(Complex c) const;

  /// max |A_nn' - conj(A_n'n)| over blocks and grid nodes.
  double hermiticity_error() const;
};

/// Weyl symbol of a collective operator in the position-grid basis.
OperatorSymbol symbol_of(const Operator& op, const PhaseSpaceGrid& grid);

/// Inverse for scalar symbols.
Operator operator_of(const OperatorSymbol& a);

/// Star product truncated after the given order (0, 1 or 2); environment
/// block ordering follows the operator product.
OperatorSymbol moyal_product(const OperatorSymbol& a, const OperatorSymbol& b, int order);

/// (2*pi*hbar)^-1 int dx dp of the environment-diagonal blocks.
Complex symbol_trace(const OperatorSymbol& a);

}  // namespace decoh
