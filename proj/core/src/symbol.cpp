#include "decoh/symbol.hpp"

#include <map>

#include "decoh/fields.hpp"
#include "decoh/wigner.hpp"

namespace decoh {

OperatorSymbol OperatorSymbol::scalar(ComplexField values, const PhaseSpaceGrid& g) {
  if (values.rows() != g.n_x || values.cols() != g.n_p)
    throw std::invalid_argument("OperatorSymbol: field does not match grid");
  OperatorSymbol s;
  s.grid = g;
  s.blocks.push_back({0, 0, std::move(values), std::nullopt});
  return s;
}

OperatorSymbol OperatorSymbol::from_poly(const Poly2& p, const PhaseSpaceGrid& g) {
  OperatorSymbol s;
  s.grid = g;
  s.blocks.push_back({0, 0, p.eval_grid(g), p});
  return s;
}

OperatorSymbol OperatorSymbol::coordinate_x(const PhaseSpaceGrid& g) {
  return from_poly(Poly2::coord_x(), g);
}

OperatorSymbol OperatorSymbol::coordinate_p(const PhaseSpaceGrid& g) {
  return from_poly(Poly2::coord_p(), g);
}

OperatorSymbol OperatorSymbol::constant(Complex c, const PhaseSpaceGrid& g) {
  return from_poly(Poly2::constant(c), g);
}

const SymbolBlock* OperatorSymbol::block(int n, int nprime) const {
  for (const auto& b : blocks)
    if (b.n == n && b.nprime == nprime) return &b;
  return nullptr;
}

namespace {

void check_compatible(const OperatorSymbol& a, const OperatorSymbol& b) {
  if (a.grid != b.grid) throw std::invalid_argument("OperatorSymbol: grid mismatch");
  if (a.env_dim != b.env_dim)
    throw std::invalid_argument("OperatorSymbol: environment dimension mismatch");
}

OperatorSymbol combine(const OperatorSymbol& a, const OperatorSymbol& b, Complex sb) {
  check_compatible(a, b);
  OperatorSymbol out;
  out.grid = a.grid;
  out.env_dim = a.env_dim;
  std::map<std::pair<int, int>, SymbolBlock> acc;
  for (const auto& blk : a.blocks) acc[{blk.n, blk.nprime}] = blk;
  for (const auto& blk : b.blocks) {
    auto it = acc.find({blk.n, blk.nprime});
    if (it == acc.end()) {
      SymbolBlock nb = blk;
      nb.values *= sb;
      if (nb.poly) nb.poly = *nb.poly * sb;
      acc[{blk.n, blk.nprime}] = std::move(nb);
    } else {
      it->second.values += sb * blk.values;
      if (it->second.poly && blk.poly)
        it->second.poly = *it->second.poly + *blk.poly * sb;
      else
        it->second.poly.reset();
    }
  }
  for (auto& [key, blk] : acc) out.blocks.push_back(std::move(blk));
  return out;
}

}  // namespace

OperatorSymbol OperatorSymbol::operator+(const OperatorSymbol& o) const {
  return combine(*this, o, 1.0);
}

OperatorSymbol OperatorSymbol::operator-(const OperatorSymbol& o) const {
  return combine(*this, o, -1.0);
}

OperatorSymbol OperatorSymbol::operator*(Complex c) const {
  OperatorSymbol out = *this;
  for (auto& blk : out.blocks) {
    blk.values *= c;
    if (blk.poly) blk.poly = *blk.poly * c;
  }
  return out;
}

double OperatorSymbol::hermiticity_error() const {
  double worst = 0.0;
  for (const auto& blk : blocks) {
    const SymbolBlock* conj = block(blk.nprime, blk.n);
    if (!conj) {
      worst = std::max(worst, blk.values.abs().maxCoeff());
      continue;
    }
    worst = std::max(worst, (blk.values - conj->values.conjugate()).abs().maxCoeff());
  }
  return worst;
}

OperatorSymbol symbol_of(const Operator& op, const PhaseSpaceGrid& grid) {
  if (op.tag() == SpaceTag::Composite)
    throw std::invalid_argument("symbol_of: composite operators need explicit block assembly");
  return OperatorSymbol::scalar(matrix_to_symbol(op.mat(), grid), grid);
}

Operator operator_of(const OperatorSymbol& a) {
  if (!a.is_scalar())
    throw std::invalid_argument("operator_of: only scalar symbols reconstruct to one operator");
  return Operator(symbol_to_matrix(a.blocks[0].values, a.grid), SpaceTag::Collective);
}

namespace {

/// Partial derivatives of one block through second order; polynomial backing
/// wins over spectral differentiation when present.
struct Derivs {
  ComplexField dx, dp, dxx, dpp, dxp;
  std::optional<Poly2> pdx, pdp, pdxx, pdpp, pdxp;
};

Derivs derivatives(const SymbolBlock& blk, const PhaseSpaceGrid& g, int order) {
  Derivs d;
  if (blk.poly) {
    const Poly2 px = blk.poly->dx();
    const Poly2 pp = blk.poly->dp();
    if (order >= 1) {
      d.dx = px.eval_grid(g);
      d.dp = pp.eval_grid(g);
      d.pdx = px;
      d.pdp = pp;
    }
    if (order >= 2) {
      d.pdxx = px.dx();
      d.pdpp = pp.dp();
      d.pdxp = px.dp();
      d.dxx = d.pdxx->eval_grid(g);
      d.dpp = d.pdpp->eval_grid(g);
      d.dxp = d.pdxp->eval_grid(g);
    }
    return d;
  }
  if (order >= 1) {
    d.dx = spectral_dx(blk.values, g);
    d.dp = spectral_dp(blk.values, g);
  }
  if (order >= 2) {
    d.dxx = spectral_dx(blk.values, g, 2);
    d.dpp = spectral_dp(blk.values, g, 2);
    d.dxp = spectral_dp(d.dx, g);
  }
  return d;
}

}  // namespace

OperatorSymbol moyal_product(const OperatorSymbol& a, const OperatorSymbol& b, int order) {
  check_compatible(a, b);
  if (order < 0 || order > 2) throw std::invalid_argument("moyal_product: order must be 0, 1 or 2");
  const PhaseSpaceGrid& g = a.grid;
  const double hbar = g.hbar;
  const Complex ih2(0.0, -hbar / 2.0);
  const double h28 = -hbar * hbar / 8.0;

  std::map<std::pair<int, int>, SymbolBlock> acc;
  for (const auto& ba : a.blocks) {
    const Derivs da = derivatives(ba, g, order);
    for (const auto& bb : b.blocks) {
      if (ba.nprime != bb.n) continue;
      const Derivs db = derivatives(bb, g, order);

      ComplexField term = ba.values * bb.values;
      if (order >= 1) term += ih2 * (da.dp * db.dx - da.dx * db.dp);
      if (order >= 2) term += h28 * (da.dxx * db.dpp + da.dpp * db.dxx - 2.0 * da.dxp * db.dxp);

      std::optional<Poly2> poly;
      if (ba.poly && bb.poly) {
        Poly2 p = *ba.poly * *bb.poly;
        if (order >= 1) p = p + (*da.pdp * *db.pdx - *da.pdx * *db.pdp) * ih2;
        if (order >= 2)
          p = p + (*da.pdxx * *db.pdpp + *da.pdpp * *db.pdxx - *da.pdxp * *db.pdxp * Complex(2.0)) *
                      Complex(h28);
        poly = p;
      }

      auto key = std::make_pair(ba.n, bb.nprime);
      auto it = acc.find(key);
      if (it == acc.end()) {
        acc[key] = SymbolBlock{ba.n, bb.nprime, std::move(term), std::move(poly)};
      } else {
        it->second.values += term;
        if (it->second.poly && poly)
          it->second.poly = *it->second.poly + *poly;
        else
          it->second.poly.reset();
      }
    }
  }

  OperatorSymbol out;
  out.grid = g;
  out.env_dim = std::max(a.env_dim, b.env_dim);
  for (auto& [key, blk] : acc) out.blocks.push_back(std::move(blk));
  if (out.blocks.empty())
    out = OperatorSymbol::scalar(ComplexField::Zero(g.n_x, g.n_p), g);
  return out;
}

Complex symbol_trace(const OperatorSymbol& a) {
  Complex sum = 0.0;
  for (const auto& blk : a.blocks)
    if (blk.n == blk.nprime) sum += blk.values.sum();
  return sum * a.grid.cell_area() / (2.0 * M_PI * a.grid.hbar);
}

}  // namespace decoh
