#include "decoh/wigner.hpp"

#include <vector>

#include "fft.hpp"

namespace decoh {

namespace {

void check_grid(const PhaseSpaceGrid& g, int dim) {
  g.require_transform_consistent();
  if (dim != g.n_x)
    throw std::invalid_argument("wigner: operator dimension must equal the position grid size");
}

}  // namespace

ComplexField matrix_to_symbol(const Matrix& m, const PhaseSpaceGrid& grid) {
  check_grid(grid, static_cast<int>(m.rows()));
  const int n = grid.n_x;
  ComplexField chords(n, n);  // (position j, chord index k mod n)
  std::vector<Complex> buf(n);
  for (int ks = -n / 2; ks < n / 2; ++ks) {
    const int ki = (ks + n) % n;
    for (int a = 0; a < n; ++a) buf[a] = m(a, ((a - ks) % n + n) % n);
    detail::Fft1d::run(buf.data(), n, -1);
    for (int qi = 0; qi < n; ++qi) {
      const double qs = signed_freq(qi, n);
      buf[qi] *= std::polar(1.0, M_PI * qs * ks / n);
    }
    detail::Fft1d::run(buf.data(), n, +1);
    const Complex offset = std::polar(1.0, -grid.p_min * ks * grid.dx() / grid.hbar);
    for (int j = 0; j < n; ++j) chords(j, ki) = buf[j] * offset / static_cast<double>(n);
  }
  fft_along_p(chords, -1);
  return chords;
}

Matrix symbol_to_matrix(const ComplexField& a, const PhaseSpaceGrid& grid) {
  check_grid(grid, static_cast<int>(a.rows()));
  if (a.cols() != grid.n_p) throw std::invalid_argument("wigner: symbol does not match grid");
  const int n = grid.n_x;
  ComplexField chords = a;
  fft_along_p(chords, +1);
  chords /= static_cast<double>(n);
  Matrix m(n, n);
  std::vector<Complex> buf(n);
  for (int ks = -n / 2; ks < n / 2; ++ks) {
    const int ki = (ks + n) % n;
    const Complex offset = std::polar(1.0, grid.p_min * ks * grid.dx() / grid.hbar);
    for (int j = 0; j < n; ++j) buf[j] = chords(j, ki) * offset;
    detail::Fft1d::run(buf.data(), n, -1);
    for (int qi = 0; qi < n; ++qi) {
      const double qs = signed_freq(qi, n);
      buf[qi] *= std::polar(1.0, -M_PI * qs * ks / n);
    }
    detail::Fft1d::run(buf.data(), n, +1);
    for (int a2 = 0; a2 < n; ++a2) m(a2, ((a2 - ks) % n + n) % n) = buf[a2] / static_cast<double>(n);
  }
  return m;
}

double WignerFunction::integral() const {
  return grid.cell_area() / (2.0 * M_PI * grid.hbar) * values.sum();
}

double WignerFunction::purity() const {
  return grid.cell_area() / (2.0 * M_PI * grid.hbar) * values.square().sum();
}

WignerFunction wigner_transform(const DensityOperator& rho_r, const PhaseSpaceGrid& grid) {
  const ComplexField symbol = matrix_to_symbol(rho_r.mat(), grid);
  WignerFunction w;
  w.grid = grid;
  w.values = symbol.real();
  w.max_imag = symbol.imag().abs().maxCoeff();
  return w;
}

DensityOperator inverse_wigner(const WignerFunction& w) {
  const Matrix m = symbol_to_matrix(w.values.cast<Complex>(), w.grid);
  return DensityOperator(Operator(((m + m.adjoint()) / 2.0).eval(), SpaceTag::Collective), 1e-6);
}

}  // namespace decoh
