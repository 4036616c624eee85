#include <doctest.h>

#include <decoh/rng.hpp>
#include <decoh/wigner.hpp>

#include "test_util.hpp"

using namespace decoh;

namespace {

PhaseSpaceGrid default_grid(int n = 128, double half = 8.0, double hbar = 1.0) {
  return PhaseSpaceGrid::conjugate(-half, half, n, hbar);
}

Matrix momentum_operator(const PhaseSpaceGrid& g) {
  const int n = g.n_x;
  Matrix p = Matrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    Vector phi(n);
    for (int a = 0; a < n; ++a) phi(a) = std::polar(1.0 / std::sqrt(double(n)), g.p(m) * g.x(a) / g.hbar);
    p += g.p(m) * (phi * phi.adjoint());
  }
  return p;
}

}  // namespace

TEST_CASE("symbols of identity, position and momentum") {
  const auto g = default_grid();
  const int n = g.n_x;

  const ComplexField one = matrix_to_symbol(Matrix::Identity(n, n), g);
  CHECK((one - 1.0).abs().maxCoeff() < 1e-12);

  Matrix xop = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) xop(j, j) = g.x(j);
  const ComplexField xs = matrix_to_symbol(xop, g);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m) CHECK(std::abs(xs(j, m) - g.x(j)) < 1e-10);

  const ComplexField ps = matrix_to_symbol(momentum_operator(g), g);
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m) worst = std::max(worst, std::abs(ps(j, m) - g.p(m)));
  CHECK(worst < 1e-9);
}

TEST_CASE("symbol transform is an exact inverse pair") {
  const auto g = default_grid(64);
  auto rng = substream(3, "weyl-roundtrip");
  std::normal_distribution<double> gauss;
  Matrix m(g.n_x, g.n_x);
  for (int i = 0; i < g.n_x; ++i)
    for (int j = 0; j < g.n_x; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  const Matrix back = symbol_to_matrix(matrix_to_symbol(m, g), g);
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("wigner transform of a gaussian packet") {
  const auto g = default_grid(256, 12.0);
  const double x0 = 0.9, p0 = -1.7, sigma = 1.0;
  const Vector psi = testutil::gaussian_packet(g, x0, p0, sigma);
  const DensityOperator rho(Operator((psi * psi.adjoint()).eval(), SpaceTag::Collective));
  const auto w = wigner_transform(rho, g);

  CHECK(w.max_imag < 1e-10);
  CHECK(w.integral() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(w.purity() == doctest::Approx(1.0).epsilon(1e-8));

  double worst = 0.0;
  for (int j = 0; j < g.n_x; ++j)
    for (int m = 0; m < g.n_p; ++m) {
      const double x = g.x(j), p = g.p(m);
      const double ref = 2.0 * std::exp(-(x - x0) * (x - x0) / (sigma * sigma) -
                                        sigma * sigma * (p - p0) * (p - p0) / (g.hbar * g.hbar));
      worst = std::max(worst, std::abs(w.values(j, m) - ref));
    }
  CHECK(worst < 1e-8);

  // position marginal: dp/(2 pi hbar) sum_m W = |psi|^2 / dx
  for (int j = 0; j < g.n_x; ++j) {
    const double marg = g.dp() / (2.0 * M_PI * g.hbar) * w.values.row(j).sum();
    CHECK(std::abs(marg - std::norm(psi(j)) / g.dx()) < 1e-8);
  }
}

TEST_CASE("cat state interference fringes match the two-gaussian closed form") {
  const auto g = default_grid(256, 12.0);
  const double d = 4.0, sigma = 0.8;  // fringe period 2*pi*hbar/d = 6 dp exactly
  const Vector psi1 = testutil::gaussian_packet(g, -d / 2, 0.0, sigma);
  const Vector psi2 = testutil::gaussian_packet(g, d / 2, 0.0, sigma);
  Vector cat = psi1 + psi2;
  cat /= cat.norm();
  const DensityOperator rho(Operator((cat * cat.adjoint()).eval(), SpaceTag::Collective));
  const auto w = wigner_transform(rho, g);

  const double norm = 2.0 * (1.0 + std::exp(-d * d / (4.0 * sigma * sigma)));
  double worst = 0.0;
  for (int j = 0; j < g.n_x; ++j)
    for (int m = 0; m < g.n_p; ++m) {
      const double x = g.x(j), p = g.p(m);
      auto blob = [&](double c) {
        return 2.0 * std::exp(-(x - c) * (x - c) / (sigma * sigma) -
                              sigma * sigma * p * p / (g.hbar * g.hbar));
      };
      const double interference = 2.0 *
                                  std::exp(-x * x / (sigma * sigma) -
                                           sigma * sigma * p * p / (g.hbar * g.hbar)) *
                                  std::cos(p * d / g.hbar);
      const double ref = (blob(-d / 2) + blob(d / 2) + 2.0 * interference) / norm;
      worst = std::max(worst, std::abs(w.values(j, m) - ref));
    }
  CHECK(worst < 1e-8);

  // fringe period in p at the midpoint is 2 pi hbar / d
  const int jmid = g.n_x / 2;
  const int mmid = g.n_p / 2;
  const int period = static_cast<int>(std::round(2.0 * M_PI * g.hbar / d / g.dp()));
  REQUIRE(period > 1);
  auto envelope_normalized = [&](int m) {
    const double p = g.p(m);
    return w.values(jmid, m) * std::exp(sigma * sigma * p * p / (g.hbar * g.hbar));
  };
  const double center = envelope_normalized(mmid);
  CHECK(center > 1.0);  // constructive fringe at the midpoint
  CHECK(std::abs(envelope_normalized(mmid + period) - center) < 0.02 * center);
  CHECK(envelope_normalized(mmid + period / 2) < -0.5 * center);  // destructive half-way
}

TEST_CASE("wigner round trip on localized hermitian densities") {
  const auto g = default_grid();
  auto rng = substream(5, "weyl-local");
  for (int trial = 0; trial < 4; ++trial) {
    const Matrix rho = testutil::random_localized_density(g, rng);
    const auto w = wigner_transform(DensityOperator(Operator(rho, SpaceTag::Collective)), g);
    CHECK(w.max_imag < 1e-10);
    const DensityOperator back = inverse_wigner(w);
    CHECK((back.mat() - rho).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(w.purity() - purity(DensityOperator(Operator(rho, SpaceTag::Collective)))) <
          1e-9);
  }
}

TEST_CASE("constant wigner field inverts to a multiple of the identity") {
  const auto g = default_grid(64);
  WignerFunction w;
  w.grid = g;
  w.values = RealField::Constant(g.n_x, g.n_p, 0.37);
  const DensityOperator rho = inverse_wigner(w);
  CHECK((rho.mat() - 0.37 * Matrix::Identity(g.n_x, g.n_x)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("wigner transform is linear and trace preserving") {
  const auto g = default_grid(64);
  auto rng = substream(9, "weyl-lin");
  const Matrix a = testutil::random_localized_density(g, rng);
  const Matrix b = testutil::random_localized_density(g, rng);
  const auto wa = wigner_transform(DensityOperator(Operator(a, SpaceTag::Collective)), g);
  const auto wb = wigner_transform(DensityOperator(Operator(b, SpaceTag::Collective)), g);
  const auto wab = wigner_transform(
      DensityOperator(Operator((0.3 * a + 0.7 * b).eval(), SpaceTag::Collective)), g);
  CHECK((wab.values - 0.3 * wa.values - 0.7 * wb.values).abs().maxCoeff() < 1e-12);
  CHECK(wa.integral() == doctest::Approx(1.0).epsilon(1e-10));
}
