#include <doctest.h>

#include <decoh/rng.hpp>
#include <decoh/symbol.hpp>
#include <decoh/wigner.hpp>

#include "test_util.hpp"

using namespace decoh;

namespace {

ComplexField gaussian_bump(const PhaseSpaceGrid& g, double x0, double p0, double width2) {
  ComplexField f(g.n_x, g.n_p);
  for (int j = 0; j < g.n_x; ++j)
    for (int m = 0; m < g.n_p; ++m) {
      const double x = g.x(j) - x0, p = g.p(m) - p0;
      f(j, m) = std::exp(-(x * x + p * p) / width2);
    }
  return f;
}

}  // namespace

TEST_CASE("moyal product leading terms") {
  const auto g = PhaseSpaceGrid::conjugate(-8.0, 8.0, 64, 1.0);

  SUBCASE("order 0 is the pointwise product") {
    const auto a = OperatorSymbol::scalar(gaussian_bump(g, 0.0, 0.0, 4.0), g);
    const auto b = OperatorSymbol::scalar(gaussian_bump(g, 0.5, -0.3, 6.0), g);
    const auto c = moyal_product(a, b, 0);
    CHECK((c.blocks[0].values - a.blocks[0].values * b.blocks[0].values).abs().maxCoeff() == 0.0);
  }

  SUBCASE("canonical commutator symbol") {
    const auto x = OperatorSymbol::coordinate_x(g);
    const auto p = OperatorSymbol::coordinate_p(g);
    const auto comm = moyal_product(x, p, 1) - moyal_product(p, x, 1);
    CHECK((comm.blocks[0].values - Complex(0.0, g.hbar)).abs().maxCoeff() < 1e-14);
  }

  SUBCASE("series terminates for quadratic symbols") {
    Poly2 h1 = Poly2::coord_x() * Poly2::coord_x() + Poly2::coord_p() * Poly2::coord_p() * 0.5 +
               Poly2::coord_x() * Poly2::coord_p() * 0.3 + Poly2::coord_x() +
               Poly2::constant(2.0);
    Poly2 h2 = Poly2::coord_x() * Poly2::coord_x() * 2.0 - Poly2::coord_p() +
               Poly2::coord_x() * Poly2::coord_p() * -0.7;
    const auto a = OperatorSymbol::from_poly(h1, g);
    const auto b = OperatorSymbol::from_poly(h2, g);
    const auto star = moyal_product(a, b, 2);
    REQUIRE(star.blocks[0].poly.has_value());

    // grid-free oracle: quantize both sides on a truncated ladder basis,
    // where the operator product is exact away from the truncation edge
    const int d = 40;
    const double hbar = g.hbar;
    Matrix xl = Matrix::Zero(d, d), pl = Matrix::Zero(d, d);
    for (int k = 1; k < d; ++k) {
      xl(k - 1, k) = xl(k, k - 1) = std::sqrt(hbar * k / 2.0);
      pl(k - 1, k) = Complex(0.0, -std::sqrt(hbar * k / 2.0));
      pl(k, k - 1) = Complex(0.0, std::sqrt(hbar * k / 2.0));
    }
    auto binom = [](int n, int k) {
      double r = 1.0;
      for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
      return r;
    };
    auto quantize = [&](const Poly2& poly) {
      Matrix out = Matrix::Zero(d, d);
      std::vector<Matrix> xpow{Matrix::Identity(d, d)}, ppow{Matrix::Identity(d, d)};
      for (int i = 1; i <= std::max(poly.deg_x(), poly.deg_p()) + 1; ++i) {
        xpow.push_back(xpow.back() * xl);
        ppow.push_back(ppow.back() * pl);
      }
      for (int i = 0; i <= poly.deg_x(); ++i)
        for (int j = 0; j <= poly.deg_p(); ++j) {
          const Complex c = poly.at(i, j);
          if (c == 0.0) continue;
          Matrix weyl = Matrix::Zero(d, d);  // McCoy: 2^-j sum_k C(j,k) p^k x^i p^(j-k)
          for (int k = 0; k <= j; ++k)
            weyl += binom(j, k) * (ppow[k] * xpow[i] * ppow[j - k]);
          out += c * weyl / std::pow(2.0, j);
        }
      return out;
    };

    const Matrix lhs = quantize(h1) * quantize(h2);
    const Matrix rhs = quantize(*star.blocks[0].poly);
    const int keep = d - 12;  // stay clear of the truncation boundary
    const double scale = lhs.topLeftCorner(keep, keep).cwiseAbs().maxCoeff();
    CHECK((lhs.topLeftCorner(keep, keep) - rhs.topLeftCorner(keep, keep)).cwiseAbs().maxCoeff() <
          1e-9 * scale);
  }
}

TEST_CASE("order-2 star product error scales as hbar^3") {
  // fixed window and symbols; halving hbar doubles the consistent grid size
  std::vector<double> errs;
  for (int n = 64; n <= 512; n *= 2) {
    const double hbar = 256.0 / (2.0 * M_PI * n);
    const PhaseSpaceGrid g(-8.0, 8.0, -8.0, 8.0, n, n, hbar);
    REQUIRE(g.transform_consistent());
    const auto a = OperatorSymbol::scalar(gaussian_bump(g, 0.4, 0.2, 4.0), g);
    const auto b = OperatorSymbol::scalar(gaussian_bump(g, -0.3, 0.6, 5.0), g);
    const Matrix ab = symbol_to_matrix(a.blocks[0].values, g) *
                      symbol_to_matrix(b.blocks[0].values, g);
    const ComplexField exact = matrix_to_symbol(ab, g);
    const auto star = moyal_product(a, b, 2);
    errs.push_back((star.blocks[0].values - exact).abs().maxCoeff());
  }
  for (size_t i = 0; i + 1 < errs.size(); ++i) {
    const double order = std::log2(errs[i] / errs[i + 1]);
    CHECK(order > 2.7);
    CHECK(order < 3.3);
  }
}

TEST_CASE("symbol trace") {
  const auto g = PhaseSpaceGrid::conjugate(-8.0, 8.0, 128, 1.0);
  auto rng = substream(21, "symtrace");
  const Matrix rho = testutil::random_localized_density(g, rng);
  const auto sym = symbol_of(Operator(rho, SpaceTag::Collective), g);

  CHECK(std::abs(symbol_trace(sym) - 1.0) < 1e-10);
  const double pur = purity(DensityOperator(Operator(rho, SpaceTag::Collective)));
  CHECK(std::abs(symbol_trace(moyal_product(sym, sym, 2)) - pur) < 1e-6);

  const auto zero = OperatorSymbol::scalar(ComplexField::Zero(g.n_x, g.n_p), g);
  CHECK(std::abs(symbol_trace(zero)) == 0.0);
}

TEST_CASE("environment block ordering follows the operator product") {
  const auto g = PhaseSpaceGrid::conjugate(-8.0, 8.0, 32, 1.0);
  // A has a single (0,1) block, B a single (1,0) block: AB lands in (0,0),
  // BA in (1,1).
  OperatorSymbol a, b;
  a.grid = b.grid = g;
  a.env_dim = b.env_dim = 2;
  a.blocks.push_back({0, 1, gaussian_bump(g, 0.0, 0.0, 4.0), std::nullopt});
  b.blocks.push_back({1, 0, gaussian_bump(g, 0.2, 0.1, 5.0), std::nullopt});
  const auto ab = moyal_product(a, b, 1);
  const auto ba = moyal_product(b, a, 1);
  REQUIRE(ab.blocks.size() == 1);
  REQUIRE(ba.blocks.size() == 1);
  CHECK(ab.blocks[0].n == 0);
  CHECK(ab.blocks[0].nprime == 0);
  CHECK(ba.blocks[0].n == 1);
  CHECK(ba.blocks[0].nprime == 1);
  CHECK((ab.blocks[0].values - ba.blocks[0].values).abs().maxCoeff() > 1e-6);
}
