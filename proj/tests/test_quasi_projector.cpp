#include <doctest.h>

#include <decoh/quasi_projector.hpp>
#include <decoh/wigner.hpp>

#include "test_util.hpp"

using namespace decoh;

TEST_CASE("cell covering the whole grid gives the identity") {
  const auto g = PhaseSpaceGrid::conjugate(-8.0, 8.0, 64, 1.0);
  PhaseCell cell;
  cell.center_x = 0.0;
  cell.center_p = 0.0;
  // flat region (r <= 1 - margin) must reach the grid corners
  cell.half_width_x = 1.2 * 8.0 / (1.0 - 0.1);
  cell.half_width_p = 1.2 * (g.p_max) / (1.0 - 0.1);
  const auto qp = quasi_projector(cell, g);
  CHECK((qp.op.mat() - Matrix::Identity(g.n_x, g.n_x)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("trace matches the cell area up to the margin correction") {
  const auto g = PhaseSpaceGrid::conjugate(-20.0, 20.0, 128, 1.0);
  PhaseCell cell;
  cell.half_width_x = 10.0;
  cell.half_width_p = 8.0;
  cell.margin = 0.1;
  const auto qp = quasi_projector(cell, g);
  // each raised-cosine factor integrates to 2L(1 - margin/2); grid quadrature
  // of the C^1 profile is accurate to O(dx^2)
  const double expected =
      cell.area() * (1.0 - cell.margin / 2.0) * (1.0 - cell.margin / 2.0) / (2.0 * M_PI * g.hbar);
  CHECK(std::abs(symbol_trace(qp.symbol).real() - expected) < 5e-3 * expected);
  CHECK(std::abs(qp.op.mat().trace().real() - symbol_trace(qp.symbol).real()) < 1e-8 * expected);
  // margin correction keeps it within a few percent of area/(2 pi hbar)
  CHECK(std::abs(qp.op.mat().trace().real() - cell.area() / (2.0 * M_PI * g.hbar)) <
        0.12 * cell.area() / (2.0 * M_PI * g.hbar));
}

TEST_CASE("state deep inside the cell is preserved") {
  const auto g = PhaseSpaceGrid::conjugate(-20.0, 20.0, 256, 1.0);
  PhaseCell cell;
  cell.half_width_x = 12.0;
  cell.half_width_p = 10.0;
  cell.margin = 0.25;
  const auto qp = quasi_projector(cell, g);
  const Vector psi = testutil::gaussian_packet(g, 0.5, -0.3, 1.0);
  const Matrix rho = psi * psi.adjoint();
  CHECK((qp.op.mat() * rho - rho).norm() < 1e-6 * rho.norm());
}

TEST_CASE("idempotency error shrinks as the cell grows") {
  const auto g = PhaseSpaceGrid::conjugate(-32.0, 32.0, 256, 1.0);
  double prev = 1e100;
  for (double scale : {4.0, 8.0, 16.0}) {
    PhaseCell cell;
    cell.half_width_x = scale;
    cell.half_width_p = scale * g.p_max / 32.0;
    const auto qp = quasi_projector(cell, g);
    const Matrix p = qp.op.mat();
    const double err = (p * p - p).norm() / p.norm();
    CHECK(err < prev * 1.1);
    prev = err;
  }
}

TEST_CASE("small and invalid cells") {
  const auto g = PhaseSpaceGrid::conjugate(-8.0, 8.0, 64, 1.0);
  PhaseCell tiny;
  tiny.half_width_x = 1.0;
  tiny.half_width_p = 1.0;
  CHECK_THROWS_AS(quasi_projector(tiny, g), std::invalid_argument);

  PhaseCell small;
  small.half_width_x = 2.0;
  small.half_width_p = 2.0;  // area 16, between 2 pi and 20 pi
  const auto qp = quasi_projector(small, g);
  CHECK(qp.small_cell_warning);

  PhaseCell big;
  big.half_width_x = 7.0;
  big.half_width_p = 24.0;
  CHECK_FALSE(quasi_projector(big, g).small_cell_warning);
}
