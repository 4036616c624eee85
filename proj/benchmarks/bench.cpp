#include <benchmark/benchmark.h>

#include <random>

#include <decoh/phase_space_evolution.hpp>
#include <decoh/wigner.hpp>

using namespace decoh;

namespace {

Matrix localized_density(const PhaseSpaceGrid& g) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss;
  Vector psi(g.n_x);
  for (int j = 0; j < g.n_x; ++j) {
    const double x = g.x(j);
    psi(j) = std::exp(-x * x / 8.0) * Complex(gauss(rng), gauss(rng));
  }
  psi /= psi.norm();
  return psi * psi.adjoint();
}

void bm_wigner_transform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = PhaseSpaceGrid::conjugate(-10.0, 10.0, n, 1.0);
  const DensityOperator rho(Operator(localized_density(g), SpaceTag::Collective));
  for (auto _ : state) {
    auto w = wigner_transform(rho, g);
    benchmark::DoNotOptimize(w.values.data());
  }
}
BENCHMARK(bm_wigner_transform)->Arg(128)->Arg(256)->Arg(512);

void bm_symbol_round_trip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = PhaseSpaceGrid::conjugate(-10.0, 10.0, n, 1.0);
  const Matrix m = localized_density(g);
  for (auto _ : state) {
    auto back = symbol_to_matrix(matrix_to_symbol(m, g), g);
    benchmark::DoNotOptimize(back.data());
  }
}
BENCHMARK(bm_symbol_round_trip)->Arg(128)->Arg(256);

void bm_heat_kernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = PhaseSpaceGrid::conjugate(-10.0, 10.0, n, 1.0);
  const DensityOperator rho(Operator(localized_density(g), SpaceTag::Collective));
  const auto w0 = wigner_transform(rho, g);
  Eigen::Matrix2d gm;
  gm << 0.05, 0.01, 0.01, 0.08;
  const auto tensor = DecoherenceTensor::from_matrix(gm);
  for (auto _ : state) {
    auto w = heat_kernel_evolve(w0, tensor, 0.5);
    benchmark::DoNotOptimize(w.values.data());
  }
}
BENCHMARK(bm_heat_kernel)->Arg(128)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
