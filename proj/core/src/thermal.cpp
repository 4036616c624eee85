#include "decoh/thermal.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace decoh {

ThermalEnvironment thermal_state(const Operator& h_e, double beta) {
  if (h_e.tag() != SpaceTag::Environment)
    throw std::invalid_argument("thermal_state: expects an environment Hamiltonian");
  if (!h_e.is_hermitian()) throw std::invalid_argument("thermal_state: non-Hermitian Hamiltonian");
  if (beta < 0.0) throw std::invalid_argument("thermal_state: beta must be >= 0");

  Eigen::SelfAdjointEigenSolver<Matrix> es(h_e.mat());
  const auto& e = es.eigenvalues();
  const Matrix& v = es.eigenvectors();

  const double e_min = e.minCoeff();
  Eigen::VectorXd w(e.size());
  for (int i = 0; i < e.size(); ++i) w(i) = std::exp(-beta * (e(i) - e_min));
  const double z_shift = w.sum();
  w /= z_shift;
  const double alpha = std::log(z_shift) - beta * e_min;

  Matrix rho = v * w.cast<Complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());

  ThermalEnvironment env{h_e, DensityOperator(Operator(std::move(rho), SpaceTag::Environment), 1e-10),
                         beta, alpha, 0.0, 0.0};
  env.energy = w.dot(e);
  env.variance = w.dot(e.cwiseAbs2()) - env.energy * env.energy;
  if (env.variance < 0.0) env.variance = 0.0;  // round-off guard
  return env;
}

}  // namespace decoh
