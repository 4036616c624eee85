#include "decoh/master.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace decoh {

namespace {

struct Channel {
  Complex h1[2];   // environment elements of (Bx, Bp) for this transition
  double omega = 0.0;
  double rho_n = 0.0;  // thermal occupation of the first index
};

std::vector<Channel> build_channels(const CouplingSpectrum& spectrum) {
  std::vector<Channel> out;
  out.reserve(spectrum.transitions.size());
  for (const auto& t : spectrum.transitions) {
    Channel c;
    c.h1[0] = t.h1x;
    c.h1[1] = t.h1p;
    c.omega = t.omega;
    // weight = sqrt(rho_n rho_n') and rho_n/rho_n' = exp(-beta hbar omega)
    c.rho_n = t.weight * std::exp(-spectrum.beta * spectrum.hbar * t.omega / 2.0);
    out.push_back(c);
  }
  return out;
}

void require_renormalized(const std::vector<Channel>& channels,
                          const std::vector<Transition>& transitions) {
  Complex mean[2] = {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  double scale = 0.0;
  for (size_t i = 0; i < channels.size(); ++i) {
    for (int a = 0; a < 2; ++a) {
      scale = std::max(scale, std::abs(channels[i].h1[a]) * channels[i].rho_n);
      if (transitions[i].n == transitions[i].nprime)
        mean[a] += channels[i].h1[a] * channels[i].rho_n;
    }
  }
  if (std::abs(mean[0]) > 1e-9 * scale || std::abs(mean[1]) > 1e-9 * scale)
    throw std::invalid_argument("evolve_master: coupling not renormalized (tr H1 rho_e != 0)");
}

}  // namespace

MasterTrajectory evolve_master(const DensityOperator& rho_r0, const Operator& h_c,
                               const CollectiveCoupling& coupling,
                               const CouplingSpectrum& spectrum, const EvolutionSpec& spec) {
  spec.validate();
  if (spec.mode != EvolutionMode::MarkovMaster && spec.mode != EvolutionMode::RetardedMaster)
    throw std::invalid_argument("evolve_master: mode must be markov_master or retarded_master");
  spectrum.validate();

  const int d = static_cast<int>(rho_r0.mat().rows());
  if (h_c.tag() != SpaceTag::Collective || h_c.mat().rows() != d)
    throw std::invalid_argument("evolve_master: h_c must act on the collective space");
  if (!h_c.is_hermitian()) throw std::invalid_argument("evolve_master: h_c must be Hermitian");

  const auto channels = build_channels(spectrum);
  require_renormalized(channels, spectrum.transitions);

  bool need_p = false;
  for (const auto& c : channels) need_p = need_p || std::abs(c.h1[1]) > 0.0;
  if (coupling.x_op.tag() != SpaceTag::Collective || coupling.x_op.mat().rows() != d ||
      !coupling.x_op.is_hermitian())
    throw std::invalid_argument("evolve_master: collective x operator invalid");
  if (need_p && !coupling.p_op.has_value())
    throw std::invalid_argument("evolve_master: spectrum has p-couplings but no collective p operator");
  const int n_ops = coupling.p_op.has_value() ? 2 : 1;
  Matrix a_op[2];
  a_op[0] = coupling.x_op.mat();
  if (n_ops == 2) {
    if (coupling.p_op->tag() != SpaceTag::Collective || coupling.p_op->mat().rows() != d ||
        !coupling.p_op->is_hermitian())
      throw std::invalid_argument("evolve_master: collective p operator invalid");
    a_op[1] = coupling.p_op->mat();
  }

  const double hbar = spectrum.hbar;
  const double eps = spectrum.epsilon();
  const int steps = std::max(1, static_cast<int>(std::llround(spec.t_final / spec.dt)));
  const double dt = spec.t_final > 0.0 ? spec.t_final / steps : spec.dt;

  const Complex iunit(0.0, 1.0);
  auto unitary_part = [&](const Matrix& rho) -> Matrix {
    return -(iunit / hbar) * (h_c.mat() * rho - rho * h_c.mat());
  };

  MasterTrajectory traj;
  Matrix rho = rho_r0.mat();
  traj.times.push_back(0.0);
  traj.states.push_back(rho_r0);
  if (spec.t_final == 0.0) return traj;

  auto record = [&](double t, const Matrix& m) {
    Matrix herm = 0.5 * (m + m.adjoint());
    traj.times.push_back(t);
    traj.states.push_back(DensityOperator(Operator(herm, SpaceTag::Collective), 1e-6));
  };

  if (spec.mode == EvolutionMode::MarkovMaster) {
    // one-sided correlation integrals Lambda_ab = (1/hbar^2) sum_t
    // h1a conj(h1b) rho_n / (eps - i omega); the conjugates close the
    // Hermitian double-commutator structure.
    Eigen::Matrix2cd lambda = Eigen::Matrix2cd::Zero();
    for (const auto& c : channels)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          lambda(a, b) += c.h1[a] * std::conj(c.h1[b]) * c.rho_n / Complex(eps, -c.omega);
    lambda /= hbar * hbar;

    Matrix n_mat = Matrix::Zero(d, d);
    for (int a = 0; a < n_ops; ++a)
      for (int b = 0; b < n_ops; ++b) n_mat += lambda(a, b) * a_op[a] * a_op[b];

    auto rhs = [&](const Matrix& r) -> Matrix {
      Matrix out = unitary_part(r) - n_mat * r - r * n_mat.adjoint();
      for (int a = 0; a < n_ops; ++a)
        for (int b = 0; b < n_ops; ++b)
          out += lambda(a, b) * (a_op[b] * r * a_op[a]) +
                 std::conj(lambda(a, b)) * (a_op[a] * r * a_op[b]);
      return out;
    };

    for (int step = 0; step < steps; ++step) {
      Matrix mid = rho + 0.5 * dt * rhs(rho);
      rho += dt * rhs(mid);
      record((step + 1) * dt, rho);
    }
    return traj;
  }

  // retarded kernel: correlation matrices c1_ab(tau) with the adiabatic
  // regulator, collective rotation applied both to the buffered state and to
  // the inner coupling operator
  Eigen::SelfAdjointEigenSolver<Matrix> es(h_c.mat());
  const Matrix evec = es.eigenvectors();
  const Eigen::VectorXd eval = es.eigenvalues();

  std::vector<Eigen::Matrix2cd> c1(steps + 1);
  double norm0 = 0.0;
  int kernel_len = 0;
  for (int k = 0; k <= steps; ++k) {
    const double tau = k * dt;
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (const auto& c : channels)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          m(a, b) += c.h1[a] * std::conj(c.h1[b]) * c.rho_n *
                     std::polar(std::exp(-eps * tau), c.omega * tau);
    c1[k] = m / (hbar * hbar);
    const double norm = c1[k].cwiseAbs().maxCoeff();
    if (k == 0) norm0 = norm;
    if (norm0 > 0.0 && norm >= 1e-6 * norm0) kernel_len = k;
  }

  std::vector<Matrix> u_c(kernel_len + 1);
  for (int k = 0; k <= kernel_len; ++k) {
    Eigen::VectorXcd phase(d);
    for (int j = 0; j < d; ++j) phase(j) = std::polar(1.0, -eval(j) * k * dt / hbar);
    u_c[k] = evec * phase.asDiagonal() * evec.adjoint();
  }
  std::vector<Matrix> a_rot[2];
  for (int a = 0; a < n_ops; ++a) {
    a_rot[a].resize(kernel_len + 1);
    for (int k = 0; k <= kernel_len; ++k) a_rot[a][k] = u_c[k] * a_op[a] * u_c[k].adjoint();
  }

  std::vector<Matrix> history;
  history.reserve(steps + 2);
  history.push_back(rho);

  // history[i] = rho(i dt); trapezoid quadrature over the buffered window
  auto rhs_at = [&](int n_now) -> Matrix {
    Matrix out = unitary_part(history[n_now]);
    const int kmax = std::min(n_now, kernel_len);
    for (int k = 0; k <= kmax; ++k) {
      const double w = (k == 0 || k == kmax) ? 0.5 : 1.0;
      if (kmax == 0) break;  // no memory accumulated yet
      const Matrix rho_t = u_c[k] * history[n_now - k] * u_c[k].adjoint();
      for (int a = 0; a < n_ops; ++a)
        for (int b = 0; b < n_ops; ++b) {
          const Matrix& ab = a_rot[b][k];
          const Complex l1 = c1[k](a, b) * w * dt;
          out -= l1 * (a_op[a] * ab * rho_t - ab * rho_t * a_op[a]);
          out -= std::conj(l1) * (rho_t * ab * a_op[a] - a_op[a] * rho_t * ab);
        }
    }
    return out;
  };

  for (int step = 0; step < steps; ++step) {
    const Matrix f0 = rhs_at(step);
    history.push_back(history[step] + dt * f0);  // predictor at step+1
    const Matrix f1 = rhs_at(step + 1);
    history[step + 1] = history[step] + 0.5 * dt * (f0 + f1);
    record((step + 1) * dt, history[step + 1]);
  }
  return traj;
}

}  // namespace decoh
