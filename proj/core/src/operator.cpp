#include "decoh/operator.hpp"

#include <Eigen/Eigenvalues>

namespace decoh {

std::string to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::Collective: return "collective";
    case SpaceTag::Environment: return "environment";
    case SpaceTag::Composite: return "composite";
  }
  return "?";
}

SpaceTag space_tag_from_string(const std::string& s) {
  if (s == "collective") return SpaceTag::Collective;
  if (s == "environment") return SpaceTag::Environment;
  if (s == "composite") return SpaceTag::Composite;
  throw std::invalid_argument("unknown space tag: " + s);
}

Operator::Operator(Matrix m, SpaceTag tag) : mat_(std::move(m)), tag_(tag) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("Operator: matrix must be square");
  if (mat_.rows() < 1) throw std::invalid_argument("Operator: empty matrix");
}

Operator Operator::identity(int dim, SpaceTag tag) {
  return Operator(Matrix::Identity(dim, dim), tag);
}

Operator Operator::zero(int dim, SpaceTag tag) {
  return Operator(Matrix::Zero(dim, dim), tag);
}

double Operator::max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

double Operator::hermiticity_error() const {
  double scale = max_abs();
  if (scale == 0.0) return 0.0;
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() / scale;
}

bool Operator::is_hermitian(double rel_tol) const { return hermiticity_error() <= rel_tol; }

Operator Operator::operator+(const Operator& o) const {
  if (tag_ != o.tag_ || dim() != o.dim()) throw std::invalid_argument("Operator+: space mismatch");
  return Operator(mat_ + o.mat_, tag_);
}

Operator Operator::operator-(const Operator& o) const {
  if (tag_ != o.tag_ || dim() != o.dim()) throw std::invalid_argument("Operator-: space mismatch");
  return Operator(mat_ - o.mat_, tag_);
}

Operator Operator::operator*(const Operator& o) const {
  if (tag_ != o.tag_ || dim() != o.dim()) throw std::invalid_argument("Operator*: space mismatch");
  return Operator(mat_ * o.mat_, tag_);
}

DensityOperator::DensityOperator(Operator op, double hermiticity_tol)
    : op_(std::move(op)), trace_(op_.mat().trace()) {
  if (op_.hermiticity_error() > hermiticity_tol)
    throw std::invalid_argument("DensityOperator: operator is not Hermitian to tolerance");
}

bool DensityOperator::is_physical(double trace_tol, double eig_floor) const {
  if (std::abs(trace_ - Complex(1.0, 0.0)) > trace_tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(op_.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= eig_floor;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  if (a.tag() != SpaceTag::Collective || b.tag() != SpaceTag::Environment)
    throw std::invalid_argument("tensor_product: expects (collective, environment) operands");
  const int da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.mat()(i, j) * b.mat();
  return Operator(std::move(out), SpaceTag::Composite);
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(tensor_product(a.op(), b.op()), 1e-10);
}

DensityOperator partial_trace_env(const DensityOperator& rho, const HilbertDims& dims) {
  if (rho.dim() != dims.total())
    throw std::invalid_argument("partial_trace_env: dimension mismatch");
  const int dc = dims.d_c, de = dims.d_e;
  Matrix out = Matrix::Zero(dc, dc);
  for (int k = 0; k < dc; ++k)
    for (int kp = 0; kp < dc; ++kp)
      for (int n = 0; n < de; ++n)
        out(k, kp) += rho.mat()(k * de + n, kp * de + n);
  return DensityOperator(Operator(std::move(out), SpaceTag::Collective), 1e-9);
}

DensityOperator partial_trace_collective(const DensityOperator& rho, const HilbertDims& dims) {
  if (rho.dim() != dims.total())
    throw std::invalid_argument("partial_trace_collective: dimension mismatch");
  const int dc = dims.d_c, de = dims.d_e;
  Matrix out = Matrix::Zero(de, de);
  for (int n = 0; n < de; ++n)
    for (int np = 0; np < de; ++np)
      for (int k = 0; k < dc; ++k)
        out(n, np) += rho.mat()(k * de + n, k * de + np);
  return DensityOperator(Operator(std::move(out), SpaceTag::Environment), 1e-9);
}

double purity(const DensityOperator& rho) {
  return (rho.mat() * rho.mat()).trace().real();
}

std::vector<DensityOperator> evolve_exact(const DensityOperator& rho0, const Operator& h,
                                          double t, int steps, double hbar) {
  if (!h.is_hermitian()) throw std::invalid_argument("evolve_exact: non-Hermitian Hamiltonian");
  if (h.dim() != rho0.dim() || h.tag() != rho0.tag())
    throw std::invalid_argument("evolve_exact: space mismatch");
  if (steps < 1) throw std::invalid_argument("evolve_exact: steps must be >= 1");

  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat());
  const auto& evals = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  Matrix rho_eig = v.adjoint() * rho0.mat() * v;

  std::vector<DensityOperator> traj;
  traj.reserve(steps + 1);
  traj.push_back(rho0);
  for (int s = 1; s <= steps; ++s) {
    const double ts = t * s / steps;
    Vector phase(evals.size());
    for (int i = 0; i < evals.size(); ++i)
      phase(i) = std::exp(Complex(0.0, -evals(i) * ts / hbar));
    Matrix rot = (phase * phase.adjoint()).cwiseProduct(rho_eig);
    Matrix m = v * rot * v.adjoint();
    m = 0.5 * (m + m.adjoint().eval());
    traj.emplace_back(Operator(std::move(m), rho0.tag()), 1e-10);
  }
  return traj;
}

}  // namespace decoh
