#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace decoh {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class SpaceTag { Collective, Environment, Composite };

std::string to_string(SpaceTag tag);
SpaceTag space_tag_from_string(const std::string& s);

struct HilbertDims {
  int d_c = 1;
  int d_e = 1;
  double hbar = 1.0;

  HilbertDims() = default;
  HilbertDims(int dc, int de, double hb) : d_c(dc), d_e(de), hbar(hb) {
    if (d_c < 1 || d_e < 1) throw std::invalid_argument("HilbertDims: dimensions must be >= 1");
    if (!(hbar > 0.0)) throw std::invalid_argument("HilbertDims: hbar must be positive");
  }
  int total() const { return d_c * d_e; }
};

/// Dense operator on a finite-dimensional space. Composite operators use
/// collective-major Kronecker ordering |k,n> = |k> (x) |n>.
class Operator {
 public:
  Operator(Matrix m, SpaceTag tag);

  static Operator identity(int dim, SpaceTag tag);
  static Operator zero(int dim, SpaceTag tag);

  int dim() const { return static_cast<int>(mat_.rows()); }
  SpaceTag tag() const { return tag_; }
  const Matrix& mat() const { return mat_; }

  double max_abs() const;
  /// Hermiticity deviation relative to the largest entry magnitude.
  double hermiticity_error() const;
  bool is_hermitian(double rel_tol = 1e-12) const;

  Operator adjoint() const { return Operator(mat_.adjoint(), tag_); }

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator operator*(Complex c) const { return Operator(mat_ * c, tag_); }

 private:
  Matrix mat_;
  SpaceTag tag_;
};

/// Trace-class "density" in the sense of the projection formalism: Hermitian
/// with finite trace, but not necessarily positive or unit-trace.
class DensityOperator {
 public:
  explicit DensityOperator(Operator op, double hermiticity_tol = 1e-12);

  int dim() const { return op_.dim(); }
  SpaceTag tag() const { return op_.tag(); }
  const Operator& op() const { return op_; }
  const Matrix& mat() const { return op_.mat(); }
  Complex trace() const { return trace_; }

  /// Checks unit trace and eigenvalue floor for physical states.
  bool is_physical(double trace_tol = 1e-10, double eig_floor = -1e-10) const;

 private:
  Operator op_;
  Complex trace_;
};

Operator tensor_product(const Operator& a, const Operator& b);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

/// <k|rho_r|k'> = sum_n <k,n|rho|k',n>.
DensityOperator partial_trace_env(const DensityOperator& rho, const HilbertDims& dims);
/// <n|rho_e|n'> = sum_k <k,n|rho|k,n'>.
DensityOperator partial_trace_collective(const DensityOperator& rho, const HilbertDims& dims);

double purity(const DensityOperator& rho);

/// Exact unitary evolution rho(t) = U rho0 U^dagger via eigendecomposition of
/// a time-independent Hermitian h. Returns steps+1 samples at t_i = i*t/steps
/// (the initial state included).
std::vector<DensityOperator> evolve_exact(const DensityOperator& rho0, const Operator& h,
                                          double t, int steps, double hbar);

}  // namespace decoh
