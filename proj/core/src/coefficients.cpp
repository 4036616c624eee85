#include "decoh/coefficients.hpp"

#include <cmath>

namespace decoh {

namespace {

double cosh_weight(const CouplingSpectrum& s, const Transition& t) {
  return t.weight * std::cosh(s.beta * s.hbar * t.omega / 2.0);
}

/// sinh(beta hbar omega/2)/(hbar omega), continued to beta/2 at omega = 0.
double sinh_weight(const CouplingSpectrum& s, const Transition& t) {
  const double u = s.beta * s.hbar * t.omega / 2.0;
  if (std::abs(u) < 1e-8) return t.weight * s.beta / 2.0;
  return t.weight * std::sinh(u) / (s.hbar * t.omega);
}

/// Products (H1i H1j)(tau-independent part) for the (x,p) index pairs of one
/// transition: row/column ordering x=0, p=1.
Eigen::Matrix2cd pair_products(const Transition& t) {
  // C^{xx} ~ +H1p H1p, C^{pp} ~ +H1x H1x, mixed carry a minus sign; the
  // second factor is the (n',n) element, i.e. the conjugate of the partner.
  Eigen::Matrix2cd m;
  const Complex h1x_rev = std::conj(t.h1x);  // H1x_{n'n}
  const Complex h1p_rev = std::conj(t.h1p);
  m(0, 0) = t.h1p * h1p_rev;
  m(0, 1) = -t.h1p * h1x_rev;
  m(1, 0) = -t.h1x * h1p_rev;
  m(1, 1) = t.h1x * h1x_rev;
  return m;
}

}  // namespace

DecoherenceTensor DecoherenceTensor::from_matrix(const Eigen::Matrix2d& g) {
  DecoherenceTensor out;
  out.g = g;
  out.det_g = g.determinant();
  const double scale = g.trace() / 2.0;
  out.classification = out.det_g > 1e-10 * scale * scale ? GClassification::NonDegenerate
                                                         : GClassification::Degenerate;
  if (out.classification == GClassification::NonDegenerate)
    out.g_inv = g.inverse().eval();
  return out;
}

Eigen::Matrix2d kernel_C(const CouplingSpectrum& spectrum, double tau) {
  if (tau < 0.0) throw std::invalid_argument("kernel_C: tau must be >= 0");
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& t : spectrum.transitions)
    sum += pair_products(t) * std::polar(cosh_weight(spectrum, t), t.omega * tau);
  return sum.real();
}

namespace {

Eigen::Matrix2d regularized_integral(const CouplingSpectrum& spectrum, bool dissipation) {
  spectrum.validate();
  const double eps = spectrum.epsilon();
  if (!(eps > 0.0)) throw std::invalid_argument("coefficients: regularization epsilon must be > 0");
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& t : spectrum.transitions) {
    // int_0^inf e^{i omega tau - eps tau} dtau = (eps + i omega)/(omega^2 + eps^2)
    const Complex integral(eps / (t.omega * t.omega + eps * eps),
                           t.omega / (t.omega * t.omega + eps * eps));
    const double w = dissipation ? sinh_weight(spectrum, t) : cosh_weight(spectrum, t);
    sum += pair_products(t) * (w * integral);
  }
  // only the symmetric part enters the diffusion/friction forms; the
  // antisymmetric remainder of the mixed entries is discarded
  Eigen::Matrix2d out = sum.real();
  out(0, 1) = out(1, 0) = 0.5 * (out(0, 1) + out(1, 0));
  return out;
}

}  // namespace

DecoherenceTensor decoherence_coeffs(const CouplingSpectrum& spectrum) {
  if (spectrum.transitions.empty()) return DecoherenceTensor{};
  return DecoherenceTensor::from_matrix(regularized_integral(spectrum, false));
}

DissipationTensor dissipation_coeffs(const CouplingSpectrum& spectrum) {
  if (spectrum.transitions.empty()) return DissipationTensor{};
  // factor 2 fixes the normalization so that gamma -> g/T at high temperature
  return DissipationTensor{2.0 * regularized_integral(spectrum, true)};
}

std::pair<double, DecoherenceTensor> canonical_rotation(const DecoherenceTensor& g,
                                                        double length_unit,
                                                        double momentum_unit) {
  if (!(length_unit > 0.0) || !(momentum_unit > 0.0))
    throw std::invalid_argument("canonical_rotation: units must be positive");
  Eigen::Matrix2d scaled;
  scaled(0, 0) = momentum_unit * momentum_unit * g.g(0, 0);
  scaled(1, 1) = length_unit * length_unit * g.g(1, 1);
  scaled(0, 1) = scaled(1, 0) = momentum_unit * length_unit * 0.5 * (g.g(0, 1) + g.g(1, 0));
  double theta = 0.0;
  if (std::abs(scaled(0, 1)) > 0.0)
    theta = 0.5 * std::atan2(2.0 * scaled(0, 1), scaled(0, 0) - scaled(1, 1));
  Eigen::Matrix2d rot;
  rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return {theta, DecoherenceTensor::from_matrix(rot * scaled * rot.transpose())};
}

}  // namespace decoh
