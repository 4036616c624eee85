#pragma once

#include <optional>

#include <Eigen/Dense>

#include "decoh/spectrum.hpp"

namespace decoh {

enum class GClassification { Degenerate, NonDegenerate };

/// Diffusion-like decoherence coefficients, ordering (x, p).
struct DecoherenceTensor {
  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  double det_g = 0.0;
  GClassification classification = GClassification::Degenerate;
  std::optional<Eigen::Matrix2d> g_inv;  // covariant g_ij, non-degenerate only

  static DecoherenceTensor from_matrix(const Eigen::Matrix2d& g);
};

/// Friction coefficients, same ordering.
struct DissipationTensor {
  Eigen::Matrix2d gamma = Eigen::Matrix2d::Zero();
};

/// Correlation kernel C^{ij}(tau); real by Hermitian pairing.
Eigen::Matrix2d kernel_C(const CouplingSpectrum& spectrum, double tau);

/// g^{ij} = Re int_0^inf C^{ij}(tau) e^{-eps tau} dtau, in closed form per
/// transition.
DecoherenceTensor decoherence_coeffs(const CouplingSpectrum& spectrum);

/// gamma^{ij} with the sinh/(hbar omega) thermal weight (beta/2 at omega = 0),
/// normalized so that gamma = g/T at high temperature.
DissipationTensor dissipation_coeffs(const CouplingSpectrum& spectrum);

/// Angle diagonalizing the tensor in scaled coordinates (Pi x, L p); returns
/// the rotated tensor in those units.
std::pair<double, DecoherenceTensor> canonical_rotation(const DecoherenceTensor& g,
                                                        double length_unit,
                                                        double momentum_unit);

}  // namespace decoh
