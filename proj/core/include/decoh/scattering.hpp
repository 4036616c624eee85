#pragma once

#include <functional>
#include <vector>

namespace decoh {

/// One magnitude component of the incident flux distribution; weights sum to
/// the total flux.
struct FluxComponent {
  double k = 0.0;
  double weight = 0.0;
};

/// Scattering gas: differential cross-section dsigma/dOmega(k, cos theta) with
/// an isotropic incident direction measure and a discrete |k| distribution.
struct GasSpec {
  std::function<double(double k, double cos_theta)> dsigma;
  std::vector<FluxComponent> flux;
  double particle_mass = 1.0;
  double temperature = 0.0;
  double cos_theta_max = 1.0;  // forward cutoff for singular cross-sections

  static GasSpec hard_sphere(double radius, double k0, double flux_total);

  void validate() const;
};

/// sigma_tot(k) by adaptive Gauss-Legendre quadrature in cos theta.
double total_cross_section(const GasSpec& gas, double k);

struct KernelTable {
  std::vector<double> xi;
  std::vector<double> f;
};

/// Collisional localization kernel F(xi) = int dPhi int dsigma
/// [1 - cos((k - k') xi)] over elastic on-shell kinematics; F(0) = 0 and
/// F -> Phi_tot sigma_tot at large separations.
KernelTable localization_kernel(const GasSpec& gas, const std::vector<double>& xi_grid);

/// Degenerate momentum-diffusion coefficient g^{pp} = hbar^2 Lambda with
/// Lambda the curvature of the small-xi quadratic regime of F.
double effective_gpp(const GasSpec& gas, double hbar = 1.0);

}  // namespace decoh
