#pragma once

#include <vector>

#include "decoh/operator.hpp"
#include "decoh/thermal.hpp"

namespace decoh {

/// Relevant observables: collective dyads |k><k'| (x) I_e, optionally the
/// identity and the environment energy.
struct RelevantSet {
  int d_c = 0;
  bool include_identity = true;
  bool include_env_energy = true;

  /// A^{kk'} = |k><k'| (x) I_e in the composite space.
  Operator dyad(int k, int kprime, int d_e) const;
};

/// Data entering the projection superoperator.
struct ProjectionContext {
  DensityOperator rho_c;  // collective
  ThermalEnvironment env;

  HilbertDims dims(double hbar = 1.0) const {
    return HilbertDims(rho_c.dim(), env.rho_e.dim(), hbar);
  }
};

struct AuxiliaryDensities {
  std::vector<DensityOperator> s_dyads;  // s_kk' = |k'><k| (x) rho_e, row-major in (k,k')
  DensityOperator s_e;                   // rho_c (x) rho_e (H_e - E) / Delta^2
  DensityOperator s_1;                   // -E * s_e
};

/// rho_0 = rho_r (x) rho_e.
DensityOperator build_test_density(const DensityOperator& rho_r, const ThermalEnvironment& env);

/// Densities conjugate to the relevant observables; rejects degenerate
/// environments (Delta^2 ~ 0).
AuxiliaryDensities auxiliary_densities(const ProjectionContext& ctx);

/// P mu = tr_e mu (x) rho_e + rho_c (x) rho_e (H_e - E) Delta^-2 (Tr H_e mu - E Tr mu).
DensityOperator project_P(const DensityOperator& mu, const ProjectionContext& ctx);

/// H'_c = H_c + tr_e(H_1 rho_e), H'_1 = H_1 - tr_e(H_1 rho_e) (x) I_e.
std::pair<Operator, Operator> renormalize_coupling(const Operator& h_c, const Operator& h_1,
                                                   const ThermalEnvironment& env);

/// tr_e(H_1 (I_c (x) rho_e)) as a collective operator.
Operator coupling_mean_field(const Operator& h_1, const ThermalEnvironment& env);

}  // namespace decoh
