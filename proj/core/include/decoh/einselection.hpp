#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "decoh/coefficients.hpp"
#include "decoh/grid.hpp"
#include "decoh/operator.hpp"

namespace decoh {

Operator position_operator(const PhaseSpaceGrid& grid);
Operator momentum_operator(const PhaseSpaceGrid& grid);

/// Pure-decoherence generator in double-commutator form,
/// D(rho) = -(1/hbar^2) (g^pp [X,[X,rho]] + g^xx [P,[P,rho]]
///                       + g^xp ([X,[P,rho]] + [P,[X,rho]])),
/// the matrix-side counterpart of the phase-space diffusion form.
Matrix decoherence_generator(const Matrix& rho, const DecoherenceTensor& g,
                             const PhaseSpaceGrid& grid);

struct PointerBasisReport {
  double max_diagonal_residual = 0.0;   // max |<j|D(rho)|j>|, relative to max |D(rho)|
  double min_offdiagonal_damping = 0.0; // min over pairs of -Re<j|D(rho_jk)|k>, same scale
  bool passed = false;
  std::string to_text() const;
};

/// Tests whether the supplied orthonormal basis is a pointer basis for g:
/// diagonal matrix elements of D vanish for sampled densities and every
/// off-diagonal element is strictly damped.
PointerBasisReport pointer_basis_check(const DecoherenceTensor& g, const PhaseSpaceGrid& grid,
                                       const std::vector<Vector>& basis, int samples,
                                       std::uint64_t seed);

struct NogoReport {
  double floor = 0.0;       // min over psi of max over rho, in units of the global max
  double global_max = 0.0;  // largest sampled |<psi|D(rho)|psi>|, unnormalized
  std::vector<double> per_psi;
  bool passed = false;
  std::string to_text() const;
};

/// Falsification-style check of the no-go statement: no state annihilates the
/// non-degenerate generator against every density. Samples psi (including
/// coherent states) and Hilbert-Schmidt-uniform rho.
NogoReport nogo_check(const DecoherenceTensor& g, const PhaseSpaceGrid& grid, int psi_samples,
                      int rho_samples, std::uint64_t seed);

struct SieveEntry {
  std::string label;
  std::vector<double> purity;
  double final_purity = 0.0;
  double mean_retention = 0.0;  // time average of purity(t)/purity(0)
};

struct SieveReport {
  std::vector<double> times;
  std::vector<SieveEntry> ranked;  // descending by time-averaged purity retention
  std::string to_text() const;
};

/// Predictability sieve: evolves each candidate under pure decoherence and
/// ranks by time-averaged purity retention over the window. Retention rather
/// than raw purity is ranked so that robust mixed cell states can outrank
/// fragile pure states.
SieveReport purity_sieve(const std::vector<std::pair<std::string, DensityOperator>>& candidates,
                         const DecoherenceTensor& g, const PhaseSpaceGrid& grid, double window,
                         int samples);

struct CatStateReport {
  std::vector<double> times;
  std::vector<double> interference_norm;  // HS norm of the cross part
  std::vector<double> diagonal_overlap;   // Bhattacharyya overlap of the branch diagonals
  double decay_rate = 0.0;                // least-squares exponential rate of the cross part
  std::string to_text() const;
};

/// Superposition experiment: evolves interference and probabilistic parts of
/// |psi1 + psi2><psi1 + psi2| separately and reports interference suppression
/// and diagonal smoothing.
CatStateReport cat_state_experiment(const Vector& psi1, const Vector& psi2,
                                    const DecoherenceTensor& g, const PhaseSpaceGrid& grid,
                                    const std::vector<double>& t_grid);

}  // namespace decoh
