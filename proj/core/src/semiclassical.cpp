#include "decoh/semiclassical.hpp"

#include <cmath>
#include <numbers>

#include "decoh/phase_space_evolution.hpp"

namespace decoh {

namespace {

RealField real_part_checked(const ComplexField& f, const char* what) {
  if (f.imag().cwiseAbs().maxCoeff() > 1e-12 * (1.0 + f.cwiseAbs().maxCoeff()))
    throw std::invalid_argument(std::string("HamiltonField: ") + what + " is not real");
  return f.real();
}

}  // namespace

HamiltonField HamiltonField::from_poly(const Poly2& poly, const PhaseSpaceGrid& grid) {
  grid.require_transform_consistent();
  HamiltonField out;
  out.grid = grid;
  out.h = real_part_checked(poly.eval_grid(grid), "symbol");
  out.h_x = real_part_checked(poly.dx().eval_grid(grid), "h_x");
  out.h_p = real_part_checked(poly.dp().eval_grid(grid), "h_p");
  out.h_xxx = real_part_checked(poly.dx().dx().dx().eval_grid(grid), "h_xxx");
  out.h_xpp = real_part_checked(poly.dx().dp().dp().eval_grid(grid), "h_xpp");
  out.h_pxx = real_part_checked(poly.dx().dx().dp().eval_grid(grid), "h_pxx");
  out.h_ppp = real_part_checked(poly.dp().dp().dp().eval_grid(grid), "h_ppp");
  return out;
}

HamiltonField HamiltonField::from_field(const RealField& values, const PhaseSpaceGrid& grid) {
  grid.require_transform_consistent();
  if (values.rows() != grid.n_x || values.cols() != grid.n_p)
    throw std::invalid_argument("HamiltonField: field shape does not match grid");
  HamiltonField out;
  out.grid = grid;
  out.h = values;
  out.h_x = spectral_dx(values, grid, 1);
  out.h_p = spectral_dp(values, grid, 1);
  out.h_xxx = spectral_dx(values, grid, 3);
  out.h_xpp = spectral_dp(spectral_dx(values, grid, 1), grid, 2);
  out.h_pxx = spectral_dp(spectral_dx(values, grid, 2), grid, 1);
  out.h_ppp = spectral_dp(values, grid, 3);
  return out;
}

WignerTrajectory semiclassical_evolve(const WignerFunction& w0, const HamiltonField& h,
                                      const EvolutionSpec& spec,
                                      const std::optional<DecoherenceTensor>& g,
                                      int snapshot_stride) {
  spec.validate();
  if (spec.mode != EvolutionMode::Semiclassical)
    throw std::invalid_argument("semiclassical_evolve: mode must be semiclassical");
  if (snapshot_stride < 1)
    throw std::invalid_argument("semiclassical_evolve: snapshot stride must be >= 1");
  const PhaseSpaceGrid& grid = w0.grid;
  if (grid != h.grid)
    throw std::invalid_argument("semiclassical_evolve: Wigner and Hamilton grids differ");

  const bool flow = spec.include_hamiltonian_flow;
  if (!flow && !g.has_value())
    throw std::invalid_argument("semiclassical_evolve: nothing to evolve");

  const int steps = std::max(1, static_cast<int>(std::llround(spec.t_final / spec.dt)));
  const double dt = spec.t_final > 0.0 ? spec.t_final / steps : spec.dt;

  if (flow) {
    // spectral advection, RK4: dt limited by the imaginary-axis stability arc
    const double speed = h.h_p.cwiseAbs().maxCoeff() / grid.dx() +
                         h.h_x.cwiseAbs().maxCoeff() / grid.dp();
    const double cfl = 2.8 / (std::numbers::pi * std::max(speed, 1e-300));
    if (dt > cfl)
      throw std::invalid_argument("semiclassical_evolve: CFL violation, use dt <= " +
                                  std::to_string(cfl));
  }

  const double hb2 = grid.hbar * grid.hbar / 24.0;
  const bool second = spec.hbar_order == 2;
  auto rhs = [&](const RealField& w) -> RealField {
    RealField out = h.h_x * spectral_dp(w, grid, 1) - h.h_p * spectral_dx(w, grid, 1);
    if (second) {
      out += hb2 * (h.h_ppp * spectral_dx(w, grid, 3) -
                    3.0 * h.h_xpp * spectral_dp(spectral_dx(w, grid, 2), grid, 1) +
                    3.0 * h.h_pxx * spectral_dp(spectral_dx(w, grid, 1), grid, 2) -
                    h.h_xxx * spectral_dp(w, grid, 3));
    }
    return out;
  };

  WignerTrajectory traj;
  WignerFunction w = w0;
  traj.times.push_back(0.0);
  traj.states.push_back(w);
  if (spec.t_final == 0.0) return traj;

  for (int s = 0; s < steps; ++s) {
    if (g.has_value()) w = heat_kernel_evolve(w, *g, 0.5 * dt);
    if (flow) {
      const RealField k1 = rhs(w.values);
      const RealField k2 = rhs(w.values + 0.5 * dt * k1);
      const RealField k3 = rhs(w.values + 0.5 * dt * k2);
      const RealField k4 = rhs(w.values + dt * k3);
      w.values += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (g.has_value()) w = heat_kernel_evolve(w, *g, 0.5 * dt);
    if (w.boundary_mass() > 1e-6)
      throw std::runtime_error("semiclassical_evolve: probability mass reached the grid boundary");
    if ((s + 1) % snapshot_stride == 0 || s + 1 == steps) {
      traj.times.push_back((s + 1) * dt);
      traj.states.push_back(w);
    }
  }
  return traj;
}

}  // namespace decoh
