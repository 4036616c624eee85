#include "decoh/projection.hpp"

namespace decoh {

namespace {

void check_nondegenerate(const ThermalEnvironment& env) {
  const double scale = env.hamiltonian.mat().squaredNorm();
  if (env.variance < 1e-14 * scale)
    throw std::invalid_argument(
        "projection: environment energy spread is degenerate (Delta^2 ~ 0)");
}

Matrix env_weight(const ThermalEnvironment& env) {
  const int d_e = env.rho_e.dim();
  return env.rho_e.mat() * (env.hamiltonian.mat() - env.energy * Matrix::Identity(d_e, d_e)) /
         env.variance;
}

}  // namespace

Operator RelevantSet::dyad(int k, int kprime, int d_e) const {
  if (k < 0 || kprime < 0 || k >= d_c || kprime >= d_c)
    throw std::invalid_argument("RelevantSet: dyad index out of range");
  Matrix m = Matrix::Zero(d_c, d_c);
  m(k, kprime) = 1.0;
  return tensor_product(Operator(m, SpaceTag::Collective),
                        Operator::identity(d_e, SpaceTag::Environment));
}

DensityOperator build_test_density(const DensityOperator& rho_r, const ThermalEnvironment& env) {
  return tensor_product(rho_r, env.rho_e);
}

AuxiliaryDensities auxiliary_densities(const ProjectionContext& ctx) {
  check_nondegenerate(ctx.env);
  const int d_c = ctx.rho_c.dim();

  AuxiliaryDensities out{
      {},
      tensor_product(ctx.rho_c,
                     DensityOperator(Operator(env_weight(ctx.env), SpaceTag::Environment), 1e-10)),
      DensityOperator(Operator::zero(1, SpaceTag::Composite))};
  out.s_1 = DensityOperator(out.s_e.op() * Complex(-ctx.env.energy), 1e-10);

  for (int k = 0; k < d_c; ++k)
    for (int kp = 0; kp < d_c; ++kp) {
      Matrix m = Matrix::Zero(d_c, d_c);
      m(kp, k) = 1.0;  // s_kk' pairs with A^{kk'} = |k><k'| under the full trace
      out.s_dyads.push_back(DensityOperator(
          tensor_product(Operator(m, SpaceTag::Collective), ctx.env.rho_e.op()), 1.0));
    }
  return out;
}

DensityOperator project_P(const DensityOperator& mu, const ProjectionContext& ctx) {
  check_nondegenerate(ctx.env);
  if (mu.tag() != SpaceTag::Composite)
    throw std::invalid_argument("project_P: input must live on the composite space");
  const HilbertDims dims = ctx.dims();
  if (mu.dim() != dims.total()) throw std::invalid_argument("project_P: dimension mismatch");

  const DensityOperator mu_r = partial_trace_env(mu, dims);
  const Matrix h_e_comp =
      tensor_product(Operator::identity(dims.d_c, SpaceTag::Collective), ctx.env.hamiltonian)
          .mat();
  const Complex tr_mu = mu.trace();
  const Complex tr_he_mu = (h_e_comp * mu.mat()).trace();

  Matrix result = tensor_product(mu_r.op(), ctx.env.rho_e.op()).mat();
  result += (tr_he_mu - ctx.env.energy * tr_mu) *
            tensor_product(ctx.rho_c.op(), Operator(env_weight(ctx.env), SpaceTag::Environment))
                .mat();
  return DensityOperator(Operator(result, SpaceTag::Composite), 1e-10);
}

Operator coupling_mean_field(const Operator& h_1, const ThermalEnvironment& env) {
  if (h_1.tag() != SpaceTag::Composite)
    throw std::invalid_argument("coupling_mean_field: coupling must be composite");
  const int d_e = env.rho_e.dim();
  const int d_c = h_1.dim() / d_e;
  if (d_c * d_e != h_1.dim())
    throw std::invalid_argument("coupling_mean_field: dimensions do not factor");
  Matrix m = Matrix::Zero(d_c, d_c);
  const Matrix& h = h_1.mat();
  const Matrix& rho = env.rho_e.mat();
  for (int k = 0; k < d_c; ++k)
    for (int kp = 0; kp < d_c; ++kp) {
      Complex sum = 0.0;
      for (int n = 0; n < d_e; ++n)
        for (int np = 0; np < d_e; ++np) sum += h(k * d_e + n, kp * d_e + np) * rho(np, n);
      m(k, kp) = sum;
    }
  return Operator(m, SpaceTag::Collective);
}

std::pair<Operator, Operator> renormalize_coupling(const Operator& h_c, const Operator& h_1,
                                                   const ThermalEnvironment& env) {
  const Operator mean = coupling_mean_field(h_1, env);
  const Operator h_c_new = h_c + mean;
  const Operator h_1_new =
      h_1 - tensor_product(mean, Operator::identity(env.rho_e.dim(), SpaceTag::Environment));
  return {h_c_new, h_1_new};
}

}  // namespace decoh
