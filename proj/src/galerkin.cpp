// SPDX-License-Identifier: Apache-2.0

#include "wcmo/galerkin.hpp"

#include <cmath>

namespace wcmo
{

Discretization::Discretization(SpacePtr s, Coefficient e, const ScalarFunction &f)
  : space(std::move(s)), eps(std::move(e)), stiffness(assemble_stiffness(*space, eps)),
    load(f ? assemble_load(*space, f) : Eigen::VectorXd::Zero(space->size()))
{
}

Field discrete_lift(const SpacePtr &space, const DofMask &dirichlet, const ScalarFunction &g)
{
  Field lift(space);
  if (!g)
    return lift;
  for (Eigen::Index d = 0; d < space->size(); ++d)
  {
    if (!dirichlet[std::size_t(d)])
      continue;
    const double v = g(space->dof_point(int(d)));
    if (!std::isfinite(v))
      throw std::domain_error("discrete_lift: boundary data is not finite at a Dirichlet node");
    lift.coeffs(d) = v;
  }
  return lift;
}

Field solve_primal(const Discretization &disc, const DofMask &dirichlet, const ScalarFunction &g,
                   SolverOptions options)
{
  const Field lift = discrete_lift(disc.space, dirichlet, g);
  const Eigen::VectorXd rhs = disc.load - disc.stiffness * lift.coeffs;
  const RestrictedSolver solver(disc.stiffness, dirichlet, options);
  return Field(disc.space, lift.coeffs + solver.solve(rhs));
}

Field solve_primal(const SpacePtr &space, const ScalarFunction &f, const ScalarFunction &g,
                   BoundarySelector dirichlet, const Coefficient &eps, SolverOptions options)
{
  const Discretization disc(space, eps, f);
  return solve_primal(disc, boundary_mask(*space, dirichlet), g, options);
}

Field inject(const Field &coarse, const SpacePtr &fine)
{
  if (coarse.space == fine)
    return coarse;
  if (coarse.space->degree() == fine->degree() && detail::same_mesh(*coarse.space, *fine))
    return Field(fine, coarse.coeffs);
  return Field(fine, prolongation(*coarse.space, *fine) * coarse.coeffs);
}

double residual_pair(const Field &uh, const Field &v, const Discretization &test_disc)
{
  if (v.space != test_disc.space && !(v.space->degree() == test_disc.space->degree() &&
                                      detail::same_mesh(*v.space, *test_disc.space)))
    throw std::invalid_argument("residual_pair: test function does not live in the discretization's space");
  const Field u = inject(uh, test_disc.space);
  return v.coeffs.dot(test_disc.load) - v.coeffs.dot(test_disc.stiffness * u.coeffs);
}

double residual_pair(const Field &uh, const Field &v, const ScalarFunction &f, const Coefficient &eps)
{
  const Discretization disc(v.space, eps, f);
  return residual_pair(uh, v, disc);
}

Field l2_project(const Field &fine, const SpacePtr &coarse, const DofMask *fixed_zero, SolverOptions options)
{
  const SparseMatrix P = prolongation(*coarse, *fine.space);
  const SparseMatrix Mf = assemble_mass(*fine.space);
  const Eigen::VectorXd rhs = P.transpose() * (Mf * fine.coeffs);
  const SparseMatrix Mc = assemble_mass(*coarse);
  const DofMask none(std::size_t(coarse->size()), 0);
  const RestrictedSolver solver(Mc, fixed_zero ? *fixed_zero : none, options);
  return Field(coarse, solver.solve(rhs));
}

double flux_functional(const Field &u, const Field &theta, const ScalarFunction &f, const Coefficient &eps)
{
  const bool theta_finer = theta.space != u.space && theta.space->mesh().refines(u.space->mesh()) &&
                           !detail::same_mesh(*theta.space, *u.space);
  const SpacePtr &space = theta_finer ? theta.space : u.space;
  const Field uu = inject(u, space), tt = inject(theta, space);
  const Discretization disc(space, eps, f);
  return tt.coeffs.dot(disc.stiffness * uu.coeffs) - tt.coeffs.dot(disc.load);
}

double norm(const Field &u, NormKind kind, const Region &omega, const Coefficient &eps)
{
  switch (kind)
  {
    case NormKind::L2:
    {
      if (omega.is_empty())
        return 0.0;
      const SparseMatrix M = assemble_mass(*u.space, omega);
      return std::sqrt(std::max(0.0, u.coeffs.dot(M * u.coeffs)));
    }
    case NormKind::Energy:
    {
      const SparseMatrix K = assemble_stiffness(*u.space, eps);
      return std::sqrt(std::max(0.0, u.coeffs.dot(K * u.coeffs)));
    }
    case NormKind::H1:
    {
      const SparseMatrix K = assemble_stiffness(*u.space, Coefficient::constant(1.0));
      const SparseMatrix M = assemble_mass(*u.space);
      return std::sqrt(std::max(0.0, u.coeffs.dot(K * u.coeffs) + u.coeffs.dot(M * u.coeffs)));
    }
  }
  return 0.0;
}

} // namespace wcmo
