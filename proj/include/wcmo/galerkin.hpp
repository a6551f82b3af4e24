// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_GALERKIN_HPP
#define WCMO_GALERKIN_HPP

#include "wcmo/assembly.hpp"
#include "wcmo/coefficient.hpp"
#include "wcmo/field.hpp"
#include "wcmo/solver.hpp"

namespace wcmo
{

// a_eps and b assembled on one space. Everything that pairs the residual with
// test functions from this space goes through these operators, so Galerkin
// orthogonality holds to solver precision.
struct Discretization
{
  SpacePtr space;
  Coefficient eps;
  SparseMatrix stiffness;
  Eigen::VectorXd load;

  Discretization(SpacePtr space, Coefficient eps, const ScalarFunction &f);
};

// Nodal interpolation of g at the masked dofs; zero elsewhere. Throws
// std::domain_error if g is not finite at a masked node.
Field discrete_lift(const SpacePtr &space, const DofMask &dirichlet, const ScalarFunction &g);

// u_h = lift(g) + u0 with a_eps(u0, v) = b(v) - a_eps(lift(g), v) for all free v.
Field solve_primal(const Discretization &disc, const DofMask &dirichlet, const ScalarFunction &g,
                   SolverOptions options = {});
Field solve_primal(const SpacePtr &space, const ScalarFunction &f, const ScalarFunction &g,
                   BoundarySelector dirichlet, const Coefficient &eps, SolverOptions options = {});

// Exact representation of a coarse field in a nested fine space.
Field inject(const Field &coarse, const SpacePtr &fine);

// <r(u_h), v> = b(v) - a_eps(u_h, v). v must live in u_h's space or a
// refinement of it; u_h is injected, never re-interpolated.
double residual_pair(const Field &uh, const Field &v, const Discretization &test_disc);
double residual_pair(const Field &uh, const Field &v, const ScalarFunction &f, const Coefficient &eps);

// L2-orthogonal projection of a fine field onto a coarse ancestor space. With
// `fixed_zero`, the projection is onto the subspace vanishing at those dofs.
Field l2_project(const Field &fine, const SpacePtr &coarse, const DofMask *fixed_zero = nullptr,
                 SolverOptions options = {});

// Variationally consistent flux pairing a_eps(u, theta) - b(theta).
double flux_functional(const Field &u, const Field &theta, const ScalarFunction &f, const Coefficient &eps);

enum class NormKind
{
  L2,
  Energy,
  H1
};

// L2 (optionally restricted to a cell-aligned region), energy a_eps(u,u)^1/2,
// or full H1 norm.
double norm(const Field &u, NormKind kind, const Region &omega = Region::whole(),
            const Coefficient &eps = Coefficient::constant(1.0));

} // namespace wcmo

#endif // WCMO_GALERKIN_HPP
