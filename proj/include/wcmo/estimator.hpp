// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_ESTIMATOR_HPP
#define WCMO_ESTIMATOR_HPP

#include "wcmo/functional.hpp"
#include "wcmo/report.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace wcmo
{

// Convex set of objective functionals.
struct ObjectiveSpec
{
  enum class Kind
  {
    FiniteHull,     // convex hull of finitely many functionals
    DualUnitBall,   // unit ball of H* for the H1 or energy inner product
    OperatorBallL2, // { (., chi_omega v) : ||v||_L2 <= 1 }
    BoundaryFlux    // { a_eps(., l_lambda) : lambda = 0 off omega, |||lambda||| <= 1 }
  };

  Kind kind = Kind::OperatorBallL2;
  std::vector<LinearFunctional> functionals; // FiniteHull
  NormKind inner_product = NormKind::H1;     // DualUnitBall
  Region omega;                              // OperatorBallL2
  BoundarySelector flux_sides;               // BoundaryFlux: omega as a union of sides

  static ObjectiveSpec finite_hull(std::vector<LinearFunctional> functionals);
  static ObjectiveSpec dual_unit_ball(NormKind inner_product);
  static ObjectiveSpec operator_ball_l2(Region omega);
  static ObjectiveSpec boundary_flux(BoundarySelector sides);

  // Throws std::invalid_argument if the hull is empty, the inner product is
  // not H1/energy, or the flux sides are not Dirichlet sides.
  void validate(BoundarySelector dirichlet) const;
};

// Weak problem a_eps(u0, v) = b(v) - a_eps(lift g, v) together with the
// objective set of interest. Empty load or data functions mean zero.
struct Problem
{
  ScalarFunction load;
  ScalarFunction dirichlet_data;
  BoundarySelector dirichlet = BoundarySelector::all();
  Coefficient eps = Coefficient::constant(1.0);
  ObjectiveSpec objective;
};

// ---------------------------------------------------------------------------
// Support functions

// max_i j_i(e) and the smallest maximizing index (0-based).
std::pair<double, int> support_finite_hull(const std::vector<LinearFunctional> &functionals, const Field &error);
double support_unit_ball(const Field &error, NormKind inner_product, const Coefficient &eps = Coefficient::constant(1.0));
double support_operator_ball(const Field &error, const Region &omega);

// Supporting functional of the set at e, represented on e's space, and the
// support value. Zero functional when the value vanishes. BoundaryFlux is
// not handled here; see flux_estimates.
struct Supporting
{
  Eigen::VectorXd representation;
  double value = 0.0;
  int index = -1; // FiniteHull argmax
  bool degenerate = false;
};
Supporting supporting_functional(const ObjectiveSpec &objective, const Field &error, const Coefficient &eps);

// ---------------------------------------------------------------------------
// Dual problems

struct DualSolution
{
  Field z;
  double surrogate_norm = 0.0; // ||chi_omega (u_fine - u_h)||_L2
  bool degenerate = false;
};

// z in V_0 (fine) with a_eps(v, z) = j(v) for all free v, j given by its
// representation on the fine space.
Field dual_solve(const Discretization &fine, const DofMask &fixed, const Eigen::VectorXd &functional,
                 SolverOptions options = {});

// z^{h/2} for the operator ball on omega with the supporting functional built
// from the surrogate error u_fine - u_h.
DualSolution dual_solve_supporting(const Discretization &fine, const DofMask &fixed, const Field &uh,
                                   const Field &u_fine, const Region &omega, SolverOptions options = {});

// <r(u_h), z_fine> = b(z) - a_eps(u_h, z) on the fine space.
double dwr_estimate(const Field &uh, const Field &z_fine, const Discretization &fine);

// ---------------------------------------------------------------------------
// Basis-function indicators for the DWR estimate

enum class ProjectionTarget
{
  Homogeneous, // onto V^h_0
  Full         // onto V^h
};

struct IndicatorSet
{
  Eigen::VectorXd sigma;    // z - Pi z in the fine basis
  Eigen::VectorXd residual; // <r(u_h), psi_i> for every fine dof
  Eigen::VectorXd eta;      // |sigma_i residual_i|
  double pairing = 0.0;     // sum_i sigma_i residual_i
  double projected = 0.0;   // <r(u_h), z - Pi z> from the assembled operators
};

IndicatorSet indicator_decompose(const Field &uh, const Field &z_fine, const Discretization &fine,
                                 const DofMask &coarse_fixed, ProjectionTarget target = ProjectionTarget::Homogeneous,
                                 SolverOptions options = {});

// ---------------------------------------------------------------------------
// Boundary-flux objective

// q in V_0 (zero on the whole boundary): a_eps(q, v) = -a_eps(u_fine - u_h, v).
Field solve_q(const Discretization &fine, const DofMask &boundary, const Field &uh, const Field &u_fine,
              SolverOptions options = {});
// l in the flux space (zero at `flux_fixed`): a_eps(l, v) = a_eps(u_fine - u_h + q, v).
Field solve_lift_phi(const Discretization &fine, const DofMask &flux_fixed, const Field &uh, const Field &u_fine,
                     const Field &q, SolverOptions options = {});
// sqrt(a_eps(l, l)).
double trace_halfnorm(const Field &l, const Coefficient &eps);
double trace_halfnorm(const Field &l, const SparseMatrix &stiffness);

struct FluxEstimates
{
  double est1 = 0.0, est2 = 0.0, bnd1 = 0.0, bnd2 = 0.0;
  double bnd2_alt = 0.0; // bound from a_eps(u_fine - u_h + q, psi_i)
  Eigen::VectorXd sigma; // l / |||l||| in the fine basis
  Eigen::VectorXd eta;   // summands of bnd2
  bool degenerate = false;
};

FluxEstimates flux_estimates(const Discretization &fine, const DofMask &flux_fixed, const Field &uh,
                             const Field &u_fine, const Field &q, const Field &l);

// ---------------------------------------------------------------------------
// Alternative error representations for a single functional j

struct Representations
{
  double primal = 0.0;    // <r(u_h), z_fine>
  double dual = 0.0;      // <rho(z_h), u_fine - u_h>
  double symmetric = 0.0; // 1/2 <r(u_h), z_fine - z_h> + 1/2 <rho(z_h), u_fine - u_h>
};

Representations alt_representations(const Field &uh, const Field &u_fine, const Field &z_h, const Field &z_fine,
                                    const LinearFunctional &j, const Discretization &fine);

// ---------------------------------------------------------------------------
// Full pipeline

struct EstimateOptions
{
  SolverOptions solver;
  ProjectionTarget projection = ProjectionTarget::Homogeneous;
  bool indicators = true;
};

// Fine-level quantities shared by the estimate pipeline.
struct FineLevel
{
  Discretization disc;
  DofMask dirichlet;
  Field u;
  std::shared_ptr<const RestrictedSolver> solver; // stiffness on the non-Dirichlet dofs
};

FineLevel solve_fine(const Problem &problem, const SpacePtr &fine, SolverOptions options = {});

// Estimates the objective error of u_h with the surrogate u_fine. The report
// carries est2 (and est1/bnd1 for the flux objective), bnd2, indicators and
// sigma; iteration, dof, h_min and reference are left to the caller.
EstimateReport estimate(const Problem &problem, const Field &uh, const FineLevel &fine,
                        const EstimateOptions &options = {});

// The same pipeline with a deeper reference space in place of the h/2 space.
double reference_estimate(const Problem &problem, const Field &uh, const SpacePtr &ref_space,
                          const EstimateOptions &options = {});
double reference_estimate(const Problem &problem, const Field &uh, const FineLevel &ref,
                          const EstimateOptions &options = {});

} // namespace wcmo

#endif // WCMO_ESTIMATOR_HPP
