// SPDX-License-Identifier: Apache-2.0

#include "wcmo/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace wcmo
{

namespace
{

constexpr double kZeroGuard = 1e-14;

bool negligible(double value, double scale) { return value == 0.0 || std::abs(value) <= kZeroGuard * scale; }

double quadratic(const SparseMatrix &A, const Eigen::VectorXd &x) { return std::max(0.0, x.dot(A * x)); }

Field surrogate_error(const Field &uh, const Field &u_fine) { return u_fine - inject(uh, u_fine.space); }

SparseMatrix gram(const Space &space, NormKind kind, const Coefficient &eps)
{
  switch (kind)
  {
    case NormKind::H1:
      return SparseMatrix(assemble_stiffness(space, Coefficient::constant(1.0)) + assemble_mass(space));
    case NormKind::Energy:
      return assemble_stiffness(space, eps);
    case NormKind::L2:
      break;
  }
  throw std::invalid_argument("dual unit ball: inner product must be H1 or energy");
}

} // namespace

ObjectiveSpec ObjectiveSpec::finite_hull(std::vector<LinearFunctional> functionals)
{
  ObjectiveSpec o;
  o.kind = Kind::FiniteHull;
  o.functionals = std::move(functionals);
  return o;
}

ObjectiveSpec ObjectiveSpec::dual_unit_ball(NormKind inner_product)
{
  ObjectiveSpec o;
  o.kind = Kind::DualUnitBall;
  o.inner_product = inner_product;
  return o;
}

ObjectiveSpec ObjectiveSpec::operator_ball_l2(Region omega)
{
  ObjectiveSpec o;
  o.kind = Kind::OperatorBallL2;
  o.omega = omega;
  return o;
}

ObjectiveSpec ObjectiveSpec::boundary_flux(BoundarySelector sides)
{
  ObjectiveSpec o;
  o.kind = Kind::BoundaryFlux;
  o.flux_sides = sides;
  return o;
}

void ObjectiveSpec::validate(BoundarySelector dirichlet) const
{
  switch (kind)
  {
    case Kind::FiniteHull:
      if (functionals.empty())
        throw std::invalid_argument("objective: finite hull needs at least one functional");
      break;
    case Kind::DualUnitBall:
      if (inner_product == NormKind::L2)
        throw std::invalid_argument("objective: dual unit ball needs the H1 or energy inner product");
      break;
    case Kind::OperatorBallL2:
      break;
    case Kind::BoundaryFlux:
      if (flux_sides.sides == 0 || (flux_sides.sides & ~dirichlet.sides) != 0)
        throw std::invalid_argument("objective: flux region must be a non-empty part of the Dirichlet boundary");
      break;
  }
}

std::pair<double, int> support_finite_hull(const std::vector<LinearFunctional> &functionals, const Field &error)
{
  if (functionals.empty())
    throw std::invalid_argument("support_finite_hull: empty functional list");
  double best = functionals[0](error);
  int index = 0;
  for (std::size_t i = 1; i < functionals.size(); ++i)
    if (const double v = functionals[i](error); v > best)
    {
      best = v;
      index = int(i);
    }
  return {best, index};
}

double support_unit_ball(const Field &error, NormKind inner_product, const Coefficient &eps)
{
  return std::sqrt(quadratic(gram(*error.space, inner_product, eps), error.coeffs));
}

double support_operator_ball(const Field &error, const Region &omega) { return norm(error, NormKind::L2, omega); }

Supporting supporting_functional(const ObjectiveSpec &objective, const Field &error, const Coefficient &eps)
{
  Supporting s;
  const Eigen::Index n = error.space->size();
  s.representation = Eigen::VectorXd::Zero(n);
  switch (objective.kind)
  {
    case ObjectiveSpec::Kind::FiniteHull:
    {
      const auto [value, index] = support_finite_hull(objective.functionals, error);
      s.value = value;
      s.index = index;
      const LinearFunctional &j = objective.functionals[std::size_t(index)];
      if (j.space() != error.space && !(j.space()->degree() == error.space->degree() &&
                                        detail::same_mesh(*j.space(), *error.space)))
      {
        if (!j.space()->mesh().refines(error.space->mesh()))
          throw std::invalid_argument("supporting_functional: functional space does not refine the error space");
        s.representation = j.restricted_to(error.space).representation();
      }
      else
        s.representation = j.representation();
      s.degenerate = value == 0.0;
      return s;
    }
    case ObjectiveSpec::Kind::DualUnitBall:
    {
      const SparseMatrix G = gram(*error.space, objective.inner_product, eps);
      const Eigen::VectorXd Ge = G * error.coeffs;
      s.value = std::sqrt(std::max(0.0, error.coeffs.dot(Ge)));
      if (s.value == 0.0)
      {
        s.degenerate = true;
        return s;
      }
      s.representation = Ge / s.value;
      return s;
    }
    case ObjectiveSpec::Kind::OperatorBallL2:
    {
      if (objective.omega.is_empty())
      {
        s.degenerate = true;
        return s;
      }
      const SparseMatrix M = assemble_mass(*error.space, objective.omega);
      const Eigen::VectorXd Me = M * error.coeffs;
      s.value = std::sqrt(std::max(0.0, error.coeffs.dot(Me)));
      if (s.value == 0.0)
      {
        s.degenerate = true;
        return s;
      }
      s.representation = Me / s.value;
      return s;
    }
    case ObjectiveSpec::Kind::BoundaryFlux:
      break;
  }
  throw std::invalid_argument("supporting_functional: boundary-flux objectives go through flux_estimates");
}

Field dual_solve(const Discretization &fine, const DofMask &fixed, const Eigen::VectorXd &functional,
                 SolverOptions options)
{
  const RestrictedSolver solver(fine.stiffness, fixed, options);
  return Field(fine.space, solver.solve(functional));
}

DualSolution dual_solve_supporting(const Discretization &fine, const DofMask &fixed, const Field &uh,
                                   const Field &u_fine, const Region &omega, SolverOptions options)
{
  DualSolution d{Field(fine.space), 0.0, false};
  const Field e = surrogate_error(uh, u_fine);
  const Supporting s = supporting_functional(ObjectiveSpec::operator_ball_l2(omega), e, fine.eps);
  d.surrogate_norm = s.value;
  const double scale = norm(u_fine, NormKind::L2, omega);
  if (s.degenerate || negligible(s.value, scale))
  {
    d.surrogate_norm = 0.0;
    d.degenerate = true;
    return d;
  }
  d.z = dual_solve(fine, fixed, s.representation, options);
  return d;
}

double dwr_estimate(const Field &uh, const Field &z_fine, const Discretization &fine)
{
  return residual_pair(uh, z_fine, fine);
}

IndicatorSet indicator_decompose(const Field &uh, const Field &z_fine, const Discretization &fine,
                                 const DofMask &coarse_fixed, ProjectionTarget target, SolverOptions options)
{
  IndicatorSet ind;
  const Field u = inject(uh, fine.space);
  ind.residual = fine.load - fine.stiffness * u.coeffs;
  const Field pz = l2_project(z_fine, uh.space, target == ProjectionTarget::Homogeneous ? &coarse_fixed : nullptr,
                              options);
  const Field pz_fine = inject(pz, fine.space);
  ind.sigma = z_fine.coeffs - pz_fine.coeffs;
  ind.eta = (ind.sigma.array() * ind.residual.array()).abs().matrix();
  ind.pairing = ind.sigma.dot(ind.residual);
  ind.projected = dwr_estimate(uh, z_fine, fine) - dwr_estimate(uh, pz_fine, fine);
  return ind;
}

namespace
{

Field solve_q_from_error(const Discretization &fine, const DofMask &boundary, const Field &e, SolverOptions options)
{
  const RestrictedSolver solver(fine.stiffness, boundary, options);
  return Field(fine.space, solver.solve(-(fine.stiffness * e.coeffs)));
}

Field solve_l_from_error(const Discretization &fine, const DofMask &flux_fixed, const Field &e, const Field &q,
                         SolverOptions options)
{
  const RestrictedSolver solver(fine.stiffness, flux_fixed, options);
  return Field(fine.space, solver.solve(fine.stiffness * (e.coeffs + q.coeffs)));
}

FluxEstimates flux_from_error(const Discretization &fine, const DofMask &flux_fixed, const Field &e, const Field &q,
                              const Field &l, double scale)
{
  FluxEstimates r;
  const Eigen::Index n = fine.space->size();
  r.sigma = Eigen::VectorXd::Zero(n);
  r.eta = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd Kl = fine.stiffness * l.coeffs;
  const double lnorm = std::sqrt(std::max(0.0, l.coeffs.dot(Kl)));
  if (negligible(lnorm, scale))
  {
    r.degenerate = true;
    return r;
  }
  const Eigen::VectorXd Ke = fine.stiffness * e.coeffs;
  const Eigen::VectorXd Keq = fine.stiffness * (e.coeffs + q.coeffs);
  r.est1 = std::abs(e.coeffs.dot(Kl)) / lnorm;
  r.est2 = std::abs(l.coeffs.dot(Kl)) / lnorm;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    if (flux_fixed[std::size_t(i)])
      continue;
    const double s = l.coeffs(i) / lnorm;
    r.sigma(i) = s;
    r.eta(i) = std::abs(s * Kl(i));
    r.bnd1 += std::abs(s * Ke(i));
    r.bnd2 += r.eta(i);
    r.bnd2_alt += std::abs(s * Keq(i));
  }
  return r;
}

double energy_scale(const Discretization &fine, const Field &u_fine)
{
  return std::sqrt(quadratic(fine.stiffness, u_fine.coeffs));
}

} // namespace

Field solve_q(const Discretization &fine, const DofMask &boundary, const Field &uh, const Field &u_fine,
              SolverOptions options)
{
  return solve_q_from_error(fine, boundary, surrogate_error(uh, u_fine), options);
}

Field solve_lift_phi(const Discretization &fine, const DofMask &flux_fixed, const Field &uh, const Field &u_fine,
                     const Field &q, SolverOptions options)
{
  return solve_l_from_error(fine, flux_fixed, surrogate_error(uh, u_fine), q, options);
}

double trace_halfnorm(const Field &l, const SparseMatrix &stiffness)
{
  return std::sqrt(quadratic(stiffness, l.coeffs));
}

double trace_halfnorm(const Field &l, const Coefficient &eps)
{
  return trace_halfnorm(l, assemble_stiffness(*l.space, eps));
}

FluxEstimates flux_estimates(const Discretization &fine, const DofMask &flux_fixed, const Field &uh,
                             const Field &u_fine, const Field &q, const Field &l)
{
  return flux_from_error(fine, flux_fixed, surrogate_error(uh, u_fine), q, l, energy_scale(fine, u_fine));
}

Representations alt_representations(const Field &uh, const Field &u_fine, const Field &z_h, const Field &z_fine,
                                    const LinearFunctional &j, const Discretization &fine)
{
  Representations r;
  const Field e = surrogate_error(uh, u_fine);
  const Field zh = inject(z_h, fine.space);
  r.primal = dwr_estimate(uh, z_fine, fine);
  r.dual = j(e) - e.coeffs.dot(fine.stiffness * zh.coeffs);
  r.symmetric = 0.5 * dwr_estimate(uh, z_fine - zh, fine) + 0.5 * r.dual;
  return r;
}

FineLevel solve_fine(const Problem &problem, const SpacePtr &fine, SolverOptions options)
{
  Discretization disc(fine, problem.eps, problem.load);
  DofMask mask = boundary_mask(*fine, problem.dirichlet);
  auto solver = std::make_shared<const RestrictedSolver>(disc.stiffness, mask, options);
  const Field lift = discrete_lift(fine, mask, problem.dirichlet_data);
  Field u(fine, lift.coeffs + solver->solve(disc.load - disc.stiffness * lift.coeffs));
  return {std::move(disc), std::move(mask), std::move(u), std::move(solver)};
}

EstimateReport estimate(const Problem &problem, const Field &uh, const FineLevel &fine,
                        const EstimateOptions &options)
{
  EstimateReport report;
  const Discretization &disc = fine.disc;
  const Field e = surrogate_error(uh, fine.u);
  const Eigen::Index n = disc.space->size();

  auto fill_indicators = [&](const Eigen::VectorXd &eta, const Eigen::VectorXd &sigma) {
    report.sigma.assign(sigma.data(), sigma.data() + sigma.size());
    report.indicators.reserve(std::size_t(n));
    for (Eigen::Index i = 0; i < n; ++i)
      report.indicators.push_back({int(i), eta(i)});
  };

  if (problem.objective.kind == ObjectiveSpec::Kind::BoundaryFlux)
  {
    const DofMask boundary = boundary_mask(*disc.space, BoundarySelector::all());
    const DofMask flux_fixed = boundary_mask(*disc.space, problem.objective.flux_sides.complement());
    const Field q = solve_q_from_error(disc, boundary, e, options.solver);
    const Field l = solve_l_from_error(disc, flux_fixed, e, q, options.solver);
    const FluxEstimates f = flux_from_error(disc, flux_fixed, e, q, l, energy_scale(disc, fine.u));
    report.est1 = f.est1;
    report.est2 = f.est2;
    report.bnd1 = f.bnd1;
    report.bnd2 = f.bnd2;
    report.degenerate = f.degenerate;
    if (f.degenerate)
      report.flags.push_back("estimate exactly zero");
    if (options.indicators)
      fill_indicators(f.eta, f.sigma);
    return report;
  }

  const Supporting s = supporting_functional(problem.objective, e, disc.eps);
  double scale = 0.0;
  switch (problem.objective.kind)
  {
    case ObjectiveSpec::Kind::OperatorBallL2:
      scale = problem.objective.omega.is_empty() ? 0.0 : norm(fine.u, NormKind::L2, problem.objective.omega);
      break;
    case ObjectiveSpec::Kind::DualUnitBall:
      scale = support_unit_ball(fine.u, problem.objective.inner_product, disc.eps);
      break;
    default:
      scale = std::abs(s.value);
      break;
  }
  if (s.degenerate || (problem.objective.kind != ObjectiveSpec::Kind::FiniteHull && negligible(s.value, scale)))
  {
    report.est2 = 0.0;
    report.bnd2 = 0.0;
    report.degenerate = true;
    report.flags.push_back("estimate exactly zero");
    if (options.indicators)
      fill_indicators(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n));
    return report;
  }
  const Field z = fine.solver ? Field(disc.space, fine.solver->solve(s.representation))
                              : dual_solve(disc, fine.dirichlet, s.representation, options.solver);
  report.est2 = dwr_estimate(uh, z, disc);
  if (options.indicators)
  {
    const DofMask coarse_fixed = boundary_mask(*uh.space, problem.dirichlet);
    const IndicatorSet ind = indicator_decompose(uh, z, disc, coarse_fixed, options.projection, options.solver);
    report.bnd2 = ind.eta.sum();
    fill_indicators(ind.eta, ind.sigma);
  }
  return report;
}

double reference_estimate(const Problem &problem, const Field &uh, const FineLevel &ref,
                          const EstimateOptions &options)
{
  EstimateOptions o = options;
  o.indicators = false;
  const EstimateReport r = estimate(problem, uh, ref, o);
  return r.est1 ? *r.est1 : r.est2.value_or(0.0);
}

double reference_estimate(const Problem &problem, const Field &uh, const SpacePtr &ref_space,
                          const EstimateOptions &options)
{
  if (!ref_space->mesh().refines(uh.space->mesh()))
    throw std::invalid_argument("reference_estimate: reference space does not refine the approximation space");
  return reference_estimate(problem, uh, solve_fine(problem, ref_space, options.solver), options);
}

} // namespace wcmo
