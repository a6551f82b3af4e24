// SPDX-License-Identifier: Apache-2.0

#include "properties.hpp"

#include "oracles.hpp"

#include "wcmo/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace props
{

using namespace wcmo;

namespace
{

constexpr std::uint64_t kSeed = 20161016;

struct Setup
{
  std::string label;
  Problem problem;
  Field uh;
  FineLevel fine;
  Discretization coarse;
  DofMask coarse_fixed;
};

std::shared_ptr<const Mesh> locally_refined(const Domain &domain, int level, Point near, int rounds)
{
  Mesh m = uniform_mesh(domain, level);
  for (int r = 0; r < rounds; ++r)
  {
    const int id = m.locate(near);
    const int ids[] = {id};
    m = refine(m, ids);
  }
  return std::make_shared<const Mesh>(std::move(m));
}

Setup make_setup(const std::string &label, const Problem &problem, std::shared_ptr<const Mesh> mesh, int p)
{
  const SpacePtr coarse = build_space(mesh, p);
  FineLevel c = solve_fine(problem, coarse);
  const SpacePtr fine = build_space(std::make_shared<const Mesh>(uniform_refine(*mesh)), p);
  return {label, problem, c.u, solve_fine(problem, fine), std::move(c.disc), std::move(c.dirichlet)};
}

const GriddedLogField &seeded_field()
{
  static const GriddedLogField field = synth_permeability(1);
  return field;
}

std::vector<Setup> compatible_setups()
{
  std::vector<Setup> s;
  const CaseSpec tc1 = make_case("tc1");
  const CaseSpec tc2 = make_case("tc2");
  for (int p : {1, 2, 3})
    s.push_back(make_setup("tc1 p" + std::to_string(p), tc1.problem,
                           std::make_shared<const Mesh>(uniform_mesh(tc1.domain, 3)), p));
  s.push_back(make_setup("tc1 p2 local", tc1.problem, locally_refined(tc1.domain, 3, {-0.6, -0.4}, 2), 2));
  s.push_back(make_setup("tc2 p2 local", tc2.problem, locally_refined(tc2.domain, 3, {-1e-3, 1e-3}, 3), 2));
  return s;
}

std::vector<Setup> flux_setups()
{
  std::vector<Setup> s;
  CaseOptions het;
  het.permeability = seeded_field();
  for (const auto &[name, opts] : {std::pair{std::string("tc3"), CaseOptions{}}, std::pair{std::string("tc3 het"), het}})
  {
    const CaseSpec c = make_case("tc3", opts);
    for (int p : {1, 2})
    {
      const std::string tag = name + " p" + std::to_string(p);
      s.push_back(make_setup(tag, c.problem, std::make_shared<const Mesh>(uniform_mesh(c.domain, 3)), p));
      s.push_back(make_setup(tag + " local", c.problem, locally_refined(c.domain, 2, {0.99, 0.34}, 3), p));
    }
  }
  return s;
}

double rel(double a, double b)
{
  const double d = std::abs(a - b);
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? d / s : d;
}

Check finish(Check c, const std::string &worst)
{
  c.pass = c.measured <= c.tolerance;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", c.measured);
  c.detail = std::string("worst ") + buf + (worst.empty() ? "" : " (" + worst + ")");
  return c;
}

Field random_field(const SpacePtr &space, std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f(space);
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i)
    f.coeffs(i) = u(rng);
  return f;
}

FluxEstimates flux_of(const Setup &s, const Field &u_fine)
{
  const Discretization &d = s.fine.disc;
  const DofMask boundary = boundary_mask(*d.space, BoundarySelector::all());
  const DofMask flux_fixed = boundary_mask(*d.space, s.problem.objective.flux_sides.complement());
  const Field q = solve_q(d, boundary, s.uh, u_fine);
  const Field l = solve_lift_phi(d, flux_fixed, s.uh, u_fine, q);
  return flux_estimates(d, flux_fixed, s.uh, u_fine, q, l);
}

} // namespace

Check galerkin_orthogonality()
{
  Check c{"Galerkin orthogonality |<r(u_h), phi>| / ||b||", 0.0, 1e-8, false, {}};
  std::string worst;
  std::vector<Setup> setups = compatible_setups();
  for (auto &f : flux_setups())
    setups.push_back(std::move(f));
  for (const Setup &s : setups)
  {
    const Discretization &d = s.coarse;
    const Field lift = discrete_lift(d.space, s.coarse_fixed, s.problem.dirichlet_data);
    const Eigen::VectorXd rhs = d.load - d.stiffness * lift.coeffs;
    double bnorm = 0.0;
    for (int i : free_dofs(s.coarse_fixed))
      bnorm += rhs(i) * rhs(i);
    bnorm = std::sqrt(bnorm);
    Field phi(d.space);
    for (int i : free_dofs(s.coarse_fixed))
    {
      phi.coeffs(i) = 1.0;
      const double r = std::abs(residual_pair(s.uh, phi, d)) / bnorm;
      phi.coeffs(i) = 0.0;
      if (r > c.measured)
      {
        c.measured = r;
        worst = s.label;
      }
    }
  }
  return finish(c, worst);
}

Check alt_representation_identity()
{
  Check c{"alt_representations primal = dual = symmetric = j(u_fine - u_h)", 0.0, 1e-8, false, {}};
  std::string worst;
  for (const Setup &s : compatible_setups())
  {
    if (s.label.rfind("tc1", 0) != 0)
      continue;
    const SpacePtr &fs = s.fine.disc.space;
    const Field w = discrete_lift(fs, DofMask(std::size_t(fs->size()), 1),
                                  [](Point p) { return 1.0 + p.x * p.y + 0.5 * std::sin(3.0 * p.x); });
    const LinearFunctional j = LinearFunctional::l2_pair(w, Region::rect({-0.75, -0.25, -0.75, -0.25}));
    const Field z_fine = dual_solve(s.fine.disc, s.fine.dirichlet, j.representation());
    const Field z_h = dual_solve(s.coarse, s.coarse_fixed, j.restricted_to(s.uh.space).representation());
    const double target = j(s.fine.u - inject(s.uh, fs));
    const Representations r = alt_representations(s.uh, s.fine.u, z_h, z_fine, j, s.fine.disc);
    for (double v : {r.primal, r.dual, r.symmetric})
      if (rel(v, target) > c.measured)
      {
        c.measured = rel(v, target);
        worst = s.label;
      }
  }
  return finish(c, worst);
}

Check dwr_equals_support_value()
{
  Check c{"dwr_estimate = supporting-functional value at u_fine - u_h", 0.0, 1e-8, false, {}};
  std::string worst;
  for (const Setup &s : compatible_setups())
  {
    EstimateOptions o;
    o.indicators = false;
    const EstimateReport r = estimate(s.problem, s.uh, s.fine, o);
    const double support = support_operator_ball(s.fine.u - inject(s.uh, s.fine.disc.space), s.problem.objective.omega);
    if (rel(*r.est2, support) > c.measured)
    {
      c.measured = rel(*r.est2, support);
      worst = s.label;
    }
  }
  return finish(c, worst);
}

Check flux_identity()
{
  Check c{"flux est1 = est2", 0.0, 1e-8, false, {}};
  std::string worst;
  for (const Setup &s : flux_setups())
  {
    const FluxEstimates f = flux_of(s, s.fine.u);
    if (rel(f.est1, f.est2) > c.measured)
    {
      c.measured = rel(f.est1, f.est2);
      worst = s.label;
    }
  }
  return finish(c, worst);
}

Check flux_bound_equality()
{
  Check c{"flux bnd2 from a(l, psi) = bnd2 from a(e + q, psi)", 0.0, 1e-9, false, {}};
  std::string worst;
  for (const Setup &s : flux_setups())
  {
    const FluxEstimates f = flux_of(s, s.fine.u);
    if (rel(f.bnd2, f.bnd2_alt) > c.measured)
    {
      c.measured = rel(f.bnd2, f.bnd2_alt);
      worst = s.label;
    }
  }
  return finish(c, worst);
}

Check indicator_linearity()
{
  Check c{"sum sigma_i <r, psi_i> = <r, z - Pi z>", 0.0, 1e-8, false, {}};
  std::string worst;
  for (const Setup &s : compatible_setups())
  {
    const DualSolution d =
      dual_solve_supporting(s.fine.disc, s.fine.dirichlet, s.uh, s.fine.u, s.problem.objective.omega);
    for (ProjectionTarget t : {ProjectionTarget::Homogeneous, ProjectionTarget::Full})
    {
      const IndicatorSet ind = indicator_decompose(s.uh, d.z, s.fine.disc, s.coarse_fixed, t);
      if (rel(ind.pairing, ind.projected) > c.measured)
      {
        c.measured = rel(ind.pairing, ind.projected);
        worst = s.label + (t == ProjectionTarget::Full ? " full" : " homogeneous");
      }
    }
  }
  return finish(c, worst);
}

Check assembly_oracle()
{
  Check c{"2x2 p=1 stiffness and mass vs Simpson oracle (abs)", 0.0, 1e-12, false, {}};
  const auto mesh = std::make_shared<const Mesh>(uniform_mesh(Domain::unit_square(), 1));
  const SpacePtr space = build_space(mesh, 1);
  const Eigen::MatrixXd K(assemble_stiffness(*space, Coefficient::constant(1.0)));
  const Eigen::MatrixXd M(assemble_mass(*space));
  const oracle::Q1Matrices o = oracle::q1_simpson(2, 1.0);
  auto node = [&](int dof) {
    const Point p = space->dof_point(dof);
    return int(std::lround(2.0 * p.x)) + 3 * int(std::lround(2.0 * p.y));
  };
  for (int a = 0; a < int(space->size()); ++a)
    for (int b = 0; b < int(space->size()); ++b)
    {
      c.measured = std::max(c.measured, std::abs(K(a, b) - o.stiffness(node(a), node(b))));
      c.measured = std::max(c.measured, std::abs(M(a, b) - o.mass(node(a), node(b))));
    }
  return finish(c, "");
}

Check dorfler_bruteforce()
{
  Check c{"Doerfler prefix vs brute-force minimal subset, 100 vectors (mismatches)", 0.0, 0.0, false, {}};
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> size(1, 14);
  std::uniform_int_distribution<int> small(0, 4);
  std::exponential_distribution<double> heavy(1.0);
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial)
  {
    const int n = size(rng);
    std::vector<double> eta(static_cast<std::size_t>(n));
    std::vector<Indicator> ind;
    for (int k = 0; k < n; ++k)
    {
      // Integer-valued vectors exercise ties.
      eta[std::size_t(k)] = trial % 2 ? double(small(rng)) : heavy(rng);
      ind.push_back({k, eta[std::size_t(k)]});
    }
    const std::vector<int> marked = mark_functions(ind, MarkingParams{});
    const int best = oracle::min_dorfler_cardinality(eta, 0.5);
    double total = 0.0, sum = 0.0;
    for (double e : eta)
      total += e;
    for (int k : marked)
      sum += eta[std::size_t(k)];
    const bool lib_ok = total == 0.0 ? marked.empty() : sum >= 0.5 * total;
    const int expected = total == 0.0 ? 0 : best;
    if (!lib_ok || int(marked.size()) != expected)
      ++mismatches;
  }
  c.measured = mismatches;
  return finish(c, "");
}

Check support_homogeneity()
{
  Check c{"support functions s(alpha e) = alpha s(e)", 0.0, 1e-10, false, {}};
  std::string worst;
  std::mt19937_64 rng(kSeed + 1);
  const auto mesh = std::make_shared<const Mesh>(uniform_mesh(Domain::bi_unit_square(), 3));
  const SpacePtr space = build_space(mesh, 2);
  const Field e = random_field(space, rng);
  std::vector<LinearFunctional> hull;
  for (int k = 0; k < 5; ++k)
    hull.push_back(LinearFunctional::from_vector(space, random_field(space, rng).coeffs));
  const Region omega = Region::rect({-0.75, -0.25, -0.75, -0.25});

  const Setup flux = make_setup("tc3", make_case("tc3").problem,
                                std::make_shared<const Mesh>(uniform_mesh(Domain::unit_square(), 3)), 1);
  const Field uh_fine = inject(flux.uh, flux.fine.disc.space);
  const Field ef = flux.fine.u - uh_fine;

  auto evaluate = [&](double alpha) {
    const Field ae = alpha * e;
    return std::vector<double>{support_finite_hull(hull, ae).first,
                               support_unit_ball(ae, NormKind::H1),
                               support_unit_ball(ae, NormKind::Energy, Coefficient::constant(2.5)),
                               support_operator_ball(ae, omega),
                               flux_of(flux, uh_fine + alpha * ef).est2};
  };
  const char *names[] = {"finite hull", "H1 ball", "energy ball", "operator ball", "boundary flux"};
  const std::vector<double> base = evaluate(1.0);
  for (double alpha : {0.0, 0.5, 3.0, 1e3})
  {
    const std::vector<double> v = evaluate(alpha);
    for (std::size_t k = 0; k < v.size(); ++k)
    {
      const double expect = alpha * base[k];
      const double d = alpha == 0.0 ? std::abs(v[k]) : rel(v[k], expect);
      if (d > c.measured)
      {
        c.measured = d;
        worst = names[k];
      }
    }
  }
  return finish(c, worst);
}

Check finite_hull_bruteforce()
{
  Check c{"finite-hull support vs vertex enumeration (abs)", 0.0, 1e-10, false, {}};
  std::mt19937_64 rng(kSeed + 2);
  const auto mesh = std::make_shared<const Mesh>(uniform_mesh(Domain::unit_square(), 1));
  const SpacePtr space = build_space(mesh, 1);
  std::vector<LinearFunctional> hull;
  for (int k = 0; k < 5; ++k)
    hull.push_back(LinearFunctional::from_vector(space, random_field(space, rng).coeffs));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int wrong_index = 0;
  for (int trial = 0; trial < 200; ++trial)
  {
    const Field e = random_field(space, rng);
    double best = -INFINITY;
    int arg = -1;
    for (int k = 0; k < 5; ++k)
    {
      double v = 0.0;
      for (Eigen::Index i = 0; i < e.coeffs.size(); ++i)
        v += hull[std::size_t(k)].representation()(i) * e.coeffs(i);
      if (v > best)
      {
        best = v;
        arg = k;
      }
    }
    const auto [value, index] = support_finite_hull(hull, e);
    c.measured = std::max(c.measured, std::abs(value - best));
    wrong_index += index != arg;
    // No convex combination exceeds the best vertex.
    std::vector<double> w(5);
    double wsum = 0.0;
    for (double &x : w)
      wsum += (x = u(rng));
    double combo = 0.0;
    for (int k = 0; k < 5; ++k)
      combo += w[std::size_t(k)] / wsum * hull[std::size_t(k)](e);
    c.measured = std::max(c.measured, combo - value);
  }
  Check r = finish(c, "");
  if (wrong_index)
  {
    r.pass = false;
    r.detail += ", " + std::to_string(wrong_index) + " argmax mismatches";
  }
  return r;
}

std::vector<Check> all()
{
  return {galerkin_orthogonality(), alt_representation_identity(), dwr_equals_support_value(),
          flux_identity(),          flux_bound_equality(),         indicator_linearity(),
          assembly_oracle(),        dorfler_bruteforce(),          support_homogeneity(),
          finite_hull_bruteforce()};
}

} // namespace props
