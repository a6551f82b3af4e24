// SPDX-License-Identifier: Apache-2.0

#include "wcmo/adapt.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wcmo
{

void MarkingParams::validate() const
{
  if (!(zeta > 0.0 && zeta < 1.0))
    throw std::invalid_argument("marking: zeta must lie in (0, 1)");
}

std::vector<int> mark_functions(const std::vector<Indicator> &indicators, const MarkingParams &params)
{
  params.validate();
  for (const auto &ind : indicators)
    if (!(ind.eta >= 0.0))
      throw std::invalid_argument("mark_functions: indicators must be non-negative");

  std::vector<Indicator> sorted = indicators;
  std::sort(sorted.begin(), sorted.end(), [](const Indicator &a, const Indicator &b) {
    return a.eta != b.eta ? a.eta > b.eta : a.dof < b.dof;
  });
  double total = 0.0;
  for (const auto &ind : sorted)
    total += ind.eta;
  if (total == 0.0)
    return {};

  const double threshold = (1.0 - params.zeta) * total;
  std::vector<int> marked;
  double sum = 0.0;
  for (const auto &ind : sorted)
  {
    marked.push_back(ind.dof);
    sum += ind.eta;
    if (sum >= threshold)
      break;
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

std::vector<int> select_elements(const std::vector<int> &marked, const Space &fine, const Mesh &coarse)
{
  std::set<int> cells;
  const Mesh &fm = fine.mesh();
  for (int dof : marked)
    for (int fc : fine.dof_support(dof))
    {
      CellKey key = fm.cell(fc);
      int id = coarse.find(key);
      while (id < 0 && key.level > 0)
      {
        key = key.parent();
        id = coarse.find(key);
      }
      if (id < 0)
        throw std::invalid_argument("select_elements: fine mesh does not refine the coarse mesh");
      cells.insert(id);
    }
  return {cells.begin(), cells.end()};
}

namespace
{

long free_count(const Space &space, BoundarySelector dirichlet)
{
  return long(count_free(boundary_mask(space, dirichlet)));
}

} // namespace

SemrResult semr_run(const CaseSpec &spec, int degree, Mode mode, const SemrOptions &options)
{
  if (degree < 1 || degree > 4)
    throw std::invalid_argument("semr_run: degree must be in [1, 4]");
  if (options.max_iters < 1)
    throw std::invalid_argument("semr_run: max_iters must be positive");
  options.marking.validate();
  spec.problem.objective.validate(spec.problem.dirichlet);

  const Problem &problem = spec.problem;
  const SolverOptions &solver = options.estimate.solver;
  SemrResult result;

  auto mesh = std::make_shared<const Mesh>(uniform_mesh(spec.domain, spec.initial_level));
  SpacePtr space = build_space(mesh, degree);
  std::optional<Field> carried; // u_h already known from the previous fine solve
  std::vector<Field> solutions;

  try
  {
    for (int k = 0; k < options.max_iters; ++k)
    {
      const long dof = free_count(*space, problem.dirichlet);
      if (options.dof_budget > 0 && dof > options.dof_budget)
      {
        result.flags.push_back("dof budget reached");
        break;
      }

      const Field uh = carried ? *carried : solve_fine(problem, space, solver).u;
      const auto fine_mesh = std::make_shared<const Mesh>(uniform_refine(*mesh));
      const SpacePtr fine_space = build_space(fine_mesh, degree);
      const FineLevel fine = solve_fine(problem, fine_space, solver);

      EstimateReport report = estimate(problem, uh, fine, options.estimate);
      report.iteration = k;
      report.dof = dof;
      report.h_min = mesh->h_min();
      report.exact = exact_error(spec, uh);

      std::vector<int> marked;
      if (mode == Mode::Adaptive && k + 1 < options.max_iters)
        marked = mark_functions(report.indicators, options.marking);
      if (!options.keep_fields)
      {
        report.indicators.clear();
        report.indicators.shrink_to_fit();
        report.sigma.clear();
        report.sigma.shrink_to_fit();
      }
      result.history.push_back(std::move(report));
      result.meshes.push_back(*mesh);
      solutions.push_back(uh);

      if (k + 1 == options.max_iters)
        break;
      if (mode == Mode::Uniform)
      {
        mesh = fine_mesh;
        space = fine_space;
        carried = fine.u;
        continue;
      }
      if (marked.empty())
      {
        result.flags.push_back("converged/stalled: all indicators vanish");
        break;
      }
      const std::vector<int> cells = select_elements(marked, *fine_space, *mesh);
      mesh = std::make_shared<const Mesh>(refine(*mesh, cells));
      space = build_space(mesh, degree);
      carried.reset();
    }

    if (options.reference && !result.history.empty())
    {
      std::shared_ptr<const Mesh> ref_mesh;
      if (mode == Mode::Uniform)
      {
        if (options.ref_level > result.meshes.back().max_level())
          ref_mesh = std::make_shared<const Mesh>(uniform_mesh(spec.domain, options.ref_level));
        else
          result.flags.push_back("reference level does not refine the last mesh; reference skipped");
      }
      else
        ref_mesh = std::make_shared<const Mesh>(uniform_refine(result.meshes.back()));
      if (ref_mesh)
      {
        const FineLevel ref = solve_fine(problem, build_space(ref_mesh, degree), solver);
        for (std::size_t k = 0; k < result.history.size(); ++k)
          result.history[k].reference = reference_estimate(problem, solutions[k], ref, options.estimate);
      }
    }
  }
  catch (const SolverFailure &e)
  {
    result.failure = e.what();
  }
  if (options.keep_fields)
    result.solutions = std::move(solutions);
  return result;
}

} // namespace wcmo
