// SPDX-License-Identifier: Apache-2.0

#include "wcmo/driver.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace wcmo
{

namespace fs = std::filesystem;

namespace
{

const char *solver_name(SolverKind k) { return k == SolverKind::Direct ? "direct" : "cg"; }
const char *projection_name(ProjectionTarget t) { return t == ProjectionTarget::Homogeneous ? "homogeneous" : "full"; }

void write_text(const fs::path &path, const std::string &text)
{
  std::ofstream os(path);
  if (!os)
    throw std::runtime_error("cannot write " + path.string());
  os << text;
}

} // namespace

std::string to_string(Mode mode) { return mode == Mode::Uniform ? "uniform" : "adaptive"; }

Mode parse_mode(const std::string &s)
{
  if (s == "uniform")
    return Mode::Uniform;
  if (s == "adaptive")
    return Mode::Adaptive;
  throw UsageError("mode must be 'uniform' or 'adaptive', got '" + s + "'");
}

void RunConfig::validate() const
{
  if (degree < 1 || degree > 4)
    throw UsageError("--degree must be in [1, 4]");
  if (max_iters < 1)
    throw UsageError("--max-iters must be positive");
  if (dof_budget < 0)
    throw UsageError("--dof-budget must be non-negative");
  if (!(zeta > 0.0 && zeta < 1.0))
    throw UsageError("--zeta must lie in (0, 1)");
  if (!(tol > 0.0 && tol < 1.0))
    throw UsageError("--tol must lie in (0, 1)");
  if (ref_level < 1 || ref_level >= kMaxLevel)
    throw UsageError("--ref-level out of range");
  if (!perm_file.empty() && perm_seed)
    throw UsageError("--perm-file and --perm-seed are mutually exclusive");
  if (objective != "default" && objective != "omega-l2" && objective != "h1-ball" && objective != "energy-ball" &&
      objective != "flux")
    throw UsageError("--objective must be one of default, omega-l2, h1-ball, energy-ball, flux");
  if (out.empty())
    throw UsageError("--out must not be empty");
}

CaseSpec configured_case(const RunConfig &config)
{
  CaseOptions opts;
  if (!config.perm_file.empty())
    opts.permeability = GriddedLogField::load(config.perm_file);
  else if (config.perm_seed)
    opts.permeability = synth_permeability(*config.perm_seed);
  if (opts.permeability && config.case_id != "tc3" && config.case_id != "tc4")
    throw UsageError("a permeability field applies to tc3 and tc4 only");
  CaseSpec spec = make_case(config.case_id, opts);

  ObjectiveSpec &obj = spec.problem.objective;
  if (config.objective == "omega-l2")
    obj = ObjectiveSpec::operator_ball_l2(spec.error_region);
  else if (config.objective == "h1-ball")
    obj = ObjectiveSpec::dual_unit_ball(NormKind::H1);
  else if (config.objective == "energy-ball")
    obj = ObjectiveSpec::dual_unit_ball(NormKind::Energy);
  else if (config.objective == "flux")
    obj = ObjectiveSpec::boundary_flux(spec.problem.dirichlet);
  try
  {
    obj.validate(spec.problem.dirichlet);
  }
  catch (const std::invalid_argument &e)
  {
    throw UsageError(e.what());
  }
  return spec;
}

int run(const RunConfig &config, std::ostream &log)
{
  try
  {
    config.validate();
    const CaseSpec spec = configured_case(config);
    const Mode mode = config.mode.value_or(spec.default_mode);

    SemrOptions opts;
    opts.max_iters = config.max_iters;
    opts.dof_budget = config.dof_budget;
    opts.marking.zeta = config.zeta;
    opts.estimate.solver.rel_tol = config.tol;
    opts.estimate.solver.kind = config.solver;
    opts.estimate.projection = config.projection;
    opts.reference = config.reference;
    opts.ref_level = config.ref_level;

    const fs::path out(config.out);
    fs::create_directories(out / "meshes");

    const SemrResult result = semr_run(spec, config.degree, mode, opts);

    {
      std::ofstream csv(out / "convergence.csv");
      if (!csv)
        throw std::runtime_error("cannot write " + (out / "convergence.csv").string());
      write_csv(csv, result.history);
    }
    for (std::size_t k = 0; k < result.meshes.size(); ++k)
      write_text(out / "meshes" / ("iter_" + std::to_string(k) + ".txt"), to_text(result.meshes[k]));

    nlohmann::ordered_json m;
    m["case"] = config.case_id;
    m["degree"] = config.degree;
    m["mode"] = to_string(mode);
    m["max_iters"] = config.max_iters;
    m["dof_budget"] = config.dof_budget;
    m["zeta"] = config.zeta;
    m["tol"] = config.tol;
    m["solver"] = solver_name(config.solver);
    m["projection"] = projection_name(config.projection);
    m["objective"] = config.objective;
    m["perm_file"] = config.perm_file;
    m["perm_seed"] = config.perm_seed ? nlohmann::ordered_json(*config.perm_seed) : nlohmann::ordered_json();
    m["permeability"] = spec.problem.eps.is_constant() ? "constant" : "gridded";
    m["reference"] = config.reference;
    m["ref_level"] = config.ref_level;
    m["initial_level"] = spec.initial_level;
    m["quadrature_points_per_axis"] = config.degree + 2;
    m["load_quadrature_points_per_axis"] = kLoadPointsPerAxis;
    m["exact_error_points_per_axis"] = config.degree + 4;
    m["threads"] = assembly_threads();
    m["iterations"] = result.history.size();
    m["flags"] = result.flags;
    m["failure"] = result.failure ? nlohmann::ordered_json(*result.failure) : nlohmann::ordered_json();
    write_text(out / "manifest.json", m.dump(2) + "\n");

    for (const auto &f : result.flags)
      log << "note: " << f << '\n';
    if (result.failure)
    {
      log << "error: solver failure: " << *result.failure << '\n';
      return kExitSolver;
    }
    return kExitOk;
  }
  catch (const UsageError &e)
  {
    log << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (const std::out_of_range &e)
  {
    log << "error: " << e.what() << '\n';
    return kExitUnknownCase;
  }
  catch (const SolverFailure &e)
  {
    log << "error: solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  catch (const std::exception &e)
  {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int sweep(const SweepConfig &config, std::ostream &log)
{
  if (config.cases.empty() || config.degrees.empty() || config.modes.empty())
  {
    log << "usage error: sweep needs at least one case, degree and mode\n";
    return kExitUsage;
  }
  const fs::path out(config.base.out);
  try
  {
    fs::create_directories(out);
  }
  catch (const std::exception &e)
  {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
  std::ofstream index(out / "index.csv");
  if (!index)
  {
    log << "error: cannot write " << (out / "index.csv").string() << '\n';
    return kExitError;
  }
  index << "case,degree,mode,status,csv\n";
  int worst = kExitOk;
  for (const auto &c : config.cases)
    for (int p : config.degrees)
      for (Mode mode : config.modes)
      {
        RunConfig rc = config.base;
        rc.case_id = c;
        rc.degree = p;
        rc.mode = mode;
        const std::string name = c + "_p" + std::to_string(p) + "_" + to_string(mode);
        rc.out = (out / name).string();
        const int status = run(rc, log);
        index << c << ',' << p << ',' << to_string(mode) << ',' << status << ',' << name << "/convergence.csv\n";
        if (status != kExitOk)
          worst = kExitError;
      }
  return worst;
}

} // namespace wcmo
