// SPDX-License-Identifier: Apache-2.0

#include "wcmo/driver.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{

constexpr const char *kLevels = "h is the cell side. Level k gives h = 2^-k on the unit square (tc3/tc4) and "
                                "h = 2^(1-k) on the bi-unit square and L-shape (tc1/tc2). tc1/tc2 start at "
                                "level 3 (h = 2^-2), tc3/tc4 at level 2 (4x4 cells).";

struct Flags
{
  std::string mode;
  std::string solver = "direct";
  std::string projection = "homogeneous";
  std::uint64_t perm_seed = 0;
};

void add_common(CLI::App *cmd, wcmo::RunConfig &rc, Flags &f)
{
  cmd->add_option("--mode", f.mode, "uniform | adaptive (default: per case)");
  cmd->add_option("--max-iters", rc.max_iters, "SEMR iterations")->capture_default_str();
  cmd->add_option("--dof-budget", rc.dof_budget, "stop before solving on more free dofs (0: none)")
    ->capture_default_str();
  cmd->add_option("--zeta", rc.zeta, "Doerfler parameter in (0,1)")->capture_default_str();
  cmd->add_option("--tol", rc.tol, "relative solver tolerance")->capture_default_str();
  cmd->add_option("--objective", rc.objective, "default | omega-l2 | h1-ball | energy-ball | flux")
    ->capture_default_str();
  cmd->add_option("--perm-file", rc.perm_file, "log-permeability grid file (tc3/tc4)");
  cmd->add_option("--perm-seed", f.perm_seed, "synthetic 628x628 log-permeability seed (tc3/tc4)");
  cmd->add_flag("--reference", rc.reference, "compute reference estimates");
  cmd->add_option("--ref-level", rc.ref_level, "uniform-mode reference mesh level")->capture_default_str();
  cmd->add_option("--solver", f.solver, "direct | cg")->capture_default_str();
  cmd->add_option("--projection", f.projection, "indicator projection target: homogeneous | full")
    ->capture_default_str();
  cmd->add_option("--out", rc.out, "output directory")->capture_default_str();
}

void finish(CLI::App *cmd, wcmo::RunConfig &rc, const Flags &f)
{
  if (!f.mode.empty())
    rc.mode = wcmo::parse_mode(f.mode);
  if (cmd->count("--perm-seed"))
    rc.perm_seed = f.perm_seed;
  if (f.solver == "direct")
    rc.solver = wcmo::SolverKind::Direct;
  else if (f.solver == "cg")
    rc.solver = wcmo::SolverKind::CG;
  else
    throw wcmo::UsageError("--solver must be 'direct' or 'cg'");
  if (f.projection == "homogeneous")
    rc.projection = wcmo::ProjectionTarget::Homogeneous;
  else if (f.projection == "full")
    rc.projection = wcmo::ProjectionTarget::Full;
  else
    throw wcmo::UsageError("--projection must be 'homogeneous' or 'full'");
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Worst-case multi-objective error estimation and adaptive refinement."};
  app.footer(kLevels);
  app.require_subcommand(1);

  wcmo::RunConfig rc;
  Flags rf;
  auto *run = app.add_subcommand("run", "run one case");
  run->add_option("--case", rc.case_id, "tc1 | tc2 | tc3 | tc4")->required();
  run->add_option("--degree", rc.degree, "polynomial degree 1..4")->capture_default_str();
  add_common(run, rc, rf);

  wcmo::SweepConfig sc;
  Flags sf;
  std::vector<std::string> modes;
  auto *sw = app.add_subcommand("sweep", "run every (case, degree, mode) combination");
  sw->add_option("--cases", sc.cases, "case ids")->required()->expected(0, -1);
  sw->add_option("--degrees", sc.degrees, "degrees")->required()->expected(0, -1);
  sw->add_option("--modes", modes, "modes")->expected(0, -1);
  add_common(sw, sc.base, sf);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::Success &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return wcmo::kExitUsage;
  }

  try
  {
    if (*run)
    {
      finish(run, rc, rf);
      return wcmo::run(rc, std::cerr);
    }
    finish(sw, sc.base, sf);
    for (const auto &m : modes)
      sc.modes.push_back(wcmo::parse_mode(m));
    if (modes.empty())
      sc.modes.push_back(wcmo::Mode::Uniform);
    return wcmo::sweep(sc, std::cerr);
  }
  catch (const wcmo::UsageError &e)
  {
    std::cerr << "usage error: " << e.what() << '\n';
    return wcmo::kExitUsage;
  }
}
