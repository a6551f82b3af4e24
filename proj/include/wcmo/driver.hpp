// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_DRIVER_HPP
#define WCMO_DRIVER_HPP

#include "wcmo/adapt.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wcmo
{

// Exit statuses of run and sweep.
enum ExitCode : int
{
  kExitOk = 0,
  kExitError = 1,
  kExitUsage = 2,
  kExitUnknownCase = 3,
  kExitSolver = 4
};

class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig
{
  std::string case_id = "tc1";
  int degree = 1;
  std::optional<Mode> mode; // case default when empty
  int max_iters = 6;
  long dof_budget = 0;
  double zeta = 0.5;
  double tol = 1e-10;
  std::string objective = "default"; // default | omega-l2 | h1-ball | energy-ball | flux
  std::string perm_file;
  std::optional<std::uint64_t> perm_seed;
  bool reference = false;
  int ref_level = 8;
  SolverKind solver = SolverKind::Direct;
  ProjectionTarget projection = ProjectionTarget::Homogeneous;
  std::string out = "out";

  // Throws UsageError for out-of-range values.
  void validate() const;
};

std::string to_string(Mode mode);
Mode parse_mode(const std::string &s);

// Builds the case with the configured permeability and objective.
CaseSpec configured_case(const RunConfig &config);

// Writes <out>/convergence.csv, <out>/meshes/iter_k.txt and
// <out>/manifest.json. Diagnostics go to `log`.
int run(const RunConfig &config, std::ostream &log);

struct SweepConfig
{
  std::vector<std::string> cases;
  std::vector<int> degrees;
  std::vector<Mode> modes;
  RunConfig base;
};

// One run per (case, degree, mode) in <out>/<case>_p<degree>_<mode>, plus
// <out>/index.csv listing the status of every run.
int sweep(const SweepConfig &config, std::ostream &log);

} // namespace wcmo

#endif // WCMO_DRIVER_HPP
