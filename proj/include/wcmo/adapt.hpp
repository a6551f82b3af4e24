// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_ADAPT_HPP
#define WCMO_ADAPT_HPP

#include "wcmo/cases.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wcmo
{

struct MarkingParams
{
  double zeta = 0.5;

  // Throws std::invalid_argument unless 0 < zeta < 1.
  void validate() const;
};

// Shortest prefix of the indicators sorted by decreasing eta (ties by
// increasing dof id) whose sum reaches (1 - zeta) of the total. Returns the
// marked dof ids in increasing order; empty when all indicators vanish.
std::vector<int> mark_functions(const std::vector<Indicator> &indicators, const MarkingParams &params);

// Coarse leaves covering the supports of the marked fine basis functions,
// in increasing id order.
std::vector<int> select_elements(const std::vector<int> &marked, const Space &fine, const Mesh &coarse);

struct SemrOptions
{
  int max_iters = 6;
  long dof_budget = 0; // 0: unlimited
  MarkingParams marking;
  EstimateOptions estimate;
  bool reference = false;
  int ref_level = 8;     // uniform mode: level of the reference mesh
  bool keep_fields = false;
};

struct SemrResult
{
  ConvergenceHistory history;
  std::vector<Mesh> meshes;     // mesh of every recorded iteration
  std::vector<Field> solutions; // u_h per iteration when keep_fields is set
  std::vector<std::string> flags;
  std::optional<std::string> failure; // solver failure message
};

// Solve, estimate, mark, refine. A solver failure ends the loop and keeps the
// iterations recorded so far.
SemrResult semr_run(const CaseSpec &spec, int degree, Mode mode, const SemrOptions &options = {});

} // namespace wcmo

#endif // WCMO_ADAPT_HPP
