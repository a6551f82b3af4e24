// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_REPORT_HPP
#define WCMO_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wcmo
{

struct Indicator
{
  int dof;
  double eta;
};

// One row of a convergence history. Compatible-data objectives fill est2 with
// the DWR estimate and bnd2 with the indicator sum; est1 and bnd1 stay empty.
struct EstimateReport
{
  int iteration = 0;
  long dof = 0;
  double h_min = 0.0;
  std::optional<double> est1, est2, bnd1, bnd2;
  std::optional<double> reference;
  std::optional<double> exact;
  std::vector<Indicator> indicators; // fine-space dof ids
  std::vector<double> sigma;         // expansion coefficients per fine dof
  bool degenerate = false;           // normalization short-circuited to zero
  std::vector<std::string> flags;
};

using ConvergenceHistory = std::vector<EstimateReport>;

inline constexpr const char *kCsvHeader = "iter,dof,h_min,est1,est2,bnd1,bnd2,ref,exact";

void write_csv(std::ostream &os, const ConvergenceHistory &history);
std::string format_real(double v);

} // namespace wcmo

#endif // WCMO_REPORT_HPP
