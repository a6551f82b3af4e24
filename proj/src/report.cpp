// SPDX-License-Identifier: Apache-2.0

#include "wcmo/report.hpp"

#include <cstdio>

namespace wcmo
{

std::string format_real(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

void write_csv(std::ostream &os, const ConvergenceHistory &history)
{
  auto cell = [](const std::optional<double> &v) { return v ? format_real(*v) : std::string(); };
  os << kCsvHeader << '\n';
  for (const auto &r : history)
    os << r.iteration << ',' << r.dof << ',' << format_real(r.h_min) << ',' << cell(r.est1) << ','
       << cell(r.est2) << ',' << cell(r.bnd1) << ',' << cell(r.bnd2) << ',' << cell(r.reference) << ','
       << cell(r.exact) << '\n';
}

} // namespace wcmo
