// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_CASES_HPP
#define WCMO_CASES_HPP

#include "wcmo/estimator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wcmo
{

inline constexpr double kNu = 0.1;

// sin(6 pi x) sin(6 pi y) and its negative Laplacian.
double eval_u_osc(double x, double y);
double eval_f_osc(double x, double y);

// cos(pi x/2) cos(pi y/2) r^{2/3} sin(2 theta/3), theta in [0, 2 pi).
double eval_u_sing(double x, double y);
// -Laplacian of u_sing + u_osc.
double eval_f_tc2(double x, double y);

// Dirichlet data on the top and right edges of the unit square; throws
// std::domain_error elsewhere.
double eval_g_tc3(double x, double y);

enum class Mode
{
  Uniform,
  Adaptive
};

struct CaseSpec
{
  std::string id;
  Domain domain = Domain::unit_square();
  int initial_level = 2;
  Problem problem;
  ScalarFunction exact;   // empty when unknown
  Region error_region;    // where the exact error is measured
  Mode default_mode = Mode::Uniform;
};

struct CaseOptions
{
  // Heterogeneous permeability for tc3/tc4; homogeneous when empty.
  std::optional<GriddedLogField> permeability;
};

// tc1 .. tc4; throws std::out_of_range for an unknown id.
CaseSpec make_case(const std::string &id, const CaseOptions &options = {});
std::vector<std::string> case_ids();

// ||u_h - u||_{L2(region)} with (p+4)^2 Gauss points per cell; empty when
// the case has no exact solution.
std::optional<double> exact_error(const CaseSpec &spec, const Field &uh);

} // namespace wcmo

#endif // WCMO_CASES_HPP
