// SPDX-License-Identifier: Apache-2.0

#include "wcmo/cases.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wcmo
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr double kEdgeTol = 1e-12;

double polar_angle(double x, double y)
{
  const double t = std::atan2(y, x);
  return t < 0.0 ? t + 2.0 * pi : t;
}

} // namespace

double eval_u_osc(double x, double y) { return std::sin(6.0 * pi * x) * std::sin(6.0 * pi * y); }

double eval_f_osc(double x, double y) { return 72.0 * pi * pi * eval_u_osc(x, y); }

double eval_u_sing(double x, double y)
{
  const double r2 = x * x + y * y;
  if (r2 == 0.0)
    return 0.0;
  const double theta = polar_angle(x, y);
  return std::cos(pi * x / 2.0) * std::cos(pi * y / 2.0) * std::cbrt(r2) * std::sin(2.0 * theta / 3.0);
}

double eval_f_tc2(double x, double y)
{
  const double r = std::hypot(x, y);
  double sing = 0.0;
  if (r > 0.0)
  {
    constexpr double alpha = 2.0 / 3.0;
    const double theta = polar_angle(x, y);
    const double cx = std::cos(pi * x / 2.0), cy = std::cos(pi * y / 2.0);
    const double sx = std::sin(pi * x / 2.0), sy = std::sin(pi * y / 2.0);
    const double c = cx * cy;
    const double S = std::pow(r, alpha) * std::sin(alpha * theta);
    const double dr = alpha * std::pow(r, alpha - 1.0);
    const double Sx = dr * std::sin((alpha - 1.0) * theta);
    const double Sy = dr * std::cos((alpha - 1.0) * theta);
    const double cxd = -pi / 2.0 * sx * cy, cyd = -pi / 2.0 * cx * sy;
    // S is harmonic and -Laplacian(c) = (pi^2/2) c.
    sing = pi * pi / 2.0 * c * S - 2.0 * (cxd * Sx + cyd * Sy);
  }
  return sing + eval_f_osc(x, y);
}

double eval_g_tc3(double x, double y)
{
  const bool top = std::abs(y - 1.0) <= kEdgeTol && x >= -kEdgeTol && x <= 1.0 + kEdgeTol;
  const bool right = std::abs(x - 1.0) <= kEdgeTol && y >= -kEdgeTol && y <= 1.0 + kEdgeTol;
  if (top && !right)
  {
    if (x <= 0.5)
      return -std::log((1.0 - 2.0 * x) + kNu * 2.0 * x);
    return -std::log((2.0 * x - 1.0) + kNu * (2.0 - 2.0 * x));
  }
  if (right)
  {
    if (top)
      return 0.0;
    if (y <= 1.0 / 3.0)
      return std::log((1.0 - 3.0 * y) + kNu * 3.0 * y);
    return std::log((3.0 * y - 1.0) / 2.0 + kNu * 3.0 * (1.0 - y) / 2.0);
  }
  throw std::domain_error("eval_g_tc3: point is not on the Dirichlet boundary");
}

std::vector<std::string> case_ids() { return {"tc1", "tc2", "tc3", "tc4"}; }

CaseSpec make_case(const std::string &id, const CaseOptions &options)
{
  const Region omega = Region::rect({-0.75, -0.25, -0.75, -0.25});
  CaseSpec c;
  c.id = id;
  if (id == "tc1" || id == "tc2")
  {
    const bool osc = id == "tc1";
    c.domain = osc ? Domain::bi_unit_square() : Domain::l_shape();
    c.initial_level = 3;
    c.problem.load = osc ? ScalarFunction([](Point p) { return eval_f_osc(p.x, p.y); })
                         : ScalarFunction([](Point p) { return eval_f_tc2(p.x, p.y); });
    c.problem.dirichlet = BoundarySelector::all();
    c.problem.eps = Coefficient::constant(1.0);
    c.problem.objective = ObjectiveSpec::operator_ball_l2(omega);
    c.exact = osc ? ScalarFunction([](Point p) { return eval_u_osc(p.x, p.y); })
                  : ScalarFunction([](Point p) { return eval_u_sing(p.x, p.y) + eval_u_osc(p.x, p.y); });
    c.error_region = omega;
    c.default_mode = osc ? Mode::Uniform : Mode::Adaptive;
    return c;
  }
  if (id == "tc3" || id == "tc4")
  {
    const BoundarySelector gamma_d = BoundarySelector::of(Side::North, Side::East);
    c.domain = Domain::unit_square();
    c.initial_level = 2;
    c.problem.dirichlet = gamma_d;
    c.problem.dirichlet_data = [](Point p) { return eval_g_tc3(p.x, p.y); };
    c.problem.eps = options.permeability ? Coefficient::gridded(*options.permeability) : Coefficient::constant(1.0);
    c.problem.objective = ObjectiveSpec::boundary_flux(gamma_d);
    c.default_mode = id == "tc3" ? Mode::Uniform : Mode::Adaptive;
    return c;
  }
  throw std::out_of_range("unknown case '" + id + "'");
}

std::optional<double> exact_error(const CaseSpec &spec, const Field &uh)
{
  if (!spec.exact)
    return std::nullopt;
  return std::sqrt(integrate_squared_error(uh, spec.exact, spec.error_region, 4));
}

} // namespace wcmo
