// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_FIELD_HPP
#define WCMO_FIELD_HPP

#include "wcmo/space.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace wcmo
{

using ScalarFunction = std::function<double(Point)>;

// Discrete function: coefficients over the dofs of a space.
struct Field
{
  SpacePtr space;
  Eigen::VectorXd coeffs;

  Field() = default;
  explicit Field(SpacePtr s) : space(std::move(s)), coeffs(Eigen::VectorXd::Zero(space->size())) {}
  Field(SpacePtr s, Eigen::VectorXd c) : space(std::move(s)), coeffs(std::move(c))
  {
    if (coeffs.size() != space->size())
      throw std::invalid_argument("Field: coefficient count does not match the space");
  }

  double operator()(Point p) const { return space->evaluate(coeffs, p); }
};

inline bool same_space(const Field &a, const Field &b) { return a.space == b.space; }

inline Field operator+(const Field &a, const Field &b)
{
  if (!same_space(a, b))
    throw std::invalid_argument("Field: operands live in different spaces");
  return Field(a.space, a.coeffs + b.coeffs);
}

inline Field operator-(const Field &a, const Field &b)
{
  if (!same_space(a, b))
    throw std::invalid_argument("Field: operands live in different spaces");
  return Field(a.space, a.coeffs - b.coeffs);
}

inline Field operator*(double s, const Field &a) { return Field(a.space, s * a.coeffs); }

// Integration region: the whole domain or an axis-aligned box.
struct Region
{
  std::optional<Rect> box;

  static Region whole() { return {}; }
  static Region rect(Rect r) { return {r}; }
  bool is_whole() const { return !box.has_value(); }
  bool is_empty() const { return box && box->empty(); }
};

} // namespace wcmo

#endif // WCMO_FIELD_HPP
