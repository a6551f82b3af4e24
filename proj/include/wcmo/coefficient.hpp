// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_COEFFICIENT_HPP
#define WCMO_COEFFICIENT_HPP

#include "wcmo/mesh.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace wcmo
{

// Log-permeability samples on a rows x cols grid whose nodes span [0,1]^2
// inclusive; row 0 is y = 0. Values between nodes are bilinear in the log.
class GriddedLogField
{
public:
  GriddedLogField(int rows, int cols, std::vector<double> log_values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double log_at_node(int r, int c) const { return values_[std::size_t(r) * std::size_t(cols_) + std::size_t(c)]; }
  std::span<const double> log_values() const { return values_; }

  // Bilinear interpolation of the log values; coordinates are clamped to [0,1].
  double log_value(double x, double y) const;
  double value(double x, double y) const;

  // Text format: "rows cols" then rows*cols reals, row-major.
  static GriddedLogField load(const std::string &path);
  void save(const std::string &path) const;

  friend bool operator==(const GriddedLogField &, const GriddedLogField &) = default;

private:
  int rows_;
  int cols_;
  std::vector<double> values_;
};

struct GaussianBump
{
  double cx, cy, width, amplitude;
};

// Smooth synthetic log-permeability: sum of 12 seeded Gaussian bumps with
// amplitudes in [-3, 3].
GriddedLogField synth_permeability(std::uint64_t seed, int rows = 628, int cols = 628);
GriddedLogField synth_permeability(std::span<const GaussianBump> bumps, int rows, int cols);
std::vector<GaussianBump> synth_bumps(std::uint64_t seed);

// Diffusion coefficient of a_eps(u, v) = int eps grad u . grad v.
class Coefficient
{
public:
  static Coefficient constant(double value);
  static Coefficient gridded(GriddedLogField field);

  bool is_constant() const { return !field_; }
  double constant_value() const { return value_; }
  const GriddedLogField *field() const { return field_.get(); }
  double operator()(Point p) const { return field_ ? field_->value(p.x, p.y) : value_; }

private:
  double value_ = 1.0;
  std::shared_ptr<const GriddedLogField> field_;
};

} // namespace wcmo

#endif // WCMO_COEFFICIENT_HPP
