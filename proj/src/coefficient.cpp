// SPDX-License-Identifier: Apache-2.0

#include "wcmo/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <stdexcept>

namespace wcmo
{

GriddedLogField::GriddedLogField(int rows, int cols, std::vector<double> log_values)
  : rows_(rows), cols_(cols), values_(std::move(log_values))
{
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("GriddedLogField: grid must be at least 2 x 2");
  if (values_.size() != std::size_t(rows) * std::size_t(cols))
    throw std::invalid_argument("GriddedLogField: value count does not match the grid");
  for (double v : values_)
    if (!std::isfinite(v))
      throw std::invalid_argument("GriddedLogField: non-finite value");
}

double GriddedLogField::log_value(double x, double y) const
{
  const double u = std::clamp(x, 0.0, 1.0) * double(cols_ - 1);
  const double v = std::clamp(y, 0.0, 1.0) * double(rows_ - 1);
  const int c = std::min(int(u), cols_ - 2), r = std::min(int(v), rows_ - 2);
  const double s = u - c, t = v - r;
  return (1 - s) * (1 - t) * log_at_node(r, c) + s * (1 - t) * log_at_node(r, c + 1) +
         (1 - s) * t * log_at_node(r + 1, c) + s * t * log_at_node(r + 1, c + 1);
}

double GriddedLogField::value(double x, double y) const { return std::exp(log_value(x, y)); }

GriddedLogField GriddedLogField::load(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open permeability file: " + path);
  long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 2 || cols < 2 || rows > 100000 || cols > 100000)
    throw std::runtime_error("malformed permeability header in " + path);
  std::vector<double> values(std::size_t(rows) * std::size_t(cols));
  for (double &v : values)
    if (!(in >> v))
      throw std::runtime_error("permeability file truncated: " + path);
  return GriddedLogField(int(rows), int(cols), std::move(values));
}

void GriddedLogField::save(const std::string &path) const
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write permeability file: " + path);
  out << rows_ << ' ' << cols_ << '\n' << std::setprecision(17);
  for (int r = 0; r < rows_; ++r)
  {
    for (int c = 0; c < cols_; ++c)
      out << (c ? " " : "") << log_at_node(r, c);
    out << '\n';
  }
}

std::vector<GaussianBump> synth_bumps(std::uint64_t seed)
{
  // Explicit transforms of raw engine output keep the field identical across
  // standard libraries.
  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return double(gen() >> 11) * 0x1.0p-53; };
  std::vector<GaussianBump> bumps(12);
  for (auto &b : bumps)
  {
    b.cx = unit();
    b.cy = unit();
    b.width = 0.04 + 0.16 * unit();
    b.amplitude = -3.0 + 6.0 * unit();
  }
  return bumps;
}

GriddedLogField synth_permeability(std::span<const GaussianBump> bumps, int rows, int cols)
{
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("synth_permeability: grid must be at least 2 x 2");
  std::vector<double> values(std::size_t(rows) * std::size_t(cols), 0.0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
    {
      const double x = double(c) / (cols - 1), y = double(r) / (rows - 1);
      double v = 0.0;
      for (const auto &b : bumps)
      {
        const double d2 = (x - b.cx) * (x - b.cx) + (y - b.cy) * (y - b.cy);
        v += b.amplitude * std::exp(-d2 / (2 * b.width * b.width));
      }
      values[std::size_t(r) * std::size_t(cols) + std::size_t(c)] = v;
    }
  return GriddedLogField(rows, cols, std::move(values));
}

GriddedLogField synth_permeability(std::uint64_t seed, int rows, int cols)
{
  const auto bumps = synth_bumps(seed);
  return synth_permeability(bumps, rows, cols);
}

Coefficient Coefficient::constant(double value)
{
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument("Coefficient: constant must be positive and finite");
  Coefficient c;
  c.value_ = value;
  return c;
}

Coefficient Coefficient::gridded(GriddedLogField field)
{
  Coefficient c;
  c.field_ = std::make_shared<const GriddedLogField>(std::move(field));
  return c;
}

} // namespace wcmo
