// SPDX-License-Identifier: Apache-2.0

#include "wcmo/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wcmo
{

Rect Rect::intersect(const Rect &r) const
{
  Rect out{std::max(x0, r.x0), std::min(x1, r.x1), std::max(y0, r.y0), std::min(y1, r.y1)};
  if (out.x1 < out.x0)
    out.x1 = out.x0;
  if (out.y1 < out.y0)
    out.y1 = out.y0;
  return out;
}

Domain Domain::square(double x0, double x1, double y0, double y1)
{
  if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1) ||
      !(x0 < x1) || !(y0 < y1))
    throw std::invalid_argument("domain bounds must be finite with lo < hi");
  return Domain(Kind::Square, Rect{x0, x1, y0, y1});
}

Domain Domain::l_shape() { return Domain(Kind::LShape, Rect{-1.0, 1.0, -1.0, 1.0}); }

double Domain::area() const
{
  return kind_ == Kind::LShape ? 0.75 * bounds_.area() : bounds_.area();
}

bool Domain::contains_cell(const CellKey &c) const
{
  if (c.level < 0 || c.level > kMaxLevel)
    return false;
  const std::int64_t n = std::int64_t(1) << c.level;
  if (c.i < 0 || c.j < 0 || c.i >= n || c.j >= n)
    return false;
  if (kind_ == Kind::LShape && c.level >= 1)
  {
    const std::int64_t half = n / 2;
    return !(c.i >= half && c.j < half);
  }
  return true;
}

bool Domain::contains(Point p) const
{
  if (!bounds_.contains(p))
    return false;
  if (kind_ == Kind::LShape)
    return !(p.x > 0.0 && p.y < 0.0);
  return true;
}

Rect Domain::cell_rect(const CellKey &c) const
{
  const double n = std::ldexp(1.0, c.level);
  const double dx = bounds_.width() / n, dy = bounds_.height() / n;
  return Rect{bounds_.x0 + double(c.i) * dx, bounds_.x0 + double(c.i + 1) * dx,
              bounds_.y0 + double(c.j) * dy, bounds_.y0 + double(c.j + 1) * dy};
}

namespace
{

CellKey across(const CellKey &c, Side s)
{
  switch (s)
  {
    case Side::West:
      return {c.level, c.i - 1, c.j};
    case Side::East:
      return {c.level, c.i + 1, c.j};
    case Side::South:
      return {c.level, c.i, c.j - 1};
    case Side::North:
      return {c.level, c.i, c.j + 1};
  }
  return c;
}

} // namespace

Mesh::Mesh(Domain domain, std::vector<CellKey> leaves)
  : domain_(domain), leaves_(std::move(leaves))
{
  std::sort(leaves_.begin(), leaves_.end());
  if (std::adjacent_find(leaves_.begin(), leaves_.end()) != leaves_.end())
    throw std::invalid_argument("duplicate mesh cell");
  leaf_index_.reserve(leaves_.size());
  double area = 0.0;
  for (std::size_t k = 0; k < leaves_.size(); ++k)
  {
    const CellKey &c = leaves_[k];
    if (!domain_.contains_cell(c) || c.level < domain_.min_level())
      throw std::invalid_argument("mesh cell outside the domain");
    leaf_index_.emplace(c.pack(), int(k));
    for (CellKey a = c; a.level > 0;)
    {
      a = a.parent();
      if (!internal_.insert(a.pack()).second)
        break;
    }
    area += std::ldexp(1.0, -2 * c.level);
  }
  for (const CellKey &c : leaves_)
    for (CellKey a = c; a.level > 0;)
    {
      a = a.parent();
      if (leaf_index_.count(a.pack()))
        throw std::invalid_argument("mesh cells overlap");
    }
  const double expected = domain_.kind() == Domain::Kind::LShape ? 0.75 : 1.0;
  if (std::abs(area - expected) > 1e-12)
    throw std::invalid_argument("mesh cells do not tile the domain");
}

int Mesh::find(const CellKey &c) const
{
  auto it = leaf_index_.find(c.pack());
  return it == leaf_index_.end() ? -1 : it->second;
}

bool Mesh::in_tree(const CellKey &c) const
{
  return leaf_index_.count(c.pack()) > 0 || internal_.count(c.pack()) > 0;
}

Mesh::Neighbor Mesh::neighbor(const CellKey &c, Side s) const
{
  const CellKey n = across(c, s);
  if (!domain_.contains_cell(n))
    return {Neighbor::Kind::Boundary, n};
  if (is_leaf(n))
    return {Neighbor::Kind::Same, n};
  if (internal_.count(n.pack()))
    return {Neighbor::Kind::Finer, n};
  for (CellKey a = n; a.level > 0;)
  {
    a = a.parent();
    if (is_leaf(a))
      return {Neighbor::Kind::Coarser, a};
  }
  throw std::logic_error("inconsistent quadtree");
}

int Mesh::max_level() const { return leaves_.empty() ? 0 : leaves_.back().level; }

double Mesh::h_min() const
{
  const Rect &b = domain_.bounds();
  return std::ldexp(std::max(b.width(), b.height()), -max_level());
}

bool Mesh::refines(const Mesh &coarse) const
{
  if (!(domain_ == coarse.domain_))
    return false;
  for (const CellKey &c : leaves_)
  {
    bool covered = false;
    for (CellKey a = c;; a = a.parent())
    {
      if (coarse.is_leaf(a))
      {
        covered = true;
        break;
      }
      if (a.level == 0)
        break;
    }
    if (!covered)
      return false;
  }
  return true;
}

int Mesh::locate(Point p) const
{
  if (!domain_.contains(p))
    return -1;
  const Rect &b = domain_.bounds();
  const double u = (p.x - b.x0) / b.width(), v = (p.y - b.y0) / b.height();
  for (int l = domain_.min_level(); l <= max_level(); ++l)
  {
    const double n = std::ldexp(1.0, l);
    const auto i = std::int64_t(std::floor(u * n)), j = std::int64_t(std::floor(v * n));
    for (std::int64_t di = 0; di >= -1; --di)
      for (std::int64_t dj = 0; dj >= -1; --dj)
      {
        const CellKey c{l, i + di, j + dj};
        if (!domain_.contains_cell(c))
          continue;
        if (!domain_.cell_rect(c).contains(p, 1e-14 * b.width()))
          continue;
        if (int id = find(c); id >= 0)
          return id;
      }
  }
  return -1;
}

int Mesh::locate(std::int64_t X, std::int64_t Y, std::int64_t denom) const
{
  for (int l = domain_.min_level(); l <= max_level(); ++l)
  {
    const std::int64_t size = denom >> l;
    const std::int64_t i = X / size, j = Y / size;
    for (std::int64_t di = 0; di >= -1; --di)
    {
      if (di < 0 && X % size != 0)
        break;
      for (std::int64_t dj = 0; dj >= -1; --dj)
      {
        if (dj < 0 && Y % size != 0)
          break;
        const CellKey c{l, i + di, j + dj};
        if (!domain_.contains_cell(c))
          continue;
        if (int id = find(c); id >= 0)
          return id;
      }
    }
  }
  return -1;
}

Mesh uniform_mesh(const Domain &domain, int level)
{
  if (level < domain.min_level())
    throw std::invalid_argument("uniform_mesh: level below the domain's coarsest level");
  if (level > kMaxLevel)
    throw std::invalid_argument("uniform_mesh: level exceeds the supported depth");
  const std::int64_t n = std::int64_t(1) << level;
  std::vector<CellKey> cells;
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i)
      if (CellKey c{level, i, j}; domain.contains_cell(c))
        cells.push_back(c);
  return Mesh(domain, std::move(cells));
}

Mesh refine(const Mesh &mesh, std::span<const int> marked)
{
  const Domain &domain = mesh.domain();
  std::set<CellKey> leaves(mesh.cells().begin(), mesh.cells().end());
  std::unordered_set<std::uint64_t> internal;
  for (const CellKey &c : leaves)
    for (CellKey a = c; a.level > 0;)
    {
      a = a.parent();
      if (!internal.insert(a.pack()).second)
        break;
    }

  std::set<CellKey> work;
  for (int id : marked)
  {
    if (id < 0 || std::size_t(id) >= mesh.size())
      throw std::invalid_argument("refine: unknown cell id " + std::to_string(id));
    work.insert(mesh.cell(id));
  }

  auto in_tree = [&](const CellKey &c) {
    return leaves.count(c) > 0 || internal.count(c.pack()) > 0;
  };

  while (!work.empty())
  {
    const CellKey c = *work.begin();
    work.erase(work.begin());
    if (!leaves.count(c))
      continue;
    if (c.level + 1 > kMaxLevel)
      throw std::invalid_argument("refine: maximum refinement depth exceeded");
    leaves.erase(c);
    internal.insert(c.pack());
    for (int cy = 0; cy < 2; ++cy)
      for (int cx = 0; cx < 2; ++cx)
        leaves.insert(c.child(cx, cy));

    // Each child needs edge neighbours of level >= c.level.
    for (int cy = 0; cy < 2; ++cy)
      for (int cx = 0; cx < 2; ++cx)
        for (Side s : kSides)
        {
          const CellKey n = across(c.child(cx, cy), s);
          if (!domain.contains_cell(n) || in_tree(n) || in_tree(n.parent()))
            continue;
          CellKey a = n.parent();
          while (!leaves.count(a))
            a = a.parent();
          work.insert(a);
        }
  }
  return Mesh(domain, std::vector<CellKey>(leaves.begin(), leaves.end()));
}

Mesh uniform_refine(const Mesh &mesh)
{
  std::vector<CellKey> cells;
  cells.reserve(4 * mesh.size());
  for (const CellKey &c : mesh.cells())
    for (int cy = 0; cy < 2; ++cy)
      for (int cx = 0; cx < 2; ++cx)
        cells.push_back(c.child(cx, cy));
  return Mesh(mesh.domain(), std::move(cells));
}

bool is_one_irregular(const Mesh &mesh)
{
  for (const CellKey &c : mesh.cells())
    for (Side s : kSides)
    {
      const auto nb = mesh.neighbor(c, s);
      if (nb.kind == Mesh::Neighbor::Kind::Coarser && c.level - nb.key.level > 1)
        return false;
    }
  return true;
}

std::string to_text(const Mesh &mesh)
{
  std::ostringstream os;
  for (const CellKey &c : mesh.cells())
    os << c.level << ' ' << c.i << ' ' << c.j << '\n';
  return os.str();
}

} // namespace wcmo
