// SPDX-License-Identifier: Apache-2.0

#include "wcmo/space.hpp"

#include "wcmo/quadrature.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace wcmo
{

namespace
{

using Key = std::uint64_t;

Key node_key(std::int64_t X, std::int64_t Y) { return (Key(Y) << 32) | Key(X); }
std::int64_t key_x(Key k) { return std::int64_t(k & 0xffffffffu); }
std::int64_t key_y(Key k) { return std::int64_t(k >> 32); }

// Local node indices lying on a side of the reference cell.
std::vector<int> side_nodes(int p, Side s)
{
  std::vector<int> out;
  const int m = p + 1;
  for (int t = 0; t < m; ++t)
    switch (s)
    {
      case Side::West:
        out.push_back(0 + m * t);
        break;
      case Side::East:
        out.push_back(p + m * t);
        break;
      case Side::South:
        out.push_back(t);
        break;
      case Side::North:
        out.push_back(t + m * p);
        break;
    }
  return out;
}

Side opposite(Side s)
{
  switch (s)
  {
    case Side::West:
      return Side::East;
    case Side::East:
      return Side::West;
    case Side::South:
      return Side::North;
    case Side::North:
      return Side::South;
  }
  return s;
}

struct SlaveRule
{
  std::vector<Key> masters;
  std::vector<double> weights;
};

} // namespace

Space::Space(std::shared_ptr<const Mesh> mesh, int degree) : mesh_(std::move(mesh)), degree_(degree)
{
  if (degree < 1 || degree > 4)
    throw std::invalid_argument("Space: degree must be in [1, 4]");
  const Mesh &m = *mesh_;
  const int p = degree_, np = p + 1, nl = local_size();
  const int ncell = int(m.size());
  const LagrangeBasis1D<double> basis(p);

  auto local_key = [&](const CellKey &c, int k) {
    const int shift = kMaxLevel - c.level;
    const std::int64_t X = (c.i * p + k % np) << shift;
    const std::int64_t Y = (c.j * p + k / np) << shift;
    return node_key(X, Y);
  };

  std::map<Key, SlaveRule> slaves;
  for (int id = 0; id < ncell; ++id)
  {
    const CellKey &c = m.cell(id);
    for (Side s : kSides)
    {
      const auto nb = m.neighbor(c, s);
      if (nb.kind != Mesh::Neighbor::Kind::Coarser)
        continue;
      if (c.level - nb.key.level != 1)
        throw std::logic_error("Space: mesh is not 1-irregular");
      const CellKey &C = nb.key;
      const std::vector<int> coarse_nodes = side_nodes(p, opposite(s));
      std::vector<Key> master_keys;
      for (int k : coarse_nodes)
        master_keys.push_back(local_key(C, k));
      const bool vertical = (s == Side::West || s == Side::East);
      const int cshift = kMaxLevel - C.level;
      const std::int64_t t0 = (vertical ? C.j : C.i) * p << cshift;
      const std::int64_t len = std::int64_t(p) << cshift;
      const std::int64_t spacing = len / p;
      for (int k : side_nodes(p, s))
      {
        const Key key = local_key(c, k);
        const std::int64_t T = vertical ? key_y(key) : key_x(key);
        if ((T - t0) % spacing == 0 || slaves.count(key))
          continue;
        const double t = double(T - t0) / double(len);
        SlaveRule rule;
        rule.masters = master_keys;
        for (int a = 0; a <= p; ++a)
          rule.weights.push_back(basis.value(a, t));
        slaves.emplace(key, std::move(rule));
      }
    }
  }

  // Non-hanging nodes, sorted row-major.
  std::vector<Key> keys;
  keys.reserve(std::size_t(ncell) * std::size_t(nl));
  for (int id = 0; id < ncell; ++id)
    for (int k = 0; k < nl; ++k)
    {
      const Key key = local_key(m.cell(id), k);
      if (!slaves.count(key))
        keys.push_back(key);
    }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::unordered_map<Key, int> dof_of;
  dof_of.reserve(keys.size());
  const Rect &b = m.domain().bounds();
  const double denom = double(lattice_denominator());
  for (std::size_t d = 0; d < keys.size(); ++d)
  {
    dof_of.emplace(keys[d], int(d));
    const std::int64_t X = key_x(keys[d]), Y = key_y(keys[d]);
    lattice_.emplace_back(X, Y);
    points_.push_back({b.x0 + b.width() * double(X) / denom, b.y0 + b.height() * double(Y) / denom});
  }
  sides_.assign(keys.size(), 0u);

  for (const auto &[key, rule] : slaves)
  {
    HangingConstraint h;
    h.location = {b.x0 + b.width() * double(key_x(key)) / denom,
                  b.y0 + b.height() * double(key_y(key)) / denom};
    for (Key mk : rule.masters)
    {
      auto it = dof_of.find(mk);
      if (it == dof_of.end())
        throw std::logic_error("Space: constrained node used as a master");
      h.masters.push_back(it->second);
    }
    h.weights = rule.weights;
    hanging_.push_back(std::move(h));
  }

  cell_offsets_.assign(std::size_t(ncell) + 1, 0);
  constraint_index_.assign(std::size_t(ncell), -1);
  for (int id = 0; id < ncell; ++id)
  {
    const CellKey &c = m.cell(id);
    std::vector<std::vector<std::pair<int, double>>> expansion(static_cast<std::size_t>(nl));
    bool constrained = false;
    for (int k = 0; k < nl; ++k)
    {
      const Key key = local_key(c, k);
      if (auto it = dof_of.find(key); it != dof_of.end())
        expansion[std::size_t(k)].emplace_back(it->second, 1.0);
      else
      {
        constrained = true;
        const SlaveRule &rule = slaves.at(key);
        for (std::size_t a = 0; a < rule.masters.size(); ++a)
          expansion[std::size_t(k)].emplace_back(dof_of.at(rule.masters[a]), rule.weights[a]);
      }
    }
    if (!constrained)
    {
      for (int k = 0; k < nl; ++k)
        cell_dofs_.push_back(expansion[std::size_t(k)][0].first);
    }
    else
    {
      std::vector<int> dofs;
      for (const auto &e : expansion)
        for (const auto &[d, w] : e)
          dofs.push_back(d);
      std::sort(dofs.begin(), dofs.end());
      dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
      Eigen::MatrixXd C = Eigen::MatrixXd::Zero(nl, Eigen::Index(dofs.size()));
      for (int k = 0; k < nl; ++k)
        for (const auto &[d, w] : expansion[std::size_t(k)])
        {
          const auto col = std::lower_bound(dofs.begin(), dofs.end(), d) - dofs.begin();
          C(k, col) += w;
        }
      constraint_index_[std::size_t(id)] = int(constraints_.size());
      constraints_.push_back(std::move(C));
      cell_dofs_.insert(cell_dofs_.end(), dofs.begin(), dofs.end());
    }
    cell_offsets_[std::size_t(id) + 1] = int(cell_dofs_.size());

    for (Side s : kSides)
    {
      if (m.neighbor(c, s).kind != Mesh::Neighbor::Kind::Boundary)
        continue;
      for (int k : side_nodes(p, s))
      {
        auto it = dof_of.find(local_key(c, k));
        if (it == dof_of.end())
          throw std::logic_error("Space: hanging node on the boundary");
        sides_[std::size_t(it->second)] |= static_cast<unsigned>(s);
      }
    }
  }

  support_offsets_.assign(keys.size() + 1, 0);
  for (int id = 0; id < ncell; ++id)
    for (int d : cell_dofs(id))
      ++support_offsets_[std::size_t(d) + 1];
  for (std::size_t d = 0; d < keys.size(); ++d)
    support_offsets_[d + 1] += support_offsets_[d];
  support_cells_.resize(std::size_t(support_offsets_.back()));
  std::vector<int> fill(support_offsets_.begin(), support_offsets_.end() - 1);
  for (int id = 0; id < ncell; ++id)
    for (int d : cell_dofs(id))
      support_cells_[std::size_t(fill[std::size_t(d)]++)] = id;
}

std::span<const int> Space::cell_dofs(int cell) const
{
  const auto b = std::size_t(cell_offsets_[std::size_t(cell)]);
  const auto e = std::size_t(cell_offsets_[std::size_t(cell) + 1]);
  return {cell_dofs_.data() + b, e - b};
}

const Eigen::MatrixXd &Space::cell_constraint(int cell) const
{
  const int idx = constraint_index_[std::size_t(cell)];
  if (idx < 0)
    throw std::logic_error("Space: cell has no constraint matrix");
  return constraints_[std::size_t(idx)];
}

Eigen::VectorXd Space::local_values(int cell, const Eigen::VectorXd &coeffs) const
{
  const auto dofs = cell_dofs(cell);
  Eigen::VectorXd g(Eigen::Index(dofs.size()));
  for (std::size_t k = 0; k < dofs.size(); ++k)
    g(Eigen::Index(k)) = coeffs(dofs[k]);
  if (!cell_constrained(cell))
    return g;
  return cell_constraint(cell) * g;
}

void Space::scatter_add(int cell, const Eigen::VectorXd &local, Eigen::VectorXd &global) const
{
  const auto dofs = cell_dofs(cell);
  if (!cell_constrained(cell))
  {
    for (std::size_t k = 0; k < dofs.size(); ++k)
      global(dofs[k]) += local(Eigen::Index(k));
    return;
  }
  const Eigen::VectorXd g = cell_constraint(cell).transpose() * local;
  for (std::size_t k = 0; k < dofs.size(); ++k)
    global(dofs[k]) += g(Eigen::Index(k));
}

std::span<const int> Space::dof_support(int dof) const
{
  const auto b = std::size_t(support_offsets_[std::size_t(dof)]);
  const auto e = std::size_t(support_offsets_[std::size_t(dof) + 1]);
  return {support_cells_.data() + b, e - b};
}

double Space::evaluate_in_cell(int cell, const Eigen::VectorXd &coeffs, double xi, double eta) const
{
  const LagrangeBasis1D<double> basis(degree_);
  const Eigen::VectorXd vx = basis.values(xi), vy = basis.values(eta);
  const Eigen::VectorXd loc = local_values(cell, coeffs);
  const int np = degree_ + 1;
  double v = 0.0;
  for (int bb = 0; bb < np; ++bb)
    for (int a = 0; a < np; ++a)
      v += loc(a + np * bb) * vx(a) * vy(bb);
  return v;
}

double Space::evaluate(const Eigen::VectorXd &coeffs, Point p) const
{
  const int cell = mesh_->locate(p);
  if (cell < 0)
    throw std::domain_error("Space::evaluate: point outside the domain");
  const Rect r = mesh_->cell_rect(cell);
  return evaluate_in_cell(cell, coeffs, (p.x - r.x0) / r.width(), (p.y - r.y0) / r.height());
}

SpacePtr build_space(std::shared_ptr<const Mesh> mesh, int degree)
{
  return std::make_shared<const Space>(std::move(mesh), degree);
}

DofMask boundary_mask(const Space &space, BoundarySelector selector)
{
  DofMask mask(std::size_t(space.size()), 0);
  for (Eigen::Index d = 0; d < space.size(); ++d)
    mask[std::size_t(d)] = selector.selects(space.boundary_sides(int(d))) ? 1 : 0;
  return mask;
}

DofMask mask_union(const DofMask &a, const DofMask &b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("mask_union: size mismatch");
  DofMask out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    out[k] = (a[k] || b[k]) ? 1 : 0;
  return out;
}

std::vector<int> free_dofs(const DofMask &fixed)
{
  std::vector<int> out;
  for (std::size_t k = 0; k < fixed.size(); ++k)
    if (!fixed[k])
      out.push_back(int(k));
  return out;
}

Eigen::Index count_free(const DofMask &fixed)
{
  return Eigen::Index(std::count(fixed.begin(), fixed.end(), 0));
}

SparseMatrix prolongation(const Space &coarse, const Space &fine)
{
  if (coarse.degree() != fine.degree())
    throw std::invalid_argument("prolongation: spaces must share the polynomial degree");
  if (!fine.mesh().refines(coarse.mesh()))
    throw std::invalid_argument("prolongation: fine mesh does not refine the coarse mesh");
  const Mesh &cm = coarse.mesh();
  const std::int64_t denom = coarse.lattice_denominator();
  const LagrangeBasis1D<double> basis(coarse.degree());
  const int np = coarse.degree() + 1;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(std::size_t(fine.size()) * 4);
  for (Eigen::Index f = 0; f < fine.size(); ++f)
  {
    const std::int64_t X = fine.dof_lattice_x(int(f)), Y = fine.dof_lattice_y(int(f));
    const int cell = cm.locate(X, Y, denom);
    if (cell < 0)
      throw std::logic_error("prolongation: fine node outside the coarse mesh");
    const CellKey &c = cm.cell(cell);
    const std::int64_t size = denom >> c.level;
    const double xi = double(X - c.i * size) / double(size);
    const double eta = double(Y - c.j * size) / double(size);
    const Eigen::VectorXd vx = basis.values(xi), vy = basis.values(eta);
    Eigen::VectorXd N(np * np);
    for (int b = 0; b < np; ++b)
      for (int a = 0; a < np; ++a)
        N(a + np * b) = vx(a) * vy(b);
    const auto dofs = coarse.cell_dofs(cell);
    const Eigen::VectorXd w =
        coarse.cell_constrained(cell) ? Eigen::VectorXd(coarse.cell_constraint(cell).transpose() * N) : N;
    for (std::size_t k = 0; k < dofs.size(); ++k)
      if (w(Eigen::Index(k)) != 0.0)
        trip.emplace_back(int(f), dofs[k], w(Eigen::Index(k)));
  }
  SparseMatrix P(fine.size(), coarse.size());
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

} // namespace wcmo
