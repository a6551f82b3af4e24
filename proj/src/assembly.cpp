// SPDX-License-Identifier: Apache-2.0

#include "wcmo/assembly.hpp"

#include "wcmo/quadrature.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace wcmo
{

int assembly_threads()
{
  if (const char *env = std::getenv("WCMO_THREADS"))
  {
    const int n = std::atoi(env);
    if (n >= 1)
      return std::min(n, 64);
  }
  return 1;
}

namespace detail
{
bool same_mesh(const Space &a, const Space &b)
{
  return a.mesh_ptr() == b.mesh_ptr() || a.mesh() == b.mesh();
}
} // namespace detail

namespace
{

using Triplets = std::vector<Eigen::Triplet<double>>;

// Runs cell_fn(cell, triplets) over contiguous cell chunks, one per thread,
// and concatenates the chunks in ascending cell order.
template <typename CellFn>
SparseMatrix assemble_cells(const Space &space, CellFn cell_fn)
{
  const int ncell = int(space.mesh().size());
  const int nthreads = std::max(1, std::min(assembly_threads(), ncell / 64));
  std::vector<Triplets> parts(static_cast<std::size_t>(nthreads));
  auto work = [&](int t) {
    const int b = int(std::int64_t(ncell) * t / nthreads), e = int(std::int64_t(ncell) * (t + 1) / nthreads);
    for (int c = b; c < e; ++c)
      cell_fn(c, parts[std::size_t(t)]);
  };
  if (nthreads == 1)
    work(0);
  else
  {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back(work, t);
    for (auto &th : pool)
      th.join();
  }
  Triplets all;
  std::size_t total = 0;
  for (const auto &p : parts)
    total += p.size();
  all.reserve(total);
  for (const auto &p : parts)
    all.insert(all.end(), p.begin(), p.end());
  SparseMatrix A(space.size(), space.size());
  A.setFromTriplets(all.begin(), all.end());
  return A;
}

void push_local(const Space &space, int cell, const Eigen::MatrixXd &local, Triplets &out)
{
  const auto dofs = space.cell_dofs(cell);
  if (!space.cell_constrained(cell))
  {
    for (std::size_t b = 0; b < dofs.size(); ++b)
      for (std::size_t a = 0; a < dofs.size(); ++a)
        out.emplace_back(dofs[a], dofs[b], local(Eigen::Index(a), Eigen::Index(b)));
    return;
  }
  const Eigen::MatrixXd &C = space.cell_constraint(cell);
  const Eigen::MatrixXd condensed = C.transpose() * local * C;
  for (std::size_t b = 0; b < dofs.size(); ++b)
    for (std::size_t a = 0; a < dofs.size(); ++a)
      out.emplace_back(dofs[a], dofs[b], condensed(Eigen::Index(a), Eigen::Index(b)));
}

} // namespace

SparseMatrix assemble_stiffness(const Space &space, const Coefficient &eps)
{
  const CellTabulation<double> tab(space.degree(), space.degree() + 2);
  const Rect &bb = space.mesh().domain().bounds();
  // All cells share the aspect ratio of the bounding box.
  const double aspect = bb.width() / bb.height();
  const Eigen::MatrixXd Kx = tab.dxi.transpose() * tab.weights.asDiagonal() * tab.dxi;
  const Eigen::MatrixXd Ky = tab.deta.transpose() * tab.weights.asDiagonal() * tab.deta;
  const Eigen::MatrixXd Kref = Kx / aspect + Ky * aspect;

  return assemble_cells(space, [&](int cell, Triplets &out) {
    if (eps.is_constant())
    {
      push_local(space, cell, eps.constant_value() * Kref, out);
      return;
    }
    const Rect r = space.mesh().cell_rect(cell);
    Eigen::VectorXd w(tab.weights.size());
    for (Eigen::Index q = 0; q < w.size(); ++q)
      w(q) = tab.weights(q) * eps(Point{r.x0 + r.width() * tab.points(q, 0), r.y0 + r.height() * tab.points(q, 1)});
    const Eigen::MatrixXd local = tab.dxi.transpose() * w.asDiagonal() * tab.dxi / aspect +
                                  tab.deta.transpose() * w.asDiagonal() * tab.deta * aspect;
    push_local(space, cell, local, out);
  });
}

SparseMatrix assemble_bilinear(const Space &row, const Space &col, const Coefficient &eps)
{
  if (row.degree() == col.degree() && detail::same_mesh(row, col))
    return assemble_stiffness(row, eps);
  if (col.mesh().refines(row.mesh()) && row.degree() == col.degree())
  {
    const SparseMatrix K = assemble_stiffness(col, eps);
    return SparseMatrix(prolongation(row, col).transpose() * K);
  }
  if (row.mesh().refines(col.mesh()) && row.degree() == col.degree())
  {
    const SparseMatrix K = assemble_stiffness(row, eps);
    return SparseMatrix(K * prolongation(col, row));
  }
  throw std::invalid_argument("assemble_bilinear: spaces are neither equal nor nested");
}

SparseMatrix assemble_mass(const Space &space, const Region &omega)
{
  const CellTabulation<double> tab(space.degree(), space.degree() + 2);
  const Eigen::MatrixXd Mref = tab.values.transpose() * tab.weights.asDiagonal() * tab.values;
  const Mesh &mesh = space.mesh();
  std::vector<char> inside(mesh.size(), 1);
  if (!omega.is_whole())
  {
    const Rect &box = *omega.box;
    for (std::size_t c = 0; c < mesh.size(); ++c)
    {
      const Rect r = mesh.cell_rect(int(c));
      const double tol = 1e-12 * r.width();
      const double overlap = r.intersect(box).area();
      if (box.contains(r, tol))
        inside[c] = 1;
      else if (overlap <= 1e-12 * r.area())
        inside[c] = 0;
      else
        throw std::invalid_argument("assemble_l2: region is not a union of mesh cells");
    }
  }
  return assemble_cells(space, [&](int cell, Triplets &out) {
    if (!inside[std::size_t(cell)])
      return;
    push_local(space, cell, mesh.cell_rect(cell).area() * Mref, out);
  });
}

SparseMatrix assemble_l2(const Space &row, const Space &col, const Region &omega)
{
  if (row.degree() == col.degree() && detail::same_mesh(row, col))
    return assemble_mass(row, omega);
  if (col.mesh().refines(row.mesh()) && row.degree() == col.degree())
    return SparseMatrix(prolongation(row, col).transpose() * assemble_mass(col, omega));
  if (row.mesh().refines(col.mesh()) && row.degree() == col.degree())
    return SparseMatrix(assemble_mass(row, omega) * prolongation(col, row));
  throw std::invalid_argument("assemble_l2: spaces are neither equal nor nested");
}

Eigen::VectorXd assemble_load(const Space &space, const ScalarFunction &f)
{
  const CellTabulation<double> tab(space.degree(), kLoadPointsPerAxis);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.size());
  const Mesh &mesh = space.mesh();
  Eigen::VectorXd fw(tab.weights.size());
  for (int cell = 0; cell < int(mesh.size()); ++cell)
  {
    const Rect r = mesh.cell_rect(cell);
    for (Eigen::Index q = 0; q < fw.size(); ++q)
      fw(q) = tab.weights(q) * f(Point{r.x0 + r.width() * tab.points(q, 0), r.y0 + r.height() * tab.points(q, 1)});
    const Eigen::VectorXd local = r.area() * (tab.values.transpose() * fw);
    space.scatter_add(cell, local, b);
  }
  return b;
}

double integrate_squared_error(const Field &uh, const ScalarFunction &exact, const Region &omega, int extra_points)
{
  const Space &space = *uh.space;
  const int p = space.degree(), np = p + 1;
  const auto rule = gauss_legendre<double>(p + extra_points);
  const LagrangeBasis1D<double> basis(p);
  const Mesh &mesh = space.mesh();
  double sum = 0.0;
  for (int cell = 0; cell < int(mesh.size()); ++cell)
  {
    const Rect r = mesh.cell_rect(cell);
    const Rect clip = omega.is_whole() ? r : r.intersect(*omega.box);
    if (clip.empty())
      continue;
    const Eigen::VectorXd loc = space.local_values(cell, uh.coeffs);
    for (Eigen::Index s = 0; s < rule.points.size(); ++s)
      for (Eigen::Index t = 0; t < rule.points.size(); ++t)
      {
        const double x = clip.x0 + clip.width() * rule.points(t);
        const double y = clip.y0 + clip.height() * rule.points(s);
        const Eigen::VectorXd vx = basis.values((x - r.x0) / r.width());
        const Eigen::VectorXd vy = basis.values((y - r.y0) / r.height());
        double v = 0.0;
        for (int b = 0; b < np; ++b)
          for (int a = 0; a < np; ++a)
            v += loc(a + np * b) * vx(a) * vy(b);
        const double d = v - exact(Point{x, y});
        sum += rule.weights(t) * rule.weights(s) * clip.area() * d * d;
      }
  }
  return sum;
}

} // namespace wcmo
