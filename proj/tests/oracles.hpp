// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations for the test suites. Nothing here calls
// into the library's assembly, refinement or marking code.

#ifndef WCMO_TESTS_ORACLES_HPP
#define WCMO_TESTS_ORACLES_HPP

#include "wcmo/mesh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle
{

// Leaves of a quadtree as plain rectangles; closure by pairwise comparison.
struct Leaf
{
  int level;
  std::int64_t i, j;
};

inline bool edge_adjacent(const wcmo::Rect &a, const wcmo::Rect &b)
{
  const double ox = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double oy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  const bool touch_x = a.x1 == b.x0 || b.x1 == a.x0;
  const bool touch_y = a.y1 == b.y0 || b.y1 == a.y0;
  return (touch_x && oy > 0.0) || (touch_y && ox > 0.0);
}

inline std::vector<Leaf> split(const std::vector<Leaf> &leaves, std::size_t k)
{
  std::vector<Leaf> out;
  for (std::size_t n = 0; n < leaves.size(); ++n)
  {
    if (n != k)
    {
      out.push_back(leaves[n]);
      continue;
    }
    const Leaf &c = leaves[n];
    for (int cy = 0; cy < 2; ++cy)
      for (int cx = 0; cx < 2; ++cx)
        out.push_back({c.level + 1, 2 * c.i + cx, 2 * c.j + cy});
  }
  return out;
}

// Splits the coarser cell of any edge-adjacent pair whose levels differ by
// more than one, until no such pair remains.
inline std::vector<Leaf> close_one_irregular(std::vector<Leaf> leaves, const wcmo::Domain &domain)
{
  for (bool changed = true; changed;)
  {
    changed = false;
    for (std::size_t a = 0; a < leaves.size() && !changed; ++a)
      for (std::size_t b = 0; b < leaves.size() && !changed; ++b)
      {
        if (leaves[a].level + 1 >= leaves[b].level)
          continue;
        const auto ra = domain.cell_rect({leaves[a].level, leaves[a].i, leaves[a].j});
        const auto rb = domain.cell_rect({leaves[b].level, leaves[b].i, leaves[b].j});
        if (edge_adjacent(ra, rb))
        {
          leaves = split(leaves, a);
          changed = true;
        }
      }
  }
  return leaves;
}

inline bool one_irregular(const std::vector<Leaf> &leaves, const wcmo::Domain &domain)
{
  for (const auto &a : leaves)
    for (const auto &b : leaves)
      if (std::abs(a.level - b.level) > 1 &&
          edge_adjacent(domain.cell_rect({a.level, a.i, a.j}), domain.cell_rect({b.level, b.i, b.j})))
        return false;
  return true;
}

inline std::vector<wcmo::CellKey> keys(const std::vector<Leaf> &leaves)
{
  std::vector<wcmo::CellKey> out;
  for (const auto &l : leaves)
    out.push_back({l.level, l.i, l.j});
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Leaf> leaves_of(const wcmo::Mesh &mesh)
{
  std::vector<Leaf> out;
  for (const auto &c : mesh.cells())
    out.push_back({c.level, c.i, c.j});
  return out;
}

// Q1 stiffness and mass on an n x n grid over a square of side `length`
// with composite Simpson quadrature, which is exact for the integrands.
// Nodes are indexed ix + (n + 1) iy.
struct Q1Matrices
{
  Eigen::MatrixXd stiffness, mass;
};

inline Q1Matrices q1_simpson(int n, double length)
{
  const int nn = (n + 1) * (n + 1);
  Q1Matrices m{Eigen::MatrixXd::Zero(nn, nn), Eigen::MatrixXd::Zero(nn, nn)};
  const double h = length / n;
  const double t[3] = {0.0, 0.5, 1.0};
  const double w[3] = {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0};
  auto hat = [](int a, double s) { return a == 0 ? 1.0 - s : s; };
  auto dhat = [](int a) { return a == 0 ? -1.0 : 1.0; };
  for (int cy = 0; cy < n; ++cy)
    for (int cx = 0; cx < n; ++cx)
      for (int qy = 0; qy < 3; ++qy)
        for (int qx = 0; qx < 3; ++qx)
        {
          const double wq = w[qx] * w[qy] * h * h;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
            {
              const int ax = a % 2, ay = a / 2, bx = b % 2, by = b / 2;
              const int ia = (cx + ax) + (n + 1) * (cy + ay);
              const int ib = (cx + bx) + (n + 1) * (cy + by);
              const double va = hat(ax, t[qx]) * hat(ay, t[qy]);
              const double vb = hat(bx, t[qx]) * hat(by, t[qy]);
              const double gax = dhat(ax) / h * hat(ay, t[qy]), gay = hat(ax, t[qx]) * dhat(ay) / h;
              const double gbx = dhat(bx) / h * hat(by, t[qy]), gby = hat(bx, t[qx]) * dhat(by) / h;
              m.mass(ia, ib) += wq * va * vb;
              m.stiffness(ia, ib) += wq * (gax * gbx + gay * gby);
            }
        }
  return m;
}

// Smallest number of entries whose sum reaches (1 - zeta) * total, by
// exhaustive subset enumeration; -1 if none does. Limited to 20 entries.
inline int min_dorfler_cardinality(const std::vector<double> &eta, double zeta)
{
  const int n = int(eta.size());
  double total = 0.0;
  for (double e : eta)
    total += e;
  const double threshold = (1.0 - zeta) * total;
  int best = -1;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
  {
    const int card = __builtin_popcount(s);
    if (best >= 0 && card >= best)
      continue;
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
      if (s & (1u << k))
        sum += eta[std::size_t(k)];
    if (sum >= threshold)
      best = card;
  }
  return best;
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y)
{
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k)
  {
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k)
  {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

} // namespace oracle

#endif // WCMO_TESTS_ORACLES_HPP
