// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_QUADRATURE_HPP
#define WCMO_QUADRATURE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wcmo
{

// Gauss-Legendre rule with n points on [0, 1].
template <typename Scalar = double>
struct GaussRule
{
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> points;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

template <typename Scalar = double>
GaussRule<Scalar> gauss_legendre(int n)
{
  if (n < 1)
    throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule<Scalar> rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int k = 0; k < (n + 1) / 2; ++k)
  {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    Scalar x = std::cos(pi * (Scalar(k) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int it = 0; it < 100; ++it)
    {
      Scalar p0 = 1, p1 = x;
      for (int m = 2; m <= n; ++m)
      {
        const Scalar p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
      {
        p1 = x;
        p0 = 1;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 8 * std::numeric_limits<Scalar>::epsilon())
        break;
    }
    {
      Scalar p0 = 1, p1 = x;
      for (int m = 2; m <= n; ++m)
      {
        const Scalar p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n == 1 ? Scalar(1) : n * (x * p1 - p0) / (x * x - 1);
    }
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1]; store in ascending order.
    rule.points(k) = (1 - x) / 2;
    rule.points(n - 1 - k) = (1 + x) / 2;
    rule.weights(k) = w / 2;
    rule.weights(n - 1 - k) = w / 2;
  }
  return rule;
}

// Equispaced Lagrange basis of degree p on [0, 1], nodes t_a = a / p.
template <typename Scalar = double>
class LagrangeBasis1D
{
public:
  explicit LagrangeBasis1D(int degree) : degree_(degree)
  {
    if (degree < 1)
      throw std::invalid_argument("LagrangeBasis1D: degree must be >= 1");
  }

  int degree() const { return degree_; }
  Scalar node(int a) const { return Scalar(a) / Scalar(degree_); }

  Scalar value(int a, Scalar t) const
  {
    Scalar v = 1;
    for (int b = 0; b <= degree_; ++b)
      if (b != a)
        v *= (t - node(b)) / (node(a) - node(b));
    return v;
  }

  Scalar derivative(int a, Scalar t) const
  {
    Scalar sum = 0;
    for (int c = 0; c <= degree_; ++c)
    {
      if (c == a)
        continue;
      Scalar term = 1 / (node(a) - node(c));
      for (int b = 0; b <= degree_; ++b)
        if (b != a && b != c)
          term *= (t - node(b)) / (node(a) - node(b));
      sum += term;
    }
    return sum;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values(Scalar t) const
  {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(degree_ + 1);
    for (int a = 0; a <= degree_; ++a)
      v(a) = value(a, t);
    return v;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> derivatives(Scalar t) const
  {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(degree_ + 1);
    for (int a = 0; a <= degree_; ++a)
      v(a) = derivative(a, t);
    return v;
  }

private:
  int degree_;
};

// Tensor-product basis values and reference derivatives at the tensor Gauss
// points of the unit square. Local node (a, b) has index a + (p+1) b; the
// quadrature point (r, s) has index r + n s.
template <typename Scalar = double>
struct CellTabulation
{
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix values; // (quad points) x (local nodes)
  Matrix dxi;
  Matrix deta;
  Vector weights;
  Matrix points; // (quad points) x 2, reference coordinates

  CellTabulation(int degree, int points_per_axis)
  {
    const LagrangeBasis1D<Scalar> basis(degree);
    const auto rule = gauss_legendre<Scalar>(points_per_axis);
    const int n = points_per_axis, m = degree + 1;
    values.resize(n * n, m * m);
    dxi.resize(n * n, m * m);
    deta.resize(n * n, m * m);
    weights.resize(n * n);
    points.resize(n * n, 2);
    for (int s = 0; s < n; ++s)
      for (int r = 0; r < n; ++r)
      {
        const int q = r + n * s;
        const Vector vx = basis.values(rule.points(r)), vy = basis.values(rule.points(s));
        const Vector dx = basis.derivatives(rule.points(r)), dy = basis.derivatives(rule.points(s));
        weights(q) = rule.weights(r) * rule.weights(s);
        points(q, 0) = rule.points(r);
        points(q, 1) = rule.points(s);
        for (int b = 0; b < m; ++b)
          for (int a = 0; a < m; ++a)
          {
            const int k = a + m * b;
            values(q, k) = vx(a) * vy(b);
            dxi(q, k) = dx(a) * vy(b);
            deta(q, k) = vx(a) * dy(b);
          }
      }
  }
};

} // namespace wcmo

#endif // WCMO_QUADRATURE_HPP
