// SPDX-License-Identifier: Apache-2.0

#include "wcmo/solver.hpp"

#include <doctest.h>

#include <random>

using namespace wcmo;

namespace
{

SparseMatrix random_spd(int n, std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      B(i, j) = u(rng);
  const Eigen::MatrixXd A = B * B.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
  return A.sparseView();
}

// Shifted 1D Laplacian: SPD and badly conditioned for CG with few iterations.
SparseMatrix laplacian(int n)
{
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i)
  {
    t.emplace_back(i, i, 2.0);
    if (i > 0)
      t.emplace_back(i, i - 1, -1.0);
    if (i + 1 < n)
      t.emplace_back(i, i + 1, -1.0);
  }
  SparseMatrix A(n, n);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

} // namespace

TEST_SUITE("solver")
{
  TEST_CASE("trivial systems")
  {
    SparseMatrix I(3, 3);
    I.setIdentity();
    const Eigen::Vector3d b(1.0, -2.0, 3.0);
    CHECK((solve_sym(I, b) - b).norm() == 0.0);

    SparseMatrix A(2, 2);
    A.insert(0, 0) = 2.0;
    A.insert(0, 1) = 1.0;
    A.insert(1, 0) = 1.0;
    A.insert(1, 1) = 2.0;
    const Eigen::VectorXd x = solve_sym(A, Eigen::Vector2d(3.0, 3.0));
    CHECK(x(0) == doctest::Approx(1.0));
    CHECK(x(1) == doctest::Approx(1.0));
    CHECK(solve_sym(A, Eigen::Vector2d::Zero()).norm() == 0.0);
  }

  TEST_CASE("random SPD systems match a dense factorization")
  {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial)
    {
      const SparseMatrix A = random_spd(50, rng);
      Eigen::VectorXd b(50);
      for (int i = 0; i < 50; ++i)
        b(i) = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
      const Eigen::VectorXd ref = Eigen::MatrixXd(A).llt().solve(b);
      const double scale = ref.cwiseAbs().maxCoeff();
      CHECK((solve_sym(A, b, 1e-12) - ref).cwiseAbs().maxCoeff() <= 1e-8 * scale);

      const DofMask none(50, 0);
      for (SolverKind k : {SolverKind::Direct, SolverKind::CG})
      {
        const RestrictedSolver s(A, none, {1e-12, 0, k});
        CHECK((s.solve(b) - ref).cwiseAbs().maxCoeff() <= 1e-8 * scale);
      }
    }
  }

  TEST_CASE("restricted solves leave fixed entries at zero")
  {
    std::mt19937_64 rng(19);
    const SparseMatrix A = random_spd(12, rng);
    DofMask fixed(12, 0);
    fixed[0] = fixed[5] = fixed[11] = 1;
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(12, -1.0, 1.0);
    const RestrictedSolver s(A, fixed);
    const Eigen::VectorXd x = s.solve(b);
    CHECK(x(0) == 0.0);
    CHECK(x(5) == 0.0);
    CHECK(x(11) == 0.0);
    const std::vector<int> &f = s.free();
    const Eigen::VectorXd r = b - A * x;
    for (int i : f)
      CHECK(std::abs(r(i)) < 1e-10);
    CHECK(s.block().rows() == 9);
    CHECK(submatrix(A, f, f).coeff(0, 0) == A.coeff(1, 1));
  }

  TEST_CASE("non-convergence reports the residual")
  {
    const SparseMatrix A = laplacian(200);
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(200);
    try
    {
      solve_sym(A, b, 1e-12, 3);
      FAIL("expected a solver failure");
    }
    catch (const SolverFailure &e)
    {
      CHECK(e.residual_norm() > 1e-12 * b.norm());
    }
  }

  TEST_CASE("residual contract at the default tolerance")
  {
    const SparseMatrix A = laplacian(400);
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(400, 0.0, 1.0);
    const Eigen::VectorXd x = solve_sym(A, b);
    CHECK((b - A * x).norm() <= 1e-10 * b.norm());
  }
}
