// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_SOLVER_HPP
#define WCMO_SOLVER_HPP

#include "wcmo/space.hpp"

#include <Eigen/SparseCholesky>

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

namespace wcmo
{

class SolverFailure : public std::runtime_error
{
public:
  SolverFailure(const std::string &what, double residual_norm)
    : std::runtime_error(what + " (residual norm " + format(residual_norm) + ")"),
      residual_norm_(residual_norm)
  {
  }
  double residual_norm() const { return residual_norm_; }

private:
  static std::string format(double v)
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }
  double residual_norm_;
};

enum class SolverKind
{
  Direct, // sparse LDL^T with iterative refinement
  CG      // Jacobi-preconditioned conjugate gradients
};

struct SolverOptions
{
  double rel_tol = 1e-10;
  int max_iterations = 0; // 0: 10 n
  SolverKind kind = SolverKind::Direct;
};

// Jacobi-preconditioned CG for an SPD matrix. Guarantees
// ||rhs - A x||_2 <= rel_tol ||rhs||_2 or throws SolverFailure.
Eigen::VectorXd solve_sym(const SparseMatrix &A, const Eigen::VectorXd &rhs, double rel_tol = 1e-10,
                          int max_iterations = 0);

// Extracts A(rows, cols) for sorted index lists.
SparseMatrix submatrix(const SparseMatrix &A, const std::vector<int> &rows, const std::vector<int> &cols);

// Solver for the block A_FF of a symmetric matrix on the free dofs of a mask.
// The factorization (or the extracted block, for CG) is reused across solves.
class RestrictedSolver
{
public:
  RestrictedSolver(const SparseMatrix &A, const DofMask &fixed, SolverOptions options = {});

  const std::vector<int> &free() const { return free_; }
  const SparseMatrix &block() const { return block_; }

  // Solves A_FF x_F = rhs_F; fixed entries of the result are zero.
  Eigen::VectorXd solve(const Eigen::VectorXd &rhs_full) const;

private:
  std::vector<int> free_;
  SparseMatrix block_;
  SolverOptions options_;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>> ldlt_;
};

} // namespace wcmo

#endif // WCMO_SOLVER_HPP
