// SPDX-License-Identifier: Apache-2.0

#include "wcmo/solver.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <algorithm>

namespace wcmo
{

Eigen::VectorXd solve_sym(const SparseMatrix &A, const Eigen::VectorXd &rhs, double rel_tol, int max_iterations)
{
  if (A.rows() != A.cols() || A.rows() != rhs.size())
    throw std::invalid_argument("solve_sym: dimension mismatch");
  const double bnorm = rhs.norm();
  if (bnorm == 0.0)
    return Eigen::VectorXd::Zero(rhs.size());
  const int max_it = max_iterations > 0 ? max_iterations : int(std::max<Eigen::Index>(10 * rhs.size(), 10));

  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
  cg.setTolerance(rel_tol);
  cg.setMaxIterations(max_it);
  cg.compute(A);
  Eigen::VectorXd x = cg.solve(rhs);
  double res = (rhs - A * x).norm();
  // The recursive residual can drift from the true one; restart once.
  if (res > rel_tol * bnorm)
  {
    x = cg.solveWithGuess(rhs, x);
    res = (rhs - A * x).norm();
  }
  if (!(res <= rel_tol * bnorm))
    throw SolverFailure("conjugate gradients did not converge in " + std::to_string(max_it) + " iterations",
                        res);
  return x;
}

SparseMatrix submatrix(const SparseMatrix &A, const std::vector<int> &rows, const std::vector<int> &cols)
{
  std::vector<int> row_map(std::size_t(A.rows()), -1), col_map(std::size_t(A.cols()), -1);
  for (std::size_t k = 0; k < rows.size(); ++k)
    row_map[std::size_t(rows[k])] = int(k);
  for (std::size_t k = 0; k < cols.size(); ++k)
    col_map[std::size_t(cols[k])] = int(k);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(std::size_t(A.nonZeros()));
  for (int j = 0; j < A.outerSize(); ++j)
  {
    const int cj = col_map[std::size_t(j)];
    if (cj < 0)
      continue;
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
      if (const int ri = row_map[std::size_t(it.row())]; ri >= 0)
        trip.emplace_back(ri, cj, it.value());
  }
  SparseMatrix S(Eigen::Index(rows.size()), Eigen::Index(cols.size()));
  S.setFromTriplets(trip.begin(), trip.end());
  return S;
}

RestrictedSolver::RestrictedSolver(const SparseMatrix &A, const DofMask &fixed, SolverOptions options)
  : free_(free_dofs(fixed)), options_(options)
{
  if (Eigen::Index(fixed.size()) != A.rows())
    throw std::invalid_argument("RestrictedSolver: mask size does not match the matrix");
  block_ = submatrix(A, free_, free_);
  if (options_.kind == SolverKind::Direct && !free_.empty())
  {
    ldlt_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>>();
    ldlt_->compute(block_);
    if (ldlt_->info() != Eigen::Success)
      throw SolverFailure("sparse factorization failed", 0.0);
  }
}

Eigen::VectorXd RestrictedSolver::solve(const Eigen::VectorXd &rhs_full) const
{
  Eigen::VectorXd r(Eigen::Index(free_.size()));
  for (std::size_t k = 0; k < free_.size(); ++k)
    r(Eigen::Index(k)) = rhs_full(free_[k]);
  Eigen::VectorXd x;
  if (options_.kind == SolverKind::CG || free_.empty())
    x = free_.empty() ? Eigen::VectorXd() : solve_sym(block_, r, options_.rel_tol, options_.max_iterations);
  else
  {
    const double bnorm = r.norm();
    x = ldlt_->solve(r);
    Eigen::VectorXd res = r - block_ * x;
    for (int it = 0; it < 3 && res.norm() > options_.rel_tol * bnorm; ++it)
    {
      x += ldlt_->solve(res);
      res = r - block_ * x;
    }
    if (!(res.norm() <= options_.rel_tol * bnorm))
      throw SolverFailure("direct solve missed the residual tolerance", res.norm());
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(rhs_full.size());
  for (std::size_t k = 0; k < free_.size(); ++k)
    out(free_[k]) = x(Eigen::Index(k));
  return out;
}

} // namespace wcmo
