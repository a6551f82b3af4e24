// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_SPACE_HPP
#define WCMO_SPACE_HPP

#include "wcmo/mesh.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <memory>
#include <span>
#include <vector>

namespace wcmo
{

using SparseMatrix = Eigen::SparseMatrix<double>;

// Selection of boundary sides by outward normal. A degree of freedom is
// selected when it lies on the closure of a selected boundary edge.
struct BoundarySelector
{
  unsigned sides = 0;

  static BoundarySelector none() { return {0u}; }
  static BoundarySelector all() { return {15u}; }
  template <typename... S>
  static BoundarySelector of(S... s)
  {
    return {(0u | ... | static_cast<unsigned>(s))};
  }
  BoundarySelector complement() const { return {~sides & 15u}; }
  bool selects(unsigned dof_sides) const { return (dof_sides & sides) != 0; }
};

// Per-dof flag: true where the coefficient is fixed (Dirichlet / zero).
using DofMask = std::vector<char>;

// Hanging node: value is the weighted sum of the master dofs.
struct HangingConstraint
{
  Point location;
  std::vector<int> masters;
  std::vector<double> weights;
};

// Conforming tensor-product Lagrange space of degree p on a quadtree mesh.
// Dofs are the non-hanging nodes, numbered row-major by position; hanging
// nodes are eliminated by affine substitution.
class Space
{
public:
  Space(std::shared_ptr<const Mesh> mesh, int degree);

  const Mesh &mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh> &mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  int local_size() const { return (degree_ + 1) * (degree_ + 1); }
  Eigen::Index size() const { return Eigen::Index(points_.size()); }

  Point dof_point(int dof) const { return points_[std::size_t(dof)]; }
  // Lattice coordinates with denominator lattice_denominator().
  std::int64_t dof_lattice_x(int dof) const { return lattice_[std::size_t(dof)].first; }
  std::int64_t dof_lattice_y(int dof) const { return lattice_[std::size_t(dof)].second; }
  std::int64_t lattice_denominator() const { return std::int64_t(degree_) << kMaxLevel; }
  // Bit mask of Side values of the boundary edges containing the dof.
  unsigned boundary_sides(int dof) const { return sides_[std::size_t(dof)]; }

  // Global dofs touched by a cell. For unconstrained cells these are in local
  // node order; otherwise local values are cell_constraint(cell) * coeffs(dofs).
  std::span<const int> cell_dofs(int cell) const;
  bool cell_constrained(int cell) const { return constraint_index_[std::size_t(cell)] >= 0; }
  const Eigen::MatrixXd &cell_constraint(int cell) const;

  // Gathers the (p+1)^2 local nodal values of a coefficient vector.
  Eigen::VectorXd local_values(int cell, const Eigen::VectorXd &coeffs) const;
  // Scatter-adds a local vector (local node order) into a global vector.
  void scatter_add(int cell, const Eigen::VectorXd &local, Eigen::VectorXd &global) const;

  // Cells on which the basis function of the dof is nonzero.
  std::span<const int> dof_support(int dof) const;

  const std::vector<HangingConstraint> &hanging() const { return hanging_; }

  // Pointwise evaluation; throws std::domain_error outside the domain.
  double evaluate(const Eigen::VectorXd &coeffs, Point p) const;
  double evaluate_in_cell(int cell, const Eigen::VectorXd &coeffs, double xi, double eta) const;

private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  std::vector<Point> points_;
  std::vector<std::pair<std::int64_t, std::int64_t>> lattice_;
  std::vector<unsigned> sides_;
  std::vector<int> cell_offsets_;
  std::vector<int> cell_dofs_;
  std::vector<int> constraint_index_;
  std::vector<Eigen::MatrixXd> constraints_;
  std::vector<int> support_offsets_;
  std::vector<int> support_cells_;
  std::vector<HangingConstraint> hanging_;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr build_space(std::shared_ptr<const Mesh> mesh, int degree);

// Dofs on the closure of the selected boundary sides.
DofMask boundary_mask(const Space &space, BoundarySelector selector);
DofMask mask_union(const DofMask &a, const DofMask &b);
std::vector<int> free_dofs(const DofMask &fixed);
Eigen::Index count_free(const DofMask &fixed);

// Exact injection of coarse-space functions into a nested fine space with the
// same degree: fine coefficients = P * coarse coefficients.
SparseMatrix prolongation(const Space &coarse, const Space &fine);

} // namespace wcmo

#endif // WCMO_SPACE_HPP
