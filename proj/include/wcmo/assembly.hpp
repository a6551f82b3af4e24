// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_ASSEMBLY_HPP
#define WCMO_ASSEMBLY_HPP

#include "wcmo/coefficient.hpp"
#include "wcmo/field.hpp"
#include "wcmo/space.hpp"

namespace wcmo
{

// Bilinear forms use (p+2)^2 Gauss points per cell. Hanging-node constraints are
// condensed, so all matrices act on the space's dofs.

// Upper bound on assembly threads, read from WCMO_THREADS (default 1).
int assembly_threads();

SparseMatrix assemble_stiffness(const Space &space, const Coefficient &eps);

// Entry (i, j) = a_eps(phi_j, phi_i) with phi_j from `col`, phi_i from `row`.
// The spaces must share a mesh or be nested; throws std::invalid_argument otherwise.
SparseMatrix assemble_bilinear(const Space &row, const Space &col, const Coefficient &eps);

// Entry (i, j) = int_omega phi_j phi_i. The region must be a union of cells;
// throws std::invalid_argument otherwise.
SparseMatrix assemble_mass(const Space &space, const Region &omega = Region::whole());
SparseMatrix assemble_l2(const Space &row, const Space &col, const Region &omega = Region::whole());

// Gauss points per axis for load vectors, enough for nested meshes to agree
// on b(v) to round-off with the smooth case data.
inline constexpr int kLoadPointsPerAxis = 12;

// b_i = int f phi_i.
Eigen::VectorXd assemble_load(const Space &space, const ScalarFunction &f);

// int_{omega} (u_h - u)^2 with (p + extra)^2 Gauss points on every cell
// clipped to omega; omega need not align with the mesh.
double integrate_squared_error(const Field &uh, const ScalarFunction &exact, const Region &omega,
                               int extra_points = 4);

namespace detail
{
bool same_mesh(const Space &a, const Space &b);
} // namespace detail

} // namespace wcmo

#endif // WCMO_ASSEMBLY_HPP
