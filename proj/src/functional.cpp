// SPDX-License-Identifier: Apache-2.0

#include "wcmo/functional.hpp"

namespace wcmo
{

LinearFunctional LinearFunctional::volume_load(const SpacePtr &space, const ScalarFunction &f)
{
  return {Kind::VolumeLoad, space, assemble_load(*space, f)};
}

LinearFunctional LinearFunctional::l2_pair(const Field &weight, const Region &omega)
{
  if (omega.is_empty())
    return {Kind::L2PairOnRegion, weight.space, Eigen::VectorXd::Zero(weight.space->size())};
  const SparseMatrix M = assemble_mass(*weight.space, omega);
  return {Kind::L2PairOnRegion, weight.space, M * weight.coeffs};
}

LinearFunctional LinearFunctional::residual_of(const Field &u, const Discretization &disc)
{
  const Field uu = inject(u, disc.space);
  return {Kind::ResidualOf, disc.space, disc.load - disc.stiffness * uu.coeffs};
}

LinearFunctional LinearFunctional::form_pairing(const Field &theta, const Coefficient &eps)
{
  const SparseMatrix K = assemble_stiffness(*theta.space, eps);
  return {Kind::FormPairing, theta.space, K * theta.coeffs};
}

LinearFunctional LinearFunctional::from_vector(SpacePtr space, Eigen::VectorXd representation)
{
  if (representation.size() != space->size())
    throw std::invalid_argument("LinearFunctional: representation size does not match the space");
  return {Kind::Vector, std::move(space), std::move(representation)};
}

double LinearFunctional::operator()(const Field &v) const
{
  return rep_.dot(inject(v, space_).coeffs);
}

LinearFunctional LinearFunctional::scaled(double s) const { return {kind_, space_, s * rep_}; }

LinearFunctional LinearFunctional::restricted_to(const SpacePtr &coarse) const
{
  if (coarse == space_)
    return *this;
  return {kind_, coarse, prolongation(*coarse, *space_).transpose() * rep_};
}

} // namespace wcmo
