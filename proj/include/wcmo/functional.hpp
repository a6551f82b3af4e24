// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_FUNCTIONAL_HPP
#define WCMO_FUNCTIONAL_HPP

#include "wcmo/galerkin.hpp"

namespace wcmo
{

// Linear functional represented by its action on the basis of one space:
// j(v) = representation . v for v in that space. Fields from coarser nested
// spaces are injected before evaluation.
class LinearFunctional
{
public:
  enum class Kind
  {
    VolumeLoad,     // v -> int f v
    L2PairOnRegion, // v -> (w, chi_omega v)
    ResidualOf,     // v -> b(v) - a_eps(u, v)
    FormPairing,    // v -> a_eps(v, theta)
    Vector
  };

  static LinearFunctional volume_load(const SpacePtr &space, const ScalarFunction &f);
  static LinearFunctional l2_pair(const Field &weight, const Region &omega);
  static LinearFunctional residual_of(const Field &u, const Discretization &disc);
  static LinearFunctional form_pairing(const Field &theta, const Coefficient &eps);
  static LinearFunctional from_vector(SpacePtr space, Eigen::VectorXd representation);

  Kind kind() const { return kind_; }
  const SpacePtr &space() const { return space_; }
  const Eigen::VectorXd &representation() const { return rep_; }

  double operator()(const Field &v) const;
  LinearFunctional scaled(double s) const;
  // Representation on a coarser nested space (same functional, fewer test functions).
  LinearFunctional restricted_to(const SpacePtr &coarse) const;

private:
  LinearFunctional(Kind k, SpacePtr s, Eigen::VectorXd r) : kind_(k), space_(std::move(s)), rep_(std::move(r)) {}
  Kind kind_;
  SpacePtr space_;
  Eigen::VectorXd rep_;
};

} // namespace wcmo

#endif // WCMO_FUNCTIONAL_HPP
