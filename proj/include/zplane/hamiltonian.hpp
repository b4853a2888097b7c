#pragma once

#include <complex>

#include <Eigen/Dense>

#include "zplane/potential.hpp"
#include "zplane/quadrature.hpp"

namespace zplane {

/// Complex symmetric tridiagonal matrix; off(k) is both (k, k+1) and (k+1, k).
struct ComplexTridiagonal {
  Eigen::VectorXcd diag;
  Eigen::VectorXcd off;

  Eigen::Index size() const { return diag.size(); }
  Eigen::MatrixXcd dense() const;
  Eigen::VectorXcd operator*(const Eigen::VectorXcd& x) const;
};

/// Kinetic + energy part of the charge operator at rotated scale `scale`.
/// Entries: diag scale*(E/scale^2 - 1/8)(2n+nu+1),
///          off  -scale*(E/scale^2 + 1/8) sqrt((n+1)(n+nu+1)).
ComplexTridiagonal reference_matrix(int size, double nu, cplx scale, cplx energy);
ComplexTridiagonal reference_matrix(const ChannelConfig& cfg, cplx energy);

/// Potential part -r V(r) through the Gauss rule, evaluated on the rotated
/// ray r_k = nodes(k) / scale. Uses the first `size` rows of the rule.
Eigen::MatrixXcd potential_matrix(int size, cplx scale, const PotentialModel& model,
                                  const QuadratureRule& rule);
Eigen::MatrixXcd potential_matrix(const ChannelConfig& cfg, const PotentialModel& model,
                                  const QuadratureRule& rule);

/// d/dE of the full matrix: J / scale. Independent of E.
ComplexTridiagonal energy_derivative_matrix(int size, double nu, cplx scale);
ComplexTridiagonal energy_derivative_matrix(const ChannelConfig& cfg);

Eigen::MatrixXcd full_matrix(const ChannelConfig& cfg, const PotentialModel& model,
                             const QuadratureRule& rule, cplx energy);

/// The charge operator for one channel with its E-independent pieces cached.
/// Immutable after construction; at() is safe to call concurrently.
class ChargeOperator {
public:
  ChargeOperator(const ChannelConfig& cfg, const PotentialModel& model);
  ChargeOperator(const ChannelConfig& cfg, const PotentialModel& model, const QuadratureRule& rule);

  Eigen::MatrixXcd at(cplx energy) const;
  const ComplexTridiagonal& energy_derivative() const { return derivative_; }
  const Eigen::MatrixXcd& potential() const { return potential_; }
  const ChannelConfig& channel() const { return cfg_; }

private:
  ChannelConfig cfg_;
  Eigen::MatrixXcd potential_;
  ComplexTridiagonal derivative_;
};

} // namespace zplane
