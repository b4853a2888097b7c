#pragma once

#include <complex>

#include <Eigen/Dense>

namespace zplane {

using cplx = std::complex<double>;

/// One basis/rotation setting. The Laguerre index is tied to the angular
/// momentum, nu = 2l + 1, which makes the kinetic part tridiagonal.
struct ChannelConfig {
  int l = 0;
  int n = 200;          // basis size
  double lambda = 20.0; // length scale, 1/length
  double theta = 0.7;   // rotation angle, radians
  int m = 0;            // quadrature size; 0 means "same as n"

  double nu() const { return 2.0 * l + 1.0; }
  int quadrature_size() const { return m > 0 ? m : n; }
  /// lambda * exp(-i theta): the rotated scale used by every assembly.
  cplx rotated_scale() const { return std::polar(lambda, -theta); }

  /// Throws ConfigError on l < 0, n < 1, lambda <= 0, theta outside [0, pi/2),
  /// or an explicit m < n.
  void validate() const;

  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

/// Symmetric tridiagonal real matrix, off(k) holds entries (k, k+1) and (k+1, k).
struct RealTridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  Eigen::Index size() const { return diag.size(); }
  Eigen::MatrixXd dense() const;
};

/// The coordinate operator x in the orthonormal Laguerre basis of index nu:
/// diagonal 2n + nu + 1, off-diagonal -sqrt((n+1)(n+nu+1)).
RealTridiagonal build_j_matrix(int size, double nu);

/// Gauss rule from the spectral decomposition of the J matrix.
/// nodes are ascending; column k of `vectors` is the unit eigenvector for
/// nodes(k), with its first nonzero component positive.
struct QuadratureRule {
  double nu = 1.0;
  Eigen::VectorXd nodes;
  Eigen::MatrixXd vectors;

  Eigen::Index size() const { return nodes.size(); }
};

QuadratureRule gauss_rule(int size, double nu);

} // namespace zplane
