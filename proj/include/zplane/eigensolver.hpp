#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "zplane/hamiltonian.hpp"

namespace zplane {

/// Full spectrum of a dense complex matrix. values are sorted by
/// (Re ascending, Im ascending); column n of `vectors` pairs with values[n],
/// has unit 2-norm, and its largest-magnitude component is real positive.
struct EigenSet {
  std::vector<cplx> values;
  Eigen::MatrixXcd vectors;
  std::vector<double> residual_norms; // ||M x_n - Z_n x_n||_2
};

/// Ordering used for every eigenvalue listing.
bool charge_less(cplx a, cplx b);

EigenSet eigen_decompose(const Eigen::MatrixXcd& matrix);

/// Eigenvalues only, sorted with charge_less. Cheaper than eigen_decompose.
std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& matrix);

/// Right eigenvector for an eigenvalue already known to good accuracy, by
/// inverse iteration. Unit norm, same phase convention as eigen_decompose.
Eigen::VectorXcd eigenvector_near(const Eigen::MatrixXcd& matrix, cplx eigenvalue);

/// dZ/dE = (x^T M' x) / (x^T x), unconjugated, for a complex symmetric family.
/// Throws DerivativeError when |x^T x| < 1e-8 ||x||^2.
cplx eigenvalue_derivative(const Eigen::MatrixXcd& derivative, const Eigen::VectorXcd& x);
cplx eigenvalue_derivative(const ComplexTridiagonal& derivative, const Eigen::VectorXcd& x);

} // namespace zplane
