#include "zplane/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "zplane/error.hpp"

namespace zplane {

void ChannelConfig::validate() const {
  if (l < 0) throw ConfigError("channel.l must be non-negative");
  if (n < 1) throw ConfigError("channel.n must be at least 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ConfigError("channel.lambda must be positive and finite");
  if (!(theta >= 0.0 && theta < std::numbers::pi / 2))
    throw ConfigError("channel.theta must lie in [0, pi/2)");
  if (m != 0 && m < n)
    throw ConfigError("channel.m (" + std::to_string(m) + ") must be >= channel.n (" +
                      std::to_string(n) + ")");
  if (m < 0) throw ConfigError("channel.m must be non-negative");
}

Eigen::MatrixXd RealTridiagonal::dense() const {
  const auto n = size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  out.diagonal() = diag;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    out(k, k + 1) = off(k);
    out(k + 1, k) = off(k);
  }
  return out;
}

RealTridiagonal build_j_matrix(int size, double nu) {
  if (size < 1) throw ConfigError("J matrix size must be at least 1");
  if (!(nu > -1.0)) throw ConfigError("Laguerre index nu must exceed -1");
  RealTridiagonal j;
  j.diag.resize(size);
  j.off.resize(size - 1);
  for (int k = 0; k < size; ++k) j.diag(k) = 2.0 * k + nu + 1.0;
  for (int k = 0; k + 1 < size; ++k) j.off(k) = -std::sqrt((k + 1.0) * (k + nu + 1.0));
  return j;
}

QuadratureRule gauss_rule(int size, double nu) {
  const RealTridiagonal j = build_j_matrix(size, nu);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(j.diag, j.off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw SolverError("tridiagonal eigensolver failed for J matrix of order " +
                      std::to_string(size));

  QuadratureRule rule;
  rule.nu = nu;
  rule.nodes = solver.eigenvalues();
  rule.vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < rule.vectors.cols(); ++k) {
    auto col = rule.vectors.col(k);
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (col(r) != 0.0) {
        if (col(r) < 0.0) col = -col;
        break;
      }
    }
  }
  return rule;
}

} // namespace zplane
