#include "zplane/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "zplane/error.hpp"

namespace zplane {

Eigen::MatrixXcd ComplexTridiagonal::dense() const {
  const auto n = size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  out.diagonal() = diag;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    out(k, k + 1) = off(k);
    out(k + 1, k) = off(k);
  }
  return out;
}

Eigen::VectorXcd ComplexTridiagonal::operator*(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y = diag.cwiseProduct(x);
  for (Eigen::Index k = 0; k + 1 < size(); ++k) {
    y(k) += off(k) * x(k + 1);
    y(k + 1) += off(k) * x(k);
  }
  return y;
}

ComplexTridiagonal reference_matrix(int size, double nu, cplx scale, cplx energy) {
  if (size < 1) throw ConfigError("matrix order must be at least 1");
  const cplx ratio = energy / (scale * scale);
  const cplx diag_factor = scale * (ratio - 0.125);
  const cplx off_factor = -scale * (ratio + 0.125);
  ComplexTridiagonal h;
  h.diag.resize(size);
  h.off.resize(size - 1);
  for (int k = 0; k < size; ++k) h.diag(k) = diag_factor * (2.0 * k + nu + 1.0);
  for (int k = 0; k + 1 < size; ++k) h.off(k) = off_factor * std::sqrt((k + 1.0) * (k + nu + 1.0));
  return h;
}

ComplexTridiagonal reference_matrix(const ChannelConfig& cfg, cplx energy) {
  cfg.validate();
  return reference_matrix(cfg.n, cfg.nu(), cfg.rotated_scale(), energy);
}

Eigen::MatrixXcd potential_matrix(int size, cplx scale, const PotentialModel& model,
                                  const QuadratureRule& rule) {
  if (rule.size() < size)
    throw ConfigError("quadrature size " + std::to_string(rule.size()) +
                      " is smaller than basis size " + std::to_string(size));
  if (model.empty()) return Eigen::MatrixXcd::Zero(size, size);

  // weight_k = mu_k V(mu_k / scale), then V_nm = -(1/scale) sum_k L_nk L_mk weight_k
  const Eigen::Index m = rule.size();
  Eigen::VectorXcd weight(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double mu = rule.nodes(k);
    weight(k) = mu * eval_potential(model, mu / scale);
  }
  const Eigen::MatrixXd rows = rule.vectors.topRows(size);
  const Eigen::MatrixXcd scaled = rows.cast<cplx>() * weight.asDiagonal();
  Eigen::MatrixXcd v = -(scaled * rows.transpose().cast<cplx>()) / scale;
  // The product is symmetric up to rounding; make it exactly so.
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = i + 1; j < size; ++j) v(j, i) = v(i, j);
  return v;
}

Eigen::MatrixXcd potential_matrix(const ChannelConfig& cfg, const PotentialModel& model,
                                  const QuadratureRule& rule) {
  cfg.validate();
  if (rule.nu != cfg.nu())
    throw ConfigError("quadrature rule index nu does not match channel (2l + 1)");
  return potential_matrix(cfg.n, cfg.rotated_scale(), model, rule);
}

ComplexTridiagonal energy_derivative_matrix(int size, double nu, cplx scale) {
  const RealTridiagonal j = build_j_matrix(size, nu);
  ComplexTridiagonal d;
  d.diag = j.diag.cast<cplx>() / scale;
  d.off = j.off.cast<cplx>() / scale;
  return d;
}

ComplexTridiagonal energy_derivative_matrix(const ChannelConfig& cfg) {
  cfg.validate();
  return energy_derivative_matrix(cfg.n, cfg.nu(), cfg.rotated_scale());
}

Eigen::MatrixXcd full_matrix(const ChannelConfig& cfg, const PotentialModel& model,
                             const QuadratureRule& rule, cplx energy) {
  return ChargeOperator(cfg, model, rule).at(energy);
}

ChargeOperator::ChargeOperator(const ChannelConfig& cfg, const PotentialModel& model)
    : ChargeOperator(cfg, model, gauss_rule(cfg.quadrature_size(), cfg.nu())) {}

ChargeOperator::ChargeOperator(const ChannelConfig& cfg, const PotentialModel& model,
                               const QuadratureRule& rule)
    : cfg_(cfg),
      potential_(potential_matrix(cfg, model, rule)),
      derivative_(energy_derivative_matrix(cfg)) {}

Eigen::MatrixXcd ChargeOperator::at(cplx energy) const {
  Eigen::MatrixXcd h = potential_;
  const ComplexTridiagonal t = reference_matrix(cfg_.n, cfg_.nu(), cfg_.rotated_scale(), energy);
  h.diagonal() += t.diag;
  for (Eigen::Index k = 0; k + 1 < t.size(); ++k) {
    h(k, k + 1) += t.off(k);
    h(k + 1, k) += t.off(k);
  }
  return h;
}

} // namespace zplane
