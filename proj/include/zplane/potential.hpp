#pragma once

#include <complex>
#include <vector>

#include <nlohmann/json.hpp>

namespace zplane {

using cplx = std::complex<double>;

/// One analytic term c * r^p * exp(-b * (r - s)^q), q in {1, 2}.
/// Both exponents are integral so the term is entire in complex r.
struct PotentialTerm {
  double c = 0.0;
  int p = 0;
  double b = 0.0;
  double s = 0.0;
  int q = 1;

  /// Throws ConfigError when q is not 1 or 2, or when b or p is negative.
  void validate() const;
  cplx operator()(cplx r) const;

  friend bool operator==(const PotentialTerm&, const PotentialTerm&) = default;
};

/// Sum of analytic terms; an empty term list is V = 0.
class PotentialModel {
public:
  PotentialModel() = default;
  explicit PotentialModel(std::vector<PotentialTerm> terms);

  const std::vector<PotentialTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  friend bool operator==(const PotentialModel&, const PotentialModel&) = default;

private:
  std::vector<PotentialTerm> terms_;
};

/// V(r) at a complex radius. Non-finite r throws ConfigError.
cplx eval_potential(const PotentialModel& model, cplx r);
double eval_potential(const PotentialModel& model, double r);

/// 7.5 r^2 exp(-r)
PotentialModel exponential_barrier_potential();
/// 5 exp(-(r - 1/2)^2 / 4) - 8 exp(-r^2 / 5)
PotentialModel double_gaussian_potential();

/// Parses `{"terms": [{"c":..,"p":..,"b":..,"s":..,"q":..}, ...]}`.
/// Errors name the offending term index.
PotentialModel parse_potential(const nlohmann::json& j);
nlohmann::json to_json(const PotentialModel& model);

} // namespace zplane
