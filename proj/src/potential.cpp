#include "zplane/potential.hpp"

#include <cmath>
#include <string>

#include "zplane/error.hpp"
#include "zplane/json_util.hpp"

namespace zplane {

namespace {

template <class T>
T int_power(T base, int exponent) {
  T result{1.0};
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

} // namespace

void PotentialTerm::validate() const {
  if (q != 1 && q != 2) throw ConfigError("exponent q must be 1 or 2, got " + std::to_string(q));
  if (p < 0) throw ConfigError("power p must be non-negative, got " + std::to_string(p));
  if (!(b >= 0.0)) throw ConfigError("decay rate b must be non-negative");
  if (!std::isfinite(c) || !std::isfinite(b) || !std::isfinite(s))
    throw ConfigError("term coefficients must be finite");
}

cplx PotentialTerm::operator()(cplx r) const {
  const cplx shifted = r - s;
  return c * int_power(r, p) * std::exp(-b * int_power(shifted, q));
}

PotentialModel::PotentialModel(std::vector<PotentialTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) t.validate();
}

cplx eval_potential(const PotentialModel& model, cplx r) {
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw ConfigError("potential evaluated at non-finite radius");
  cplx sum{0.0, 0.0};
  for (const auto& t : model.terms()) sum += t(r);
  return sum;
}

double eval_potential(const PotentialModel& model, double r) {
  if (!std::isfinite(r)) throw ConfigError("potential evaluated at non-finite radius");
  double sum = 0.0;
  for (const auto& t : model.terms())
    sum += t.c * int_power(r, t.p) * std::exp(-t.b * int_power(r - t.s, t.q));
  return sum;
}

PotentialModel exponential_barrier_potential() {
  return PotentialModel({{.c = 7.5, .p = 2, .b = 1.0, .s = 0.0, .q = 1}});
}

PotentialModel double_gaussian_potential() {
  return PotentialModel({{.c = 5.0, .p = 0, .b = 0.25, .s = 0.5, .q = 2},
                         {.c = -8.0, .p = 0, .b = 0.2, .s = 0.0, .q = 2}});
}

PotentialModel parse_potential(const nlohmann::json& j) {
  json_util::require_object(j, "potential");
  json_util::reject_unknown(j, "potential", {"terms"});
  std::vector<PotentialTerm> terms;
  if (!j.contains("terms")) return PotentialModel{};
  const auto& arr = j.at("terms");
  if (!arr.is_array()) throw ConfigError("potential.terms must be an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "potential.terms[" + std::to_string(i) + "]";
    const auto& t = arr[i];
    try {
      json_util::require_object(t, where);
      json_util::reject_unknown(t, where, {"c", "p", "b", "s", "q"});
      PotentialTerm term;
      term.c = json_util::get_number(t, "c", where);
      term.p = json_util::get_int(t, "p", where, 0);
      term.b = json_util::get_number(t, "b", where, 0.0);
      term.s = json_util::get_number(t, "s", where, 0.0);
      term.q = json_util::get_int(t, "q", where, 1);
      term.validate();
      terms.push_back(term);
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      if (msg.rfind(where, 0) == 0) throw;
      throw ConfigError(where + ": " + msg);
    }
  }
  return PotentialModel(std::move(terms));
}

nlohmann::json to_json(const PotentialModel& model) {
  auto terms = nlohmann::json::array();
  for (const auto& t : model.terms())
    terms.push_back({{"c", t.c}, {"p", t.p}, {"b", t.b}, {"s", t.s}, {"q", t.q}});
  return {{"terms", terms}};
}

} // namespace zplane
