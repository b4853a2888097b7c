#include "zplane/json_util.hpp"

#include <algorithm>
#include <cmath>

namespace zplane::json_util {

namespace {

std::string path(std::string_view where, std::string_view key) {
  return std::string(where) + "." + std::string(key);
}

const nlohmann::json& at(const nlohmann::json& j, std::string_view key, std::string_view where) {
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ConfigError("missing required key " + path(where, key));
  return *it;
}

double as_number(const nlohmann::json& v, const std::string& name) {
  if (!v.is_number()) throw ConfigError(name + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(name + " must be finite");
  return x;
}

int as_int(const nlohmann::json& v, const std::string& name) {
  if (!v.is_number_integer()) throw ConfigError(name + " must be an integer");
  return v.get<int>();
}

} // namespace

void require_object(const nlohmann::json& j, std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
}

void reject_unknown(const nlohmann::json& j, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key " + path(where, key));
  }
}

double get_number(const nlohmann::json& j, std::string_view key, std::string_view where) {
  return as_number(at(j, key, where), path(where, key));
}

double get_number(const nlohmann::json& j, std::string_view key, std::string_view where,
                  double fallback) {
  if (!j.contains(std::string(key))) return fallback;
  return get_number(j, key, where);
}

int get_int(const nlohmann::json& j, std::string_view key, std::string_view where) {
  return as_int(at(j, key, where), path(where, key));
}

int get_int(const nlohmann::json& j, std::string_view key, std::string_view where, int fallback) {
  if (!j.contains(std::string(key))) return fallback;
  return get_int(j, key, where);
}

std::vector<double> get_numbers(const nlohmann::json& j, std::string_view key,
                                std::string_view where) {
  const auto& v = at(j, key, where);
  const auto name = path(where, key);
  if (!v.is_array()) throw ConfigError(name + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_number(v[i], name + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> get_ints(const nlohmann::json& j, std::string_view key, std::string_view where) {
  const auto& v = at(j, key, where);
  const auto name = path(where, key);
  if (!v.is_array()) throw ConfigError(name + " must be an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_int(v[i], name + "[" + std::to_string(i) + "]"));
  return out;
}

std::string get_string(const nlohmann::json& j, std::string_view key, std::string_view where) {
  const auto& v = at(j, key, where);
  if (!v.is_string()) throw ConfigError(path(where, key) + " must be a string");
  return v.get<std::string>();
}

} // namespace zplane::json_util
