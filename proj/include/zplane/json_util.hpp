#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "zplane/error.hpp"

// Strict accessors for config parsing. Every failure is a ConfigError that
// names the section and key.
namespace zplane::json_util {

void require_object(const nlohmann::json& j, std::string_view where);
void reject_unknown(const nlohmann::json& j, std::string_view where,
                    std::initializer_list<std::string_view> allowed);

double get_number(const nlohmann::json& j, std::string_view key, std::string_view where);
double get_number(const nlohmann::json& j, std::string_view key, std::string_view where,
                  double fallback);
int get_int(const nlohmann::json& j, std::string_view key, std::string_view where);
int get_int(const nlohmann::json& j, std::string_view key, std::string_view where, int fallback);
std::vector<double> get_numbers(const nlohmann::json& j, std::string_view key,
                                std::string_view where);
std::vector<int> get_ints(const nlohmann::json& j, std::string_view key, std::string_view where);
std::string get_string(const nlohmann::json& j, std::string_view key, std::string_view where);

} // namespace zplane::json_util
