#include "zplane/reference.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "zplane/error.hpp"
#include "zplane/json_util.hpp"

namespace zplane {

namespace ju = json_util;

namespace {

double parse_decimal(const std::string& text, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v))
    throw ConfigError(where + ": '" + text + "' is not a decimal number");
  return v;
}

} // namespace

cplx ReferenceRow::energy() const {
  const double re = parse_decimal(position, citation);
  if (imag) return {re, parse_decimal(*imag, citation)};
  if (width) return {re, -0.5 * parse_decimal(*width, citation)};
  throw ConfigError(citation + ": row has neither width nor imaginary part");
}

double last_digit_unit(const std::string& printed) {
  std::string mantissa = printed;
  int exponent = 0;
  if (const auto e = printed.find_first_of("eE"); e != std::string::npos) {
    mantissa = printed.substr(0, e);
    exponent = std::atoi(printed.c_str() + e + 1);
  }
  int decimals = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string::npos)
    decimals = static_cast<int>(mantissa.size() - dot - 1);
  return std::pow(10.0, exponent - decimals);
}

ReferenceSet ReferenceData::select(const std::string& name) const {
  const std::string suffix = "-spot";
  const bool spot = name.size() > suffix.size() &&
                    name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  const std::string base = spot ? name.substr(0, name.size() - suffix.size()) : name;
  for (const auto& set : sets) {
    if (set.name != base) continue;
    if (!spot) return set;
    ReferenceSet out = set;
    out.name = name;
    std::erase_if(out.rows, [](const ReferenceRow& r) { return r.row < 1 || r.row > 2; });
    return out;
  }
  throw ConfigError("unknown reference set '" + name + "'");
}

ReferenceData load_reference_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open reference data " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("reference data is not valid JSON: " + std::string(e.what()));
  }
  ReferenceData data;
  data.version = ju::get_int(j, "version", "reference");
  const auto& sets = j.at("sets");
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto& js = sets[s];
    const std::string where = "reference.sets[" + std::to_string(s) + "]";
    ReferenceSet set;
    set.name = ju::get_string(js, "name", where);
    if (js.contains("description")) set.description = ju::get_string(js, "description", where);
    set.potential = parse_potential(js.at("potential"));
    const auto& tol = js.at("tolerance");
    const std::string mode = ju::get_string(tol, "mode", where + ".tolerance");
    if (mode == "absolute") {
      set.mode = ToleranceMode::Absolute;
      set.tolerance = ju::get_number(tol, "value", where + ".tolerance");
    } else if (mode == "last_digit") {
      set.mode = ToleranceMode::LastDigit;
      set.tolerance = ju::get_number(tol, "units", where + ".tolerance");
    } else {
      throw ConfigError(where + ": unknown tolerance mode '" + mode + "'");
    }
    for (const auto& jr : js.at("rows")) {
      ReferenceRow row;
      row.z_target = ju::get_number(jr, "z", where);
      row.l = ju::get_int(jr, "l", where);
      row.position = ju::get_string(jr, "e_r", where);
      if (jr.contains("gamma")) row.width = ju::get_string(jr, "gamma", where);
      if (jr.contains("e_im")) row.imag = ju::get_string(jr, "e_im", where);
      row.row = ju::get_int(jr, "row", where, 0);
      row.citation = ju::get_string(jr, "citation", where);
      row.energy(); // validates the printed numbers
      set.rows.push_back(std::move(row));
    }
    data.sets.push_back(std::move(set));
  }
  return data;
}

std::filesystem::path default_reference_file() {
  if (const char* env = std::getenv("ZPLANE_REFERENCE_FILE")) return env;
  return std::filesystem::path(ZPLANE_DATA_DIR) / "reference_values.json";
}

} // namespace zplane
