#include "zplane/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "zplane/error.hpp"
#include "zplane/json_util.hpp"

namespace zplane {

namespace ju = json_util;

namespace {

cplx parse_complex(const nlohmann::json& v, const std::string& name) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(name + " must be a [re, im] pair of numbers");
  const cplx z(v[0].get<double>(), v[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ConfigError(name + " must be finite");
  return z;
}

nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

ChannelConfig parse_channel(const nlohmann::json& j) {
  ju::require_object(j, "channel");
  ju::reject_unknown(j, "channel", {"l", "n", "m", "lambda", "theta"});
  ChannelConfig c;
  c.l = ju::get_int(j, "l", "channel", c.l);
  c.n = ju::get_int(j, "n", "channel", c.n);
  c.m = ju::get_int(j, "m", "channel", c.m);
  c.lambda = ju::get_number(j, "lambda", "channel", c.lambda);
  c.theta = ju::get_number(j, "theta", "channel", c.theta);
  c.validate();
  return c;
}

ScanSection parse_scan(const nlohmann::json& j) {
  ju::require_object(j, "scan");
  ju::reject_unknown(j, "scan",
                     {"re_start", "re_end", "steps", "im_part", "z_targets", "im_schedule", "window"});
  ScanSection s;
  s.grid.re_start = ju::get_number(j, "re_start", "scan", s.grid.re_start);
  s.grid.re_end = ju::get_number(j, "re_end", "scan", s.grid.re_end);
  s.grid.steps = ju::get_int(j, "steps", "scan", s.grid.steps);
  s.grid.im_part = ju::get_number(j, "im_part", "scan", s.grid.im_part);
  if (j.contains("z_targets")) s.z_targets = ju::get_numbers(j, "z_targets", "scan");
  if (j.contains("im_schedule")) s.im_schedule = ju::get_numbers(j, "im_schedule", "scan");
  s.window = ju::get_number(j, "window", "scan", s.window);
  s.grid.validate();
  if (!(s.window > 0.0)) throw ConfigError("scan.window must be positive");
  return s;
}

std::vector<FindRequest> parse_find(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("find must be an array of {z_target, guess}");
  std::vector<FindRequest> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "find[" + std::to_string(i) + "]";
    ju::require_object(j[i], where);
    ju::reject_unknown(j[i], where, {"z_target", "guess"});
    if (!j[i].contains("guess")) throw ConfigError("missing required key " + where + ".guess");
    out.push_back({ju::get_number(j[i], "z_target", where),
                   parse_complex(j[i].at("guess"), where + ".guess")});
  }
  return out;
}

StabilityGrid parse_stability(const nlohmann::json& j) {
  ju::require_object(j, "stability");
  ju::reject_unknown(j, "stability", {"lambdas", "thetas", "sizes", "tolerance"});
  StabilityGrid g;
  g.lambdas = ju::get_numbers(j, "lambdas", "stability");
  g.thetas = ju::get_numbers(j, "thetas", "stability");
  g.sizes = ju::get_ints(j, "sizes", "stability");
  g.tolerance = ju::get_number(j, "tolerance", "stability", g.tolerance);
  g.validate();
  for (double l : g.lambdas)
    if (!(l > 0.0)) throw ConfigError("stability.lambdas entries must be positive");
  for (double t : g.thetas)
    if (!(t >= 0.0 && t < 1.5707963267948966))
      throw ConfigError("stability.thetas entries must lie in [0, pi/2)");
  for (int n : g.sizes)
    if (n < 1) throw ConfigError("stability.sizes entries must be at least 1");
  return g;
}

TableSection parse_table(const nlohmann::json& j) {
  ju::require_object(j, "table");
  ju::reject_unknown(j, "table", {"sets", "tolerance", "reference_file"});
  TableSection t;
  if (j.contains("sets")) {
    const auto& sets = j.at("sets");
    if (!sets.is_array() || sets.empty()) throw ConfigError("table.sets must be a non-empty array");
    t.sets.clear();
    for (const auto& s : sets) {
      if (!s.is_string()) throw ConfigError("table.sets entries must be strings");
      t.sets.push_back(s.get<std::string>());
    }
  }
  if (j.contains("tolerance")) {
    t.tolerance = ju::get_number(j, "tolerance", "table");
    if (*t.tolerance < 0.0) throw ConfigError("table.tolerance must be non-negative");
  }
  if (j.contains("reference_file")) t.reference_file = ju::get_string(j, "reference_file", "table");
  return t;
}

OutputSection parse_output(const nlohmann::json& j) {
  ju::require_object(j, "output");
  ju::reject_unknown(j, "output", {"svg_window"});
  OutputSection o;
  if (j.contains("svg_window")) {
    const auto w = ju::get_numbers(j, "svg_window", "output");
    if (w.size() != 4 || !(w[0] < w[1]) || !(w[2] < w[3]))
      throw ConfigError("output.svg_window must be [re_min, re_max, im_min, im_max] with min < max");
    std::copy(w.begin(), w.end(), o.svg_window.begin());
  }
  return o;
}

} // namespace

RunConfig parse_config(const nlohmann::json& j) {
  ju::require_object(j, "config");
  ju::reject_unknown(j, "config",
                     {"potential", "channel", "energy", "scan", "find", "stability", "table", "output"});
  RunConfig c;
  if (j.contains("potential")) c.potential = parse_potential(j.at("potential"));
  if (j.contains("channel")) c.channel = parse_channel(j.at("channel"));
  if (j.contains("energy")) c.energy = parse_complex(j.at("energy"), "energy");
  if (j.contains("scan")) c.scan = parse_scan(j.at("scan"));
  if (j.contains("find")) c.find = parse_find(j.at("find"));
  if (j.contains("stability")) c.stability = parse_stability(j.at("stability"));
  if (j.contains("table")) c.table = parse_table(j.at("table"));
  if (j.contains("output")) c.output = parse_output(j.at("output"));
  c.channel.validate();
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["potential"] = to_json(c.potential);
  j["channel"] = {{"l", c.channel.l},
                  {"n", c.channel.n},
                  {"lambda", c.channel.lambda},
                  {"theta", c.channel.theta}};
  if (c.channel.m != 0) j["channel"]["m"] = c.channel.m;
  if (c.energy) j["energy"] = complex_json(*c.energy);
  j["scan"] = {{"re_start", c.scan.grid.re_start}, {"re_end", c.scan.grid.re_end},
               {"steps", c.scan.grid.steps},       {"im_part", c.scan.grid.im_part},
               {"z_targets", c.scan.z_targets},    {"im_schedule", c.scan.im_schedule},
               {"window", c.scan.window}};
  if (!c.find.empty()) {
    j["find"] = nlohmann::json::array();
    for (const auto& f : c.find)
      j["find"].push_back({{"z_target", f.z_target}, {"guess", complex_json(f.guess)}});
  }
  if (c.stability) {
    j["stability"] = {{"lambdas", c.stability->lambdas},
                      {"thetas", c.stability->thetas},
                      {"sizes", c.stability->sizes},
                      {"tolerance", c.stability->tolerance}};
  }
  j["table"] = {{"sets", c.table.sets}};
  if (c.table.tolerance) j["table"]["tolerance"] = *c.table.tolerance;
  if (!c.table.reference_file.empty()) j["table"]["reference_file"] = c.table.reference_file;
  j["output"] = {{"svg_window", c.output.svg_window}};
  return j;
}

} // namespace zplane
