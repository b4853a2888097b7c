#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zplane/potential.hpp"
#include "zplane/quadrature.hpp"
#include "zplane/resonance.hpp"
#include "zplane/trajectory.hpp"

namespace zplane {

struct FindRequest {
  double z_target = 0.0;
  cplx guess;

  friend bool operator==(const FindRequest&, const FindRequest&) = default;
};

struct ScanSection {
  EnergyGrid grid;
  std::vector<double> z_targets;
  std::vector<double> im_schedule = SearchSpec{}.im_schedule;
  double window = 0.5;

  friend bool operator==(const ScanSection&, const ScanSection&) = default;
};

struct TableSection {
  std::vector<std::string> sets{"table1"};
  std::optional<double> tolerance; // absolute override for every set
  std::string reference_file;      // empty: bundled data file

  friend bool operator==(const TableSection&, const TableSection&) = default;
};

struct OutputSection {
  /// Plot window: re_min, re_max, im_min, im_max.
  std::array<double, 4> svg_window{-20.0, 20.0, -20.0, 20.0};

  friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

/// Everything a command needs. Physics parameters live here, never in flags.
struct RunConfig {
  PotentialModel potential;
  ChannelConfig channel;
  std::optional<cplx> energy;
  ScanSection scan;
  std::vector<FindRequest> find;
  std::optional<StabilityGrid> stability;
  TableSection table;
  OutputSection output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Validates every section; unknown keys are errors. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

} // namespace zplane
