#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zplane/potential.hpp"

namespace zplane {

/// One published resonance. Values are kept as printed so the comparison
/// tolerance can follow the number of digits given.
struct ReferenceRow {
  double z_target = 0.0;
  int l = 0;
  std::string position;            // E_r as printed
  std::optional<std::string> width; // Gamma as printed
  std::optional<std::string> imag;  // Im E as printed (used instead of width)
  int row = 0;                      // 1-based position inside its (Z, l) block, 0 if unused
  std::string citation;

  cplx energy() const;
};

enum class ToleranceMode { Absolute, LastDigit };

struct ReferenceSet {
  std::string name;
  std::string description;
  PotentialModel potential;
  ToleranceMode mode = ToleranceMode::Absolute;
  double tolerance = 1e-7; // absolute value, or units of the last printed digit
  std::vector<ReferenceRow> rows;
};

struct ReferenceData {
  int version = 0;
  std::vector<ReferenceSet> sets;

  /// Named set. "<name>-spot" selects rows 1 and 2 of every (Z, l) block.
  ReferenceSet select(const std::string& name) const;
};

/// Unit of the last printed digit: "5.064929608" -> 1e-9, "51" -> 1, "9.57194e-5" -> 1e-10.
double last_digit_unit(const std::string& printed);

ReferenceData load_reference_data(const std::filesystem::path& path);
std::filesystem::path default_reference_file();

} // namespace zplane
