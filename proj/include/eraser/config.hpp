#pragma once

// Bench configuration files.
//
// Grammar: `[section]` headers, one `key = value` per line, `#` starts a
// comment. Sections and keys are fixed; anything unknown is an error.
//
//   [source]    phi = <angle>             default 0 rad
//               o_axis = x | y            default x (e then lies along the other axis)
//   [geometry]  wavelength, slit_width, slit_separation, distance = <length>
//               (section and all four keys required; separation is center to center)
//   [elements]  qwp1, qwp2, pol1 = <angle> | absent      default absent
//   [scan]      x_min, x_max = <length>                  default -3 mm, 3 mm
//               points = <integer >= 2>                  default 60
//               peak_rate, dwell_scale, rate_scale = <number > 0>   default 200, 1, 1
//               (peak_rate 200 is an illustrative rate, not a measured one)
//               misalignment = <angle>                   default 0 rad
//               seed = <unsigned 64-bit integer>         default 1
//               delayed = true | false                   default false
//
// <angle> is a number followed by `deg` or `rad`; <length> a number followed
// by one of m, cm, mm, um, nm. Missing units are syntax errors.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eraser/scan.hpp"

namespace eraser {

struct ElementsBlock {
  std::optional<double> qwp1;
  std::optional<double> qwp2;
  std::optional<double> pol1;
  friend bool operator==(const ElementsBlock&, const ElementsBlock&) = default;
};

struct ScanBlock {
  double x_min = -3e-3;
  double x_max = 3e-3;
  std::size_t points = 60;
  double peak_rate = 200.0;
  double dwell_scale = 1.0;
  double rate_scale = 1.0;
  double misalignment = 0.0;
  std::uint64_t seed = 1;
  bool delayed = false;
  friend bool operator==(const ScanBlock&, const ScanBlock&) = default;
};

struct BenchConfig {
  PairSourceSpec source;
  BenchGeometry geometry;
  ElementsBlock elements;
  ScanBlock scan;

  ScanConfig to_scan_config() const;
  friend bool operator==(const BenchConfig&, const BenchConfig&) = default;
};

class ConfigError : public std::runtime_error {
 public:
  /// line/column are 1-based; 0 means the error is not tied to a position.
  ConfigError(const std::string& message, std::size_t line, std::size_t column, std::string key);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string key_;
};

BenchConfig parse_config(std::string_view text);
BenchConfig load_config(const std::filesystem::path& path);

/// Canonical text form (radians, meters, 17 significant digits); parses back
/// to an identical BenchConfig.
std::string serialize_config(const BenchConfig& config);

}  // namespace eraser
