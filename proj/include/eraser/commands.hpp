#pragma once

// Subcommands behind the eraserlab CLI. Each writes <out>/<command>.csv and a
// <out>/<command>.json sidecar, and returns a human-readable summary.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eraser/config.hpp"

namespace eraser {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> points;
};

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::string summary;
};

/// pattern, scan, erase-demo, whichpath, ordering, chsh.
std::span<const std::string_view> command_names();

/// Applies --seed/--points overrides to the configuration.
BenchConfig with_overrides(BenchConfig config, const RunOptions& options);

/// Throws eraser::Error / ConfigError / std::invalid_argument on failure.
RunResult run(std::string_view command, const BenchConfig& config, const RunOptions& options);

}  // namespace eraser
