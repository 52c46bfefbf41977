#pragma once

#include "fracext/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace fracext::cli {

struct Options {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "run";
  std::size_t cap_atoms = kDefaultAtomCap;
};

// Returns the process exit code; throws fracext errors for main() to map.
int run(const std::string& group, const std::string& action, const Options& opts);

}  // namespace fracext::cli
