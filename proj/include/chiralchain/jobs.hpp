#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chiralchain/config.hpp"

namespace chiralchain::cli {

/// Runs one job to completion and returns the files written. CSV output is
/// deterministic: fixed column order, 17-significant-digit floats, '#'
/// comment lines echoing the full configuration, results ordered by grid
/// index regardless of worker count.
std::vector<std::filesystem::path> run_job(const JobConfig& config);

}  // namespace chiralchain::cli
