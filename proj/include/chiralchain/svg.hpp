#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace chiralchain::cli {

/// Plots are derived from the CSV files only, never from in-memory state,
/// so the numeric record stays primary.

/// Line plot of one or more CSV columns against the first column.
void svg_line_plot(const std::filesystem::path& csv, const std::filesystem::path& svg,
                   const std::vector<std::string>& y_columns, bool log_x, bool log_y);

/// Heat map of column z over the (column x, column y) grid of a sweep CSV.
void svg_heatmap(const std::filesystem::path& csv, const std::filesystem::path& svg,
                 const std::string& z_column);

}  // namespace chiralchain::cli
