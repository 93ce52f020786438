#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavity/config.hpp"
#include "cavity/dynamics.hpp"

namespace cavity {

inline constexpr std::string_view kCsvHeader =
    "t,re_c11,im_c11,re_c12,im_c12,re_c21,im_c21,re_c22,im_c22,norm,concurrence,trace_distance,x,p";

/// One CSV record. NRW rows store C1 in c11 and C2 in c22; x and p are empty.
struct CsvRow {
  double t = 0.0;
  Complex c11, c12, c21, c22;
  double norm = 0.0;
  double concurrence = 0.0;
  double trace_distance = 0.0;
  std::optional<double> x;
  std::optional<double> p;
};

[[nodiscard]] std::string trajectory_csv(const Trajectory& trajectory);
[[nodiscard]] std::vector<CsvRow> parse_trajectory_csv(std::string_view text);
[[nodiscard]] std::vector<CsvRow> read_trajectory_csv(const std::filesystem::path& path);

/// `key = value` lines for every resolved parameter, readable by parse_config.
[[nodiscard]] std::string meta_text(const RunConfig& cfg);

/// Concurrence and trace distance against t as a minimal SVG line plot.
[[nodiscard]] std::string trajectory_svg(const Trajectory& trajectory, const std::string& title);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace cavity
