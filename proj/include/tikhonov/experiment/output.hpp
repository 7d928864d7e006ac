#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tikhonov::experiment {

// Shortest round-trip decimal form ("nan", "inf", "-inf" for non-finite).
std::string format_double(double value);

// Comma-separated table with a header row and LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row(std::vector<std::string> cells);
  std::size_t rows() const noexcept { return rows_; }
  const std::string& str() const noexcept { return text_; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

std::string cell(double value);
std::string cell(std::size_t value);
std::string cell(int value);
// "none" for a missing seed.
std::string cell(const std::optional<std::uint64_t>& seed);

// Writes to a sibling temporary and renames it over `path`. Throws IoError.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

// Creates the directory if needed and checks that it is writable.
void prepare_output_dir(const std::filesystem::path& dir);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

// Self-contained SVG line plot. Axis ranges fit the data with a 5% margin
// (in log space on log axes); points that cannot be drawn (non-finite, or
// nonpositive on a log axis) are skipped.
std::string render_svg(const PlotSpec& spec);

}  // namespace tikhonov::experiment
