#pragma once

// CSV tables (RFC 4180 quoting, '\n' line endings, shortest round-trip
// decimals) and small static SVG line plots.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wavelab {

/// Shortest decimal that round-trips; "inf", "-inf", "nan" for non-finite.
std::string format_number(double v);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  /// Throws ShapeError when the cell count differs from the column count.
  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;  // non-positive values are dropped
};

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);
void write_svg(const std::filesystem::path& path, const PlotSpec& spec,
               const std::vector<PlotSeries>& series);

}  // namespace wavelab
