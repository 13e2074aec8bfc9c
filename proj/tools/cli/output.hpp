#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qdwg::cli {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Lines written as "# key: value" above the CSV header.
struct RunMetadata {
  std::string version;
  std::string command;
  std::string config_hash;  // 16 hex digits of fnv1a64(canonical config)
  std::string tier;
  int fock_cutoff = 0;
  std::uint64_t seed = 0;
};

/// One cell; numbers keep full precision so a rerun is diffable bit for bit.
std::string cell(double x);
std::string cell(long x);
inline std::string cell(int x) { return cell(static_cast<long>(x)); }
inline std::string cell(std::string s) { return s; }

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);  // throws on a column count mismatch
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string render(const RunMetadata& meta) const;
  /// Column of a row by name, parsed as a double.
  double number(std::size_t row, std::string_view column) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& text);

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Bare line plot with axes, ticks and a legend.
std::string svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                     const std::string& x_label, const std::string& y_label);

}  // namespace qdwg::cli
