#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dp3::cli {

/// Shortest round-trippable form is not used on purpose: all numbers are
/// written with 17 significant digits so that output is byte-stable.
std::string format_number(double x);

/// Comma-separated table with a fixed header row and LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<std::optional<double>>& row);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_; }

  std::string str() const { return body_; }
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::string body_;
  std::size_t rows_ = 0;
};

/// Parsed CSV: header plus rows, empty fields as nullopt.
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  std::size_t column(std::string_view name) const;
};

CsvData read_csv(const std::filesystem::path& path);

}  // namespace dp3::cli
