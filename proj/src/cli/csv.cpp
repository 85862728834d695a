#include "dp3/cli/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dp3/core.hpp"

namespace dp3::cli {

std::string format_number(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) body_ += ',';
    body_ += header_[i];
  }
  body_ += '\n';
}

void CsvTable::add_row(const std::vector<std::optional<double>>& row) {
  if (row.size() != header_.size()) {
    fail(ErrorCode::InvalidState, "CSV row width does not match header");
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) body_ += ',';
    if (row[i]) body_ += format_number(*row[i]);
  }
  body_ += '\n';
  ++rows_;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << body_;
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

std::size_t CsvData::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  fail(ErrorCode::InvalidState, "CSV has no column " + std::string(name));
}

CsvData read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  CsvData data;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (first) {
      data.header = std::move(fields);
      first = false;
      continue;
    }
    std::vector<std::optional<double>> row;
    for (const auto& f : fields) {
      if (f.empty()) {
        row.emplace_back();
        continue;
      }
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc()) fail(ErrorCode::IoError, "bad number '" + f + "'");
      row.emplace_back(v);
    }
    row.resize(data.header.size());
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace dp3::cli
