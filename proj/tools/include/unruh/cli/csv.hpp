#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace unruh::cli {

/// Shortest round-trip-safe text for a double (17 significant digits).
std::string format_double(double x);

/// Comma-separated table writer with a fixed header.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  void row(const std::vector<double>& values);
  /// Numeric values followed by one trailing text column.
  void row(const std::vector<double>& values, const std::string& tag);
  long rows() const { return rows_; }

 private:
  std::ofstream out_;
  std::size_t columns_;
  long rows_ = 0;
};

}  // namespace unruh::cli
