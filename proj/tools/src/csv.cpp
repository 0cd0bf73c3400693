#include "unruh/cli/csv.hpp"

#include <cmath>
#include <cstdio>

#include "unruh/error.hpp"

namespace unruh::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw Error("cannot write " + path.string());
  for (std::size_t k = 0; k < header.size(); ++k) out_ << (k ? "," : "") << header[k];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw Error("CsvWriter: column count mismatch");
  for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << format_double(values[k]);
  out_ << '\n';
  if (!out_) throw Error("CsvWriter: write failed");
  ++rows_;
}

void CsvWriter::row(const std::vector<double>& values, const std::string& tag) {
  if (values.size() + 1 != columns_) throw Error("CsvWriter: column count mismatch");
  for (double v : values) out_ << format_double(v) << ',';
  out_ << tag << '\n';
  if (!out_) throw Error("CsvWriter: write failed");
  ++rows_;
}

}  // namespace unruh::cli
