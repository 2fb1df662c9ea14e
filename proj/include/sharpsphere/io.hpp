#pragma once

// Text output shared by the command-line tools: reals at 12 significant
// digits, flat key/value reports and fixed-header tables.

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sharpsphere {

/// %.12g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double v);

enum class Format { Csv, Json };

class Report {
 public:
  using Value = std::variant<double, long long, bool, std::string>;

  Report& add(std::string key, double v);
  Report& add(std::string key, int v);
  Report& add(std::string key, long long v);
  Report& add(std::string key, bool v);
  Report& add(std::string key, std::string v);
  Report& add(std::string key, const char* v) { return add(std::move(key), std::string(v)); }

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

  /// key=value lines (Csv) or one flat JSON object (Json).
  void write(std::ostream& os, Format format) const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

class Table {
 public:
  explicit Table(std::vector<std::string> header);
  void add_row(std::vector<double> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  /// CSV with the header line, or a JSON object mapping each column to an array.
  void write(std::ostream& os, Format format) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace sharpsphere
