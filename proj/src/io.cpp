#include "sharpsphere/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "sharpsphere/errors.hpp"

namespace sharpsphere {

namespace {

using Json = nlohmann::ordered_json;

Json json_real(double v) {
  if (!std::isfinite(v)) return format_real(v);
  return std::strtod(format_real(v).c_str(), nullptr);
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

Report& Report::add(std::string key, double v) {
  entries_.emplace_back(std::move(key), v);
  return *this;
}
Report& Report::add(std::string key, int v) { return add(std::move(key), static_cast<long long>(v)); }
Report& Report::add(std::string key, long long v) {
  entries_.emplace_back(std::move(key), v);
  return *this;
}
Report& Report::add(std::string key, bool v) {
  entries_.emplace_back(std::move(key), v);
  return *this;
}
Report& Report::add(std::string key, std::string v) {
  entries_.emplace_back(std::move(key), std::move(v));
  return *this;
}

void Report::write(std::ostream& os, Format format) const {
  if (format == Format::Csv) {
    for (const auto& [key, value] : entries_) {
      os << key << '=';
      std::visit(
          [&os](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              os << format_real(v);
            } else if constexpr (std::is_same_v<V, bool>) {
              os << (v ? "true" : "false");
            } else {
              os << v;
            }
          },
          value);
      os << '\n';
    }
    return;
  }
  Json j = Json::object();
  for (const auto& [key, value] : entries_) {
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, double>) {
            j[key] = json_real(v);
          } else {
            j[key] = v;
          }
        },
        value);
  }
  os << j.dump(2) << '\n';
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

void Table::add_row(std::vector<double> row) {
  if (row.size() != header_.size()) throw DimensionMismatch("table row has the wrong number of columns");
  rows_.push_back(std::move(row));
}

void Table::write(std::ostream& os, Format format) const {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
      os << '\n';
    }
    return;
  }
  Json j = Json::object();
  for (std::size_t c = 0; c < header_.size(); ++c) {
    Json column = Json::array();
    for (const auto& row : rows_) column.push_back(json_real(row[c]));
    j[header_[c]] = std::move(column);
  }
  os << j.dump(2) << '\n';
}

}  // namespace sharpsphere
