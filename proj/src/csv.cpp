#include "windvar/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "windvar/errors.hpp"

namespace windvar::csv {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

void write_columns(std::ostream& os, const std::vector<std::string>& header,
                   const std::vector<const TimeSeries*>& columns) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  if (columns.empty()) return;
  const TimeSeries& first = *columns.front();
  for (const auto* c : columns) {
    if (!same_sampling(first, *c)) throw InputError("CSV columns must share sampling");
  }
  std::string line;
  for (std::size_t r = 0; r < first.size(); ++r) {
    line = format_number(first.time_at(r));
    for (const auto* c : columns) {
      line += ',';
      line += format_number(c->values[r]);
    }
    line += '\n';
    os << line;
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

Table read_table(std::istream& is) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      for (auto& c : cells) t.header.push_back(trim(c));
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw InputError("ragged CSV: line " + std::to_string(lineno) + " has " +
                       std::to_string(cells.size()) + " cells, header has " +
                       std::to_string(t.header.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto& c : cells) {
      c = trim(c);
      double v = 0.0;
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc() || res.ptr != c.data() + c.size() || !std::isfinite(v)) {
        throw InputError("non-numeric CSV cell '" + c + "' on line " + std::to_string(lineno));
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw InputError("CSV has no header");
  return t;
}

std::vector<TimeSeries> to_series(const Table& t) {
  if (t.header.size() < 2) throw InputError("CSV needs a time column and at least one value column");
  if (t.rows.size() < 2) throw InputError("CSV needs at least two rows");
  const double dt = t.rows[1][0] - t.rows[0][0];
  if (!(dt > 0.0)) throw InputError("time column must be strictly increasing");
  for (std::size_t r = 1; r < t.rows.size(); ++r) {
    const double step = t.rows[r][0] - t.rows[r - 1][0];
    if (std::abs(step - dt) > 1e-6 * dt) {
      throw InputError("non-uniform time step at row " + std::to_string(r + 1));
    }
  }
  std::vector<TimeSeries> out;
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    std::vector<double> v;
    v.reserve(t.rows.size());
    for (const auto& row : t.rows) v.push_back(row[c]);
    out.emplace_back(dt, t.rows[0][0], std::move(v));
  }
  return out;
}

}  // namespace windvar::csv
