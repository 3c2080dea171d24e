#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "windvar/time_series.hpp"

namespace windvar::csv {

/// Shortest round-trip decimal representation; locale independent.
std::string format_number(double v);
/// Empty string for an absent value.
std::string format_optional(const std::optional<double>& v);

/// Header row then one row per sample: time of the first column, then each column's value.
/// All columns must share sampling.
void write_columns(std::ostream& os, const std::vector<std::string>& header,
                   const std::vector<const TimeSeries*>& columns);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Parses a numeric CSV with one header row. Throws InputError on ragged rows
/// or non-numeric cells, naming the offending line.
Table read_table(std::istream& is);

/// Interprets a table whose first column is time in seconds as uniformly
/// sampled series, one per remaining column. Throws InputError when the
/// time step is not uniform.
std::vector<TimeSeries> to_series(const Table& table);

}  // namespace windvar::csv
