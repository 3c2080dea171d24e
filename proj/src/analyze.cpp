#include "windvar/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "windvar/csv.hpp"
#include "windvar/errors.hpp"

namespace windvar {

AnalyzeResult analyze_csv(const std::filesystem::path& input, const AnalyzeSettings& s) {
  std::ifstream in(input);
  if (!in) throw InputError("cannot open " + input.string());
  const auto table = csv::read_table(in);
  const auto series = csv::to_series(table);

  std::size_t col = 0;
  if (!s.column.empty()) {
    const auto it = std::find(table.header.begin() + 1, table.header.end(), s.column);
    if (it == table.header.end()) throw InputError("no column named '" + s.column + "'");
    col = static_cast<std::size_t>(it - table.header.begin()) - 1;
  }
  const TimeSeries& x = series[col];

  std::size_t segment = 0;
  if (s.segment) {
    segment = *s.segment;
  } else {
    segment = 2;
    while (segment * 2 <= x.size() / 2 && segment < 256) segment *= 2;
  }

  AnalyzeResult res;
  res.psd = estimate_psd(x, segment, s.overlap);

  double cap = 0.0;
  for (double v : x.values) cap = std::max(cap, std::abs(v));
  res.events = classify_ramps(x, s.capacity.value_or(cap > 0.0 ? cap : 1.0), s.ramps);

  const auto stem = input.parent_path() / input.stem();
  res.psd_file = stem.string() + "_psd.csv";
  res.events_file = stem.string() + "_events.csv";
  {
    std::ofstream os(res.psd_file, std::ios::binary);
    if (!os) throw InputError("cannot write " + res.psd_file.string());
    os << "frequency_Hz,density\n";
    for (std::size_t k = 0; k < res.psd.frequencies.size(); ++k) {
      os << csv::format_number(res.psd.frequencies[k]) << ','
         << csv::format_number(res.psd.densities[k]) << '\n';
    }
  }
  {
    std::ofstream os(res.events_file, std::ios::binary);
    if (!os) throw InputError("cannot write " + res.events_file.string());
    write_events_csv(os, res.events);
  }
  return res;
}

}  // namespace windvar
