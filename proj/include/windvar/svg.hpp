#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "windvar/time_series.hpp"

namespace windvar::svg {

struct Line {
  std::string label;
  const TimeSeries* series;
};

/// Self-contained SVG line chart of one or more series sharing a time axis.
void line_chart(std::ostream& os, const std::string& title, const std::string& y_label,
                const std::vector<Line>& lines);

}  // namespace windvar::svg
