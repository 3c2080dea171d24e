#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "windvar/csv.hpp"
#include "windvar/engine.hpp"
#include "windvar/errors.hpp"
#include "windvar/svg.hpp"

namespace windvar {

namespace svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

void line_chart(std::ostream& os, const std::string& title, const std::string& y_label,
                const std::vector<Line>& lines) {
  constexpr double W = 900, H = 420, L = 70, R = 20, T = 40, B = 50;
  double t0 = 0, t1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const auto& l : lines) {
    const auto [lo, hi] = std::minmax_element(l.series->values.begin(), l.series->values.end());
    if (first) {
      t0 = l.series->start_time;
      t1 = l.series->end_time();
      y0 = *lo;
      y1 = *hi;
      first = false;
    } else {
      t0 = std::min(t0, l.series->start_time);
      t1 = std::max(t1, l.series->end_time());
      y0 = std::min(y0, *lo);
      y1 = std::max(y1, *hi);
    }
  }
  if (t1 <= t0) t1 = t0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double t) { return L + (t - t0) / (t1 - t0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"16\">" << escape(title) << "</text>\n"
     << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = y0 + (y1 - y0) * k / 4.0;
    const double t = t0 + (t1 - t0) * k / 4.0;
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(y) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(y)
       << "</text>\n"
       << "<text x=\"" << px(t) << "\" y=\"" << H - B + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(t)
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">time (s)</text>\n"
     << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 16 "
     << (T + H - B) / 2
     << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(y_label)
     << "</text>\n";

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const TimeSeries& s = *lines[li].series;
    const char* colour = kPalette[li % std::size(kPalette)];
    // Decimate to at most ~2000 vertices per line.
    const std::size_t stride = std::max<std::size_t>(1, s.size() / 2000);
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.size(); i += stride) {
      os << fmt(px(s.time_at(i))) << ',' << fmt(py(s.values[i])) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (li + 1)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << colour
       << "\">" << escape(lines[li].label) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace svg

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw InputError("cannot write " + p.string());
  return os;
}

void write_replay_region(std::ostream& os, const std::vector<TimeSeries>& segments) {
  os << "time_s,region\n";
  for (const auto& s : segments) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      os << csv::format_number(s.time_at(i)) << ',' << csv::format_number(s.values[i]) << '\n';
    }
  }
}

}  // namespace

std::vector<std::string> output_files(const SimulationResult& res, bool plots) {
  std::vector<std::string> files;
  if (!res.replay) files = {"wind.csv", "power_turbines.csv", "power_plants.csv"};
  for (const char* f : {"region.csv", "events.csv", "curtailment.csv", "over_response.csv"}) {
    files.emplace_back(f);
  }
  if (plots) {
    files.emplace_back("region.svg");
    if (!res.replay) {
      files.emplace_back("plants.svg");
      files.emplace_back("wind.svg");
    }
  }
  return files;
}

void write_outputs(const SimulationResult& res, const std::filesystem::path& dir, bool plots) {
  std::filesystem::create_directories(dir);

  if (res.replay) {
    auto os = open_out(dir / "region.csv");
    write_replay_region(os, res.scripted_segments);
  } else {
    {
      auto os = open_out(dir / "wind.csv");
      write_csv(os, res.wind);
    }
    {
      auto os = open_out(dir / "power_turbines.csv");
      std::vector<std::string> header{"time_s"};
      std::vector<const TimeSeries*> cols;
      for (std::size_t j = 0; j < res.turbine_ids.size(); ++j) {
        header.push_back(res.turbine_ids[j]);
        cols.push_back(&res.turbine_power[j]);
      }
      csv::write_columns(os, header, cols);
    }
    {
      auto os = open_out(dir / "power_plants.csv");
      std::vector<std::string> header{"time_s"};
      std::vector<const TimeSeries*> cols;
      for (std::size_t p = 0; p < res.poi.plant_ids.size(); ++p) {
        header.push_back(res.poi.plant_ids[p]);
        cols.push_back(&res.poi.plants[p]);
      }
      header.emplace_back("region");
      cols.push_back(&res.poi.region);
      csv::write_columns(os, header, cols);
    }
    {
      auto os = open_out(dir / "region.csv");
      csv::write_columns(os, {"time_s", "region"}, {&res.poi.region});
    }
  }
  {
    auto os = open_out(dir / "events.csv");
    write_events_csv(os, res.events);
  }
  {
    auto os = open_out(dir / "curtailment.csv");
    write_curtailment_csv(os, res.curtailment,
                          res.replay ? std::nullopt : std::optional<double>(res.installed_capacity));
  }
  {
    auto os = open_out(dir / "over_response.csv");
    write_over_response_csv(os, res.over_response);
  }

  if (!plots) return;
  // Charts are best effort and never fail the run.
  try {
    if (res.replay) {
      std::vector<svg::Line> lines;
      for (std::size_t i = 0; i < res.scripted_segments.size(); ++i) {
        lines.push_back({"period " + std::to_string(i + 1), &res.scripted_segments[i]});
      }
      auto os = open_out(dir / "region.svg");
      svg::line_chart(os, "Scripted region power", "MW", lines);
      return;
    }
    {
      auto os = open_out(dir / "region.svg");
      svg::line_chart(os, "Region power", "MW", {{"region", &res.poi.region}});
    }
    {
      std::vector<svg::Line> lines;
      for (std::size_t p = 0; p < res.poi.plants.size() && p < 10; ++p) {
        lines.push_back({res.poi.plant_ids[p], &res.poi.plants[p]});
      }
      auto os = open_out(dir / "plants.svg");
      svg::line_chart(os, "Plant power at POI", "MW", lines);
    }
    {
      std::vector<svg::Line> lines;
      for (std::size_t j = 0; j < res.wind.series.size() && j < 3; ++j) {
        lines.push_back({"pos_" + std::to_string(j), &res.wind.series[j]});
      }
      auto os = open_out(dir / "wind.svg");
      svg::line_chart(os, "Synthesized wind", "m/s", lines);
    }
  } catch (const std::exception&) {
  }
}

}  // namespace windvar
