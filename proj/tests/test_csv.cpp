#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "windvar/csv.hpp"
#include "windvar/errors.hpp"

using namespace windvar;

TEST(Csv, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 7796.0, -796.0, 1e-300, 123456789.125}) {
    EXPECT_EQ(std::stod(csv::format_number(v)), v);
  }
  EXPECT_EQ(csv::format_number(-0.0), "0");
  EXPECT_EQ(csv::format_number(2.5), "2.5");
  EXPECT_EQ(csv::format_optional(std::nullopt), "");
}

TEST(Csv, WriteThenRead) {
  const TimeSeries a(10.0, 100.0, {1.0, 2.0, 3.0});
  const TimeSeries b(10.0, 100.0, {0.5, 0.25, 0.125});
  std::stringstream ss;
  csv::write_columns(ss, {"time_s", "a", "b"}, {&a, &b});
  const auto table = csv::read_table(ss);
  ASSERT_EQ(table.header, (std::vector<std::string>{"time_s", "a", "b"}));
  const auto series = csv::to_series(table);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[0].values, a.values);
  EXPECT_EQ(series[1].values, b.values);
  EXPECT_EQ(series[0].dt, 10.0);
  EXPECT_EQ(series[0].start_time, 100.0);
}

TEST(Csv, RejectsMalformedInput) {
  std::istringstream ragged("time_s,x\n0,1\n1\n");
  EXPECT_THROW(csv::read_table(ragged), InputError);
  std::istringstream text("time_s,x\n0,abc\n");
  EXPECT_THROW(csv::read_table(text), InputError);
  std::istringstream uneven("time_s,x\n0,1\n1,1\n3,1\n");
  EXPECT_THROW(csv::to_series(csv::read_table(uneven)), InputError);
}

TEST(TimeSeriesBasics, IndexAndValidation) {
  const TimeSeries s(0.5, 10.0, {1, 2, 3, 4});
  EXPECT_EQ(s.index_of(11.0), 2u);
  EXPECT_EQ(s.index_of(11.2), TimeSeries::npos);
  EXPECT_EQ(s.index_of(12.0), TimeSeries::npos);
  EXPECT_EQ(s.end_time(), 11.5);
  EXPECT_THROW(TimeSeries(0.0, 0.0, {1.0}), InputError);
  EXPECT_THROW(TimeSeries(1.0, 0.0, {}), InputError);
  EXPECT_THROW(TimeSeries(1.0, 0.0, {NAN}), InputError);
  EXPECT_DOUBLE_EQ(variance(std::vector<double>{1, 2, 3, 4}), 1.25);
}
