#include <gtest/gtest.h>

#include <cmath>

#include "windvar/engine.hpp"
#include "windvar/errors.hpp"
#include "windvar/scenario.hpp"

using namespace windvar;
using nlohmann::json;

namespace {

std::string schema_path(const json& doc) {
  try {
    parse_scenario(doc).validate();
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST(Scenario, EmptyDocumentIsValid) {
  const auto sc = parse_scenario(json::object());
  EXPECT_NO_THROW(sc.validate());
  EXPECT_EQ(sc.fleet.turbines.size(), 1u);
  EXPECT_EQ(sc.fleet.plants[0].id, "P1");
  const auto res = simulate(sc);
  EXPECT_EQ(res.poi.region.size(), 3601u);
}

TEST(Scenario, ClockStrings) {
  EXPECT_EQ(parse_clock("1:08", "$"), 4080.0);
  EXPECT_EQ(parse_clock("0:00:30", "$"), 30.0);
  EXPECT_EQ(parse_clock(12.5, "$"), 12.5);
  EXPECT_THROW(parse_clock("1:8", "$"), SchemaError);
  EXPECT_THROW(parse_clock("noon", "$"), SchemaError);
  EXPECT_THROW(parse_clock("1:02:03:04", "$"), SchemaError);
  EXPECT_THROW(parse_clock("1:75", "$"), SchemaError);
}

TEST(Scenario, ErrorsCarryFieldPaths) {
  EXPECT_EQ(schema_path({{"duraton_s", 10}}), "$.duraton_s");
  EXPECT_EQ(schema_path({{"duration_s", 100}, {"dt_s", 3}}), "$.dt_s");
  EXPECT_EQ(schema_path({{"wind", {{"components", {{{"peak_frequency", 0.01}, {"variance", -1}}}}}}}),
            "$.wind");
  EXPECT_EQ(schema_path({{"dispatch", {{"orders", {{{"t_start", 0}, {"setpoint_MW", 1}, {"release", true}}}}}}}),
            "$.dispatch.orders[0]");
  EXPECT_EQ(schema_path({{"sags", {{{"t", 5}, {"plants", {"NOPE"}}}}}}), "$.sags[0].plants");
  EXPECT_EQ(schema_path({{"seed", "x"}}), "$.seed");
}

TEST(Scenario, PerUnitSetpointsUseInstalledCapacity) {
  const json doc = {
      {"fleet", {{"plants", {{{"id", "A"}, {"layout", {{"count", 4}, {"columns", 2}, {"spacing_m", 300}}}}}}}},
      {"dispatch", {{"orders", {{{"t_start", 0}, {"t_end", 600}, {"setpoint_pu", 0.5}}}}}}};
  const auto sc = parse_scenario(doc);
  ASSERT_EQ(sc.orders.size(), 1u);
  EXPECT_DOUBLE_EQ(*sc.orders[0].setpoint, 2.0);
}

TEST(Scenario, ConstantWindSingleTurbine) {
  const json doc = {{"duration_s", 600},
                    {"wind", {{"mean_speed", 8}, {"components", {{{"peak_period_s", 60}, {"variance", 0}}}}}}};
  const auto res = simulate(parse_scenario(doc));
  ASSERT_EQ(res.turbine_power.size(), 1u);
  for (double p : res.turbine_power[0].values) EXPECT_NEAR(p, 448.0 / 1664.0, 1e-12);
}

TEST(Scenario, SerialAndParallelRunsAgree) {
  const auto sc = load_scenario(WINDVAR_SCENARIOS "/over_response.json");
  const auto a = simulate(sc, Exec::serial);
  const auto b = simulate(sc, Exec::parallel);
  EXPECT_EQ(a.poi.region.values, b.poi.region.values);
  for (std::size_t j = 0; j < a.turbine_power.size(); ++j) {
    ASSERT_EQ(a.turbine_power[j].values, b.turbine_power[j].values);
  }
}

TEST(Scenario, RecordedScheduleReplay) {
  const auto res = simulate(load_scenario(WINDVAR_SCENARIOS "/curtailment_replay.json"));
  const double expected[] = {1.71, 1.93, 2.66, 0.11, 0.14, 0.07};
  ASSERT_EQ(res.curtailment.size(), 7u);
  for (int i = 0; i < 6; ++i) {
    ASSERT_TRUE(res.curtailment[i].ratio);
    EXPECT_NEAR(*res.curtailment[i].ratio, expected[i], 0.01) << "row " << i + 1;
  }
  EXPECT_FALSE(res.curtailment[6].ratio);
  EXPECT_EQ(res.curtailment[6].initial_power, 4209.0);
}

TEST(Scenario, ReplayOrdersMustMatchSegments) {
  const json doc = {{"duration_s", 7200},
                    {"dt_s", 60},
                    {"scripted_region", {{{"t_start", 0}, {"start_MW", 100}, {"change_MW", -10}}}},
                    {"dispatch", {{"orders", {{{"t_start", 60}, {"setpoint_MW", 95}}}}}}};
  EXPECT_EQ(schema_path(doc), "$.dispatch.orders[0].t_start");
}

TEST(Scenario, SagLossEqualsPlantOutput) {
  const auto res = simulate(load_scenario(WINDVAR_SCENARIOS "/voltage_sag.json"));
  ASSERT_EQ(res.sags.size(), 1u);
  const auto& region = res.poi.region.values;
  const auto i = res.poi.region.index_of(res.sags[0].sag.t);
  const double old_before = res.poi.plants[0].values[i - 1];
  EXPECT_GT(old_before, 0.0);
  EXPECT_DOUBLE_EQ(res.sags[0].lost_mw, old_before);
  EXPECT_DOUBLE_EQ(region[i - 1] - region[i], old_before);
  EXPECT_EQ(res.poi.plants[1].values[i], res.poi.plants[1].values[i - 1]);
}
