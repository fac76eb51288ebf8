#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "verify/scenarios.hpp"

using verify::ScenarioConfig;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

nlohmann::json strip_timing(nlohmann::json j) {
  for (auto& c : j["checks"]) c.erase("wall_time");
  return j;
}

}  // namespace

TEST(Scenarios, ListHasNineUniqueEntries) {
  const auto& l = verify::list_scenarios();
  ASSERT_EQ(l.size(), 9u);
  for (const auto& s : l) {
    EXPECT_TRUE(verify::is_scenario(s.name));
    EXPECT_FALSE(s.description.empty());
  }
  EXPECT_FALSE(verify::is_scenario("list"));
}

TEST(Config, Validation) {
  ScenarioConfig c;
  c.scenario = "algebra";
  EXPECT_NO_THROW(c.validate());
  c.points = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.points = 10;
  c.lattice = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.lattice = 8;
  c.tolerances["associativity"] = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.tolerances.clear();
  c.scenario = "nope";
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, LoadFromFile) {
  const auto p = write_temp("mfl_cfg_ok.json",
                            R"({"scenario": "derivatives", "seed": 9, "points": 7, "tolerances": {"directional-fd": 0.5}})");
  const auto c = verify::load_config(p);
  EXPECT_EQ(c.scenario, "derivatives");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.points, 7);
  EXPECT_EQ(c.lattice, 8);
  EXPECT_EQ(c.tolerances.at("directional-fd"), 0.5);
  std::filesystem::remove(p);
}

TEST(Config, LoadErrors) {
  EXPECT_THROW((void)verify::load_config("/nonexistent/mfl.json"), verify::IoError);
  const auto bad = write_temp("mfl_cfg_bad.json", "{not json");
  EXPECT_THROW((void)verify::load_config(bad), std::invalid_argument);
  const auto wrong = write_temp("mfl_cfg_wrong.json", R"({"points": "many"})");
  EXPECT_THROW((void)verify::load_config(wrong), std::invalid_argument);
  const auto arr = write_temp("mfl_cfg_arr.json", "[1, 2]");
  EXPECT_THROW((void)verify::load_config(arr), std::invalid_argument);
  for (const auto& p : {bad, wrong, arr}) std::filesystem::remove(p);
}

TEST(Report, SchemaAndDeterminism) {
  ScenarioConfig c;
  c.scenario = "derivatives";
  c.seed = 5;
  c.points = 20;
  const auto a = verify::run_scenario(c).to_json();
  const auto b = verify::run_scenario(c).to_json();
  EXPECT_EQ(strip_timing(a), strip_timing(b));
  for (const char* k : {"config", "checks", "pass", "version"}) EXPECT_TRUE(a.contains(k)) << k;
  EXPECT_EQ(a["config"]["seed"], 5);
  ASSERT_FALSE(a["checks"].empty());
  for (const auto& chk : a["checks"]) {
    for (const char* k : {"name", "max_residual", "tolerance", "pass", "wall_time"}) EXPECT_TRUE(chk.contains(k)) << k;
    EXPECT_GE(chk["wall_time"].get<double>(), 0.0);
  }
  EXPECT_TRUE(a["pass"].get<bool>());
}

TEST(Report, SeedChangesResiduals) {
  ScenarioConfig c;
  c.scenario = "algebra";
  c.seed = 1;
  const auto a = strip_timing(verify::run_scenario(c).to_json());
  c.seed = 2;
  const auto b = strip_timing(verify::run_scenario(c).to_json());
  EXPECT_NE(a["checks"], b["checks"]);
}

TEST(Report, ToleranceOverrideFailsTheCheck) {
  ScenarioConfig c;
  c.scenario = "derivatives";
  c.points = 10;
  c.tolerances["rule-square-numeric"] = 1e-300;
  const auto r = verify::run_scenario(c);
  EXPECT_FALSE(r.pass);
  for (const auto& chk : r.checks) {
    if (chk.name == "rule-square-numeric") {
      EXPECT_EQ(chk.tolerance, 1e-300);
      EXPECT_FALSE(chk.pass);
    } else {
      EXPECT_TRUE(chk.pass) << chk.name;
    }
  }
}

TEST(Report, NanResidualIsSerializedAsNull) {
  verify::Report r;
  r.config.scenario = "algebra";
  verify::CheckRecord rec;
  rec.name = "x";
  rec.max_residual = std::numeric_limits<double>::quiet_NaN();
  rec.error = "boom";
  r.checks.push_back(rec);
  const auto j = r.to_json();
  EXPECT_TRUE(j["checks"][0]["max_residual"].is_null());
  EXPECT_EQ(j["checks"][0]["error"], "boom");
}

TEST(Report, LatticeExportFailureIsIoError) {
  ScenarioConfig c;
  c.scenario = "lattice-maxwell";
  c.lattice = 6;
  c.export_path = "/nonexistent-dir/field.bin";
  EXPECT_THROW((void)verify::run_scenario(c), verify::IoError);
}
