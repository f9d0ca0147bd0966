#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stefan3/fieldmap.hpp"
#include "stefan3/json_io.hpp"
#include "support.hpp"

using namespace stefan3;
using namespace stefan3::testing;

namespace {

const char* kFigure1 = R"({
  "k1": 0.2, "k2": 0.2, "k3": 0.2, "c1": 2, "c2": 2, "c3": 2, "rho": 770,
  "l1": 160, "l2": 150, "B": 328, "C": 324, "D": 320,
  "boundary": {"type": "robin", "h0": 100, "A_inf": 334}
})";

}  // namespace

TEST(Config, ParsesAndBuildsContext) {
  const Config c = parse_config(std::string_view(kFigure1));
  EXPECT_EQ(c.kind, BoundaryKind::robin);
  EXPECT_EQ(c.props.rho, 770);
  EXPECT_EQ(*c.a_inf, 334);
  const auto s = solve(c.context());
  EXPECT_NEAR(s.coef1, 0.17306860266464350877, 1e-12);
}

TEST(Config, RoundTripsThroughJson) {
  const Config c = parse_config(std::string_view(kFigure1));
  const Config back = parse_config(to_json(c));
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config(std::string_view("{not json")), ValidationError);
  EXPECT_THROW(parse_config(std::string_view(R"({"k1": 1})")), ValidationError);
  Json j = Json::parse(kFigure1);
  j["boundary"]["type"] = "cauchy";
  EXPECT_THROW(parse_config(j), ValidationError);
  j = Json::parse(kFigure1);
  j["rho"] = "heavy";
  EXPECT_THROW(parse_config(j), ValidationError);
  j = Json::parse(kFigure1);
  j["boundary"].erase("A_inf");
  const Config c = parse_config(j);
  try {
    c.context();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations().at(0).code, codes::kMissingAInf);
  }
  EXPECT_NO_THROW(c.material_context());
  EXPECT_THROW(load_config("/nonexistent/cfg.json"), IoError);
}

TEST(Json, SolutionHasFullPrecision) {
  const auto s = solve(figure1());
  const Json j = Json::parse(to_json(s).dump());
  EXPECT_EQ(j["coef1"].get<double>(), s.coef1);
  EXPECT_EQ(j["coef2"].get<double>(), s.coef2);
  EXPECT_EQ(j["regime"], "three_phase");
  EXPECT_EQ(j["kind"], "robin");
  EXPECT_EQ(j["thresholds"]["h2"].get<double>(), *s.thresholds.h2);
  EXPECT_EQ(j["input"]["boundary"]["A_inf"].get<double>(), 334.0);
}

TEST(Json, ThresholdsOmitConvectiveFieldsWithoutBulkTemperature) {
  const Json j = to_json(thresholds(figure3()));
  EXPECT_FALSE(j.contains("h1"));
  EXPECT_FALSE(j.contains("h2"));
  EXPECT_TRUE(j.contains("q1"));
  EXPECT_TRUE(j.contains("q2"));
}

TEST(Json, ReportsSerialize) {
  const auto rep = equivalence_report(solve(figure2()), BoundaryKind::neumann);
  const Json j = to_json(rep);
  EXPECT_EQ(j["datum_name"], "q0");
  EXPECT_EQ(j["hypotheses"][0]["name"], "q0(A) > q2");
  EXPECT_TRUE(j["hypotheses"][0]["holds"].get<bool>());
  const Json v = to_json(verify(solve(figure2())));
  EXPECT_TRUE(v["passed"].get<bool>());
  EXPECT_TRUE(v["failures"].empty());
}

TEST(FieldMap, GridLayoutAndValues) {
  const auto s = solve(figure2());
  const auto g = field_map(s, 0.01, 10.0, 5, 4);
  EXPECT_EQ(g.x.front(), 0.0);
  EXPECT_EQ(g.x.back(), 0.01);
  EXPECT_EQ(g.t.front(), 2.5);
  EXPECT_EQ(g.t.back(), 10.0);
  EXPECT_EQ(g.at(0, 0), 331.0);
  for (double v : g.values) {
    EXPECT_GE(v, 320.0);
    EXPECT_LE(v, 331.0);
  }
  EXPECT_THROW(field_map(s, 0.01, 10.0, 1, 4), ValidationError);
}

TEST(FieldMap, CsvFormatAndDeterminism) {
  const auto s = solve(figure1());
  const auto g = field_map(s, 0.02, 4.0, 3, 2);
  const std::string csv = field_csv(g);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,t,temperature");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 2);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv, field_csv(field_map(s, 0.02, 4.0, 3, 2)));
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  EXPECT_EQ(line.substr(0, 6), "0,2,33");
  const std::string fronts = fronts_csv(g);
  EXPECT_EQ(fronts.substr(0, fronts.find('\n')), "t,x2,x1");
  EXPECT_EQ(fronts_path("out/fig.csv"), "out/fig.fronts.csv");
  EXPECT_EQ(fronts_path("fig"), "fig.fronts.csv");
}

TEST(FieldMap, WritesFilesAndReportsIoErrors) {
  const auto s = solve(figure3());
  const auto g = field_map(s, 0.01, 1.0, 4, 3);
  const auto dir = std::filesystem::temp_directory_path() / "stefan3_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "f.csv").string();
  const std::string fp = write_field_map(g, path);
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_TRUE(std::filesystem::exists(fp));
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), field_csv(g));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(write_field_map(g, "/nonexistent-dir/f.csv"), IoError);
}
