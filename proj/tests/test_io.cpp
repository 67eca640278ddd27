#include "whipchain/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "whipchain/svg.hpp"

using namespace whipchain;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::path(testing::TempDir()) / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(IoTest, FormatCsvFrozenLayout) {
  CsvTable t;
  t.headers = {"a", "b"};
  t.columns = {{1.0, 2.0}, {0.5, 0.25}};
  EXPECT_EQ(format_csv(t), "a,b\n1,0.5\n2,0.25\n");
}

TEST(IoTest, FormatCsvRoundTripsEveryBit) {
  const double vals[] = {1.0 / 3.0, M_PI, -2.2250738585072014e-308, 1e300};
  CsvTable t;
  t.headers = {"v"};
  t.columns = {{vals[0], vals[1], vals[2], vals[3]}};
  const std::string csv = format_csv(t);
  const char* p = csv.c_str() + 2;  // skip "v\n"
  for (double expect : vals) {
    char* end = nullptr;
    EXPECT_EQ(std::strtod(p, &end), expect);
    p = end + 1;
  }
}

TEST(IoTest, FormatCsvValidation) {
  CsvTable t;
  EXPECT_THROW(format_csv(t), validation_error);
  t.headers = {"a", "b"};
  t.columns = {{1.0}};
  EXPECT_THROW(format_csv(t), validation_error);
  t.columns = {{1.0}, {1.0, 2.0}};
  EXPECT_THROW(format_csv(t), validation_error);
}

TEST(IoTest, ChainJsonRoundTrip) {
  ChainState s;
  s.n = 3;
  s.theta = {0.1, -0.7, 2.0};
  s.omega = {1.0, 0.0, -0.5};
  s.g = 9.8;
  const ChainState back = chain_from_json(chain_to_json(s));
  EXPECT_EQ(back.n, s.n);
  EXPECT_EQ(back.theta, s.theta);
  EXPECT_EQ(back.omega, s.omega);
  EXPECT_EQ(back.g, s.g);
}

TEST(IoTest, ChainJsonDefaults) {
  const ChainState s = chain_from_json(json{{"n", 2}, {"theta", {0.1, 0.2}}});
  EXPECT_EQ(s.omega, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(s.g, 0.0);
}

TEST(IoTest, ChainJsonRejectsBadDocuments) {
  EXPECT_THROW(chain_from_json(json::array()), validation_error);
  EXPECT_THROW(chain_from_json(json{{"n", 2}}), validation_error);
  EXPECT_THROW(chain_from_json(json{{"n", 2}, {"theta", {0.1}}}), validation_error);
  EXPECT_THROW(
      chain_from_json(json{{"n", 2}, {"theta", {0.1, 0.2}}, {"omega", {0.0}}}),
      validation_error);
}

TEST(IoTest, ProfileFromJsonVariants) {
  const ThetaProfile flat = profile_from_json(json{{"type", "straight"}, {"angle", 0.3}});
  EXPECT_DOUBLE_EQ(flat(0.25), 0.3);

  const ThetaProfile wave = profile_from_json(json{{"type", "sine"}, {"amplitude", 2.0}});
  EXPECT_NEAR(wave(0.5), 2.0, 1e-15);
  EXPECT_NEAR(wave.smooth_d(0.0), 2.0 * M_PI, 1e-15);

  const json kinked{{"type", "straight"},
                    {"angle", 0.0},
                    {"kinks", json::array({json{{"s_o", 0.5}, {"alpha", 1.0}}})}};
  const ThetaProfile k = profile_from_json(kinked);
  ASSERT_EQ(k.kinks.size(), 1u);
  EXPECT_NEAR(k(0.75) - k(0.25), 1.0, 1e-15);

  EXPECT_THROW(profile_from_json(json{{"type", "spline"}}), validation_error);
  EXPECT_THROW(profile_from_json(json{{"type", "custom"}}), validation_error);
  const json bad_kink{{"type", "straight"},
                      {"kinks", json::array({json{{"s_o", 1.5}, {"alpha", 1.0}}})}};
  EXPECT_THROW(profile_from_json(bad_kink), validation_error);
}

TEST(IoTest, KappaFromJsonVariants) {
  const auto c = kappa_from_json(json{{"type", "constant"}, {"value", 1.5}});
  EXPECT_DOUBLE_EQ(c(0.2), 1.5);

  const json prof{{"type", "profile"},
                  {"profile", json{{"type", "sine"}, {"amplitude", 0.5}}}};
  const auto k = kappa_from_json(prof);
  EXPECT_NEAR(k(0.0), 0.5 * M_PI, 1e-15);

  const json kinked{{"type", "profile"},
                    {"profile",
                     json{{"type", "straight"},
                          {"kinks", json::array({json{{"s_o", 0.5}, {"alpha", 1.0}}})}}}};
  EXPECT_THROW(kappa_from_json(kinked), validation_error);
  EXPECT_THROW(kappa_from_json(json{{"type", "table"}}), validation_error);
}

TEST(IoTest, ContentFingerprintKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
}

TEST(IoTest, LoadJsonErrors) {
  EXPECT_THROW(load_json("/nonexistent/nowhere.json"), validation_error);
  const fs::path dir = fresh_dir("whipchain_io_badjson");
  write_text(dir / "broken.json", "{\"n\": ");
  EXPECT_THROW(load_json(dir / "broken.json"), validation_error);
}

TEST(IoTest, ManifestListsEveryArtifactWithChecksum) {
  const fs::path dir = fresh_dir("whipchain_io_manifest");
  RunManifest manifest(dir, json{{"seed", 7}});
  manifest.write_file("one.csv", "x\n1\n");
  manifest.write_file("two.txt", "hello");
  manifest.finish();

  EXPECT_EQ(slurp(dir / "one.csv"), "x\n1\n");
  EXPECT_EQ(slurp(dir / "two.txt"), "hello");

  const json doc = load_json(dir / "manifest.json");
  EXPECT_EQ(doc.at("config").at("seed"), 7);
  const json& arts = doc.at("artifacts");
  ASSERT_EQ(arts.size(), 2u);
  EXPECT_EQ(arts[0].at("file"), "one.csv");
  EXPECT_EQ(arts[1].at("bytes"), 5u);
  char expect[20];
  std::snprintf(expect, sizeof expect, "%016llx",
                static_cast<unsigned long long>(fnv1a64("hello")));
  EXPECT_EQ(arts[1].at("fnv1a64"), std::string(expect));
}

TEST(IoTest, LineChartEmitsSelfContainedSvg) {
  Series s;
  s.label = "energy";
  s.x = {0.0, 1.0, 2.0};
  s.y = {1.0, 0.5, 0.25};
  ChartOptions opt;
  opt.title = "drift";
  const std::string svg = line_chart({s}, opt);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("energy"), std::string::npos);
  EXPECT_NE(svg.find("drift"), std::string::npos);
  EXPECT_NE(svg.find("polyline"), std::string::npos);
}

TEST(IoTest, LineChartValidation) {
  EXPECT_THROW(line_chart({}, {}), validation_error);

  Series s;
  s.label = "bad";
  s.x = {1.0, 2.0};
  s.y = {1.0};
  EXPECT_THROW(line_chart({s}, {}), validation_error);

  s.y = {1.0, std::numeric_limits<double>::infinity()};
  EXPECT_THROW(line_chart({s}, {}), validation_error);

  s.y = {1.0, -1.0};
  ChartOptions logy;
  logy.log_y = true;
  EXPECT_THROW(line_chart({s}, logy), validation_error);
  ChartOptions plain;
  EXPECT_NO_THROW(line_chart({s}, plain));
}

}  // namespace
