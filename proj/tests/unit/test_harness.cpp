#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcx/harness.hpp"

using namespace dcx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("dcx_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(nlohmann::json::parse(R"({"experiment": "fo-census", "seed": 7})"));
  CHECK(c.experiment == "fo-census");
  CHECK(c.seed == 7);
  CHECK(c.bridge_instances == 100);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"sed": 7})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"seed": "seven"})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"experiment": "nope"})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse("[]")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(3) == "3");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3) == "0.333333333333");
}

TEST_CASE("CSV quoting round-trips") {
  const auto dir = scratch("csv");
  CsvTable t({"id", "label"});
  t.add({"1", "[2,1]"});
  t.add({"2", "say \"hi\""});
  CHECK_THROWS(t.add({"3"}));
  t.write(dir / "t.csv");
  CHECK(slurp(dir / "t.csv") == "id,label\n1,\"[2,1]\"\n2,\"say \"\"hi\"\"\"\n");
  const auto back = CsvTable::read(dir / "t.csv");
  CHECK(back.header() == t.header());
  CHECK(back.rows() == t.rows());
  CHECK(t.to_json()[1]["label"] == "say \"hi\"");
}

TEST_CASE("experiments are deterministic") {
  ExperimentConfig c;
  c.experiment = "exact-sizes";
  const auto first = scratch("det_a");
  c.out = first;
  const auto a = run_experiments(c);
  c.out = scratch("det_b");
  run_experiments(c);
  REQUIRE(a.size() == 1);
  CHECK(a[0].passed());
  REQUIRE_FALSE(a[0].files.empty());
  for (const auto& f : a[0].files) {
    const auto rel = fs::relative(f, first);
    CHECK(slurp(f) == slurp(c.out / rel));
  }
  CHECK(fs::exists(c.out / "summary.txt"));
}

TEST_CASE("plots") {
  const auto dir = scratch("plot");
  CsvTable t({"n", "y"});
  t.add({"1", "2"});
  t.add({"2", "3"});
  t.add({"4", "3.5"});
  PlotSpec spec{"n", {"y"}, "demo", false, false, 2.0};
  const auto svg = render_svg(t, spec);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg == render_svg(t, spec));
  t.write(dir / "t.csv");
  emit_plot(dir / "t.csv", spec, dir / "t.svg");
  CHECK(slurp(dir / "t.svg") == svg);

  CsvTable empty({"n", "y"});
  CHECK_THROWS_AS(render_svg(empty, spec), ConfigError);
  empty.write(dir / "empty.csv");
  CHECK_THROWS_AS(emit_plot(dir / "empty.csv", spec, dir / "empty.svg"), ConfigError);
  CHECK_FALSE(fs::exists(dir / "empty.svg"));
  PlotSpec missing{"n", {"z"}, "", false, false, std::nullopt};
  CHECK_THROWS_AS(render_svg(t, missing), ConfigError);
}
