#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "bicomb/cli.hpp"
#include "bicomb/config.hpp"
#include "bicomb/registry.hpp"
#include "bicomb/report.hpp"
#include "bicomb/runner.hpp"
#include "bicomb/svg.hpp"

using namespace bicomb;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("bicomb-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"bicomb"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

const char* kSmokeConfig = R"(# two quick checks
[suite]
seed = 7
threads = 2

[check]
check = convexity
space = euclidean2
n = 120
keep_values = true

[check]
check = metric
space = tree-star3
n = 100
)";

}  // namespace

TEST_CASE("config parsing: sections, defaults, comments") {
  SuiteConfig cfg = parse_config(kSmokeConfig);
  CHECK(cfg.seed == 7);
  CHECK(cfg.threads == 2);
  REQUIRE(cfg.checks.size() == 2);
  CHECK(cfg.checks[0].check == "convexity");
  CHECK(cfg.checks[0].space == "euclidean2");
  CHECK(cfg.checks[0].n == 120);
  CHECK(cfg.checks[0].keep_values);
  CHECK(cfg.checks[0].seed == 7);  // inherited from the suite
  CHECK(cfg.checks[1].check == "metric");
  CHECK_FALSE(cfg.checks[1].keep_values);
  CHECK(cfg.raw == kSmokeConfig);
}

TEST_CASE("config parsing: per-check seed override wins") {
  SuiteConfig cfg = parse_config("[suite]\nseed = 3\n[check]\ncheck = metric\nspace = h2\nseed = 11\n");
  CHECK(cfg.checks[0].seed == 11);
}

TEST_CASE("config errors carry line numbers and key names") {
  try {
    parse_config("[suite]\nseed = 1\n[check]\ncheck = metric\nspace = h2\nbogus_key = 3\n");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("bogus_key") != std::string::npos);
    CHECK(msg.find("6") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[nonsense]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[check]\nspace = h2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[suite]\nthreads = pony\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[check]\ncheck = metric\nspace = h2\nn = -4\n"),
                  std::invalid_argument);
}

TEST_CASE("runner rejects unknown names") {
  CheckSpec spec;
  spec.check = "no-such-check";
  spec.space = "euclidean2";
  SuiteConfig suite;
  CHECK_THROWS_AS(run_spec(spec, suite), std::invalid_argument);
  spec.check = "metric";
  spec.space = "no-such-space";
  CHECK_THROWS_AS(run_spec(spec, suite), std::invalid_argument);
}

TEST_CASE("suite outcome is byte-identical across thread counts") {
  SuiteConfig cfg = parse_config(kSmokeConfig);
  cfg.threads = 1;
  SuiteOutcome a = run_suite(cfg);
  cfg.threads = 4;
  SuiteOutcome b = run_suite(cfg);
  CHECK(a.all_passed);
  CHECK(b.all_passed);
  CHECK(a.csv == b.csv);
  REQUIRE(a.reports.size() == b.reports.size());
  for (std::size_t i = 0; i < a.reports.size(); ++i)
    CHECK(a.reports[i].to_json().dump() == b.reports[i].to_json().dump());
}

TEST_CASE("csv summary columns are stable") {
  SuiteConfig cfg = parse_config(kSmokeConfig);
  SuiteOutcome o = run_suite(cfg);
  CHECK(o.csv.rfind("check,space,mode,seed,n,tol,max_violation,passed\n", 0) == 0);
  CHECK(o.csv.find("convexity,euclidean2,exact,7,120,") != std::string::npos);
}

TEST_CASE("manifest round-trips: embedded config reproduces the summary") {
  fs::path dir = fresh_dir("manifest");
  SuiteConfig cfg = parse_config(kSmokeConfig);
  SuiteOutcome o = run_suite(cfg);
  nlohmann::json manifest = write_outcome(o, cfg, dir.string());
  CHECK(manifest["schema"] == 1);
  CHECK(manifest["all_passed"] == true);
  for (const auto& ref : manifest["reports"]) {
    fs::path f = dir / ref["file"].get<std::string>();
    CHECK(fs::exists(f));
    PropertyReport parsed = PropertyReport::from_json(nlohmann::json::parse(slurp(f)));
    CHECK(parsed.check == ref["check"].get<std::string>());
  }
  SuiteConfig again = parse_config(manifest["config_text"].get<std::string>());
  SuiteOutcome o2 = run_suite(again);
  CHECK(o2.csv == slurp(dir / "summary.csv"));
}

TEST_CASE("report json round-trip preserves every field") {
  SuiteConfig cfg = parse_config(kSmokeConfig);
  PropertyReport rep = run_spec(cfg.checks[0], cfg);
  PropertyReport back = PropertyReport::from_json(rep.to_json());
  CHECK(back.check == rep.check);
  CHECK(back.space == rep.space);
  CHECK(back.mode == rep.mode);
  CHECK(back.seed == rep.seed);
  CHECK(back.n == rep.n);
  CHECK(back.tol == rep.tol);
  CHECK(back.max_violation == rep.max_violation);
  CHECK(back.passed == rep.passed);
  CHECK(back.details.dump() == rep.details.dump());
}

TEST_CASE("double formatting survives a json round-trip") {
  for (double v : {0.1, 1e-12, 3.0057071717139604, -2.5e7, 0.0})
    CHECK(nlohmann::json::parse(format_double(v)).get<double>() == v);
}

TEST_CASE("svg rendering: histogram, curve, and report extraction") {
  nlohmann::json hist{{"lo", -1.0}, {"hi", 1.0}, {"counts", {3, 0, 7, 2}}};
  std::string h = svg_histogram(hist, "spread");
  CHECK(h.find("<svg") == 0);
  CHECK(h.find("spread") != std::string::npos);
  CHECK(h.find("<rect") != std::string::npos);

  CurveSpec spec;
  spec.points = {{0.0, 1.0}, {1.0, 0.5}, {2.0, 0.8}};
  spec.title = "residuals";
  spec.hline = 0.9;
  std::string c = svg_curve(spec);
  CHECK(c.find("polyline") != std::string::npos);
  CHECK(c.find("stroke-dasharray") != std::string::npos);
  CHECK_THROWS_AS(svg_curve(CurveSpec{}), std::invalid_argument);
  CHECK_THROWS_AS(svg_histogram(nlohmann::json::object(), "x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(report_plots(nlohmann::json::array()), std::invalid_argument);

  SuiteConfig cfg = parse_config(kSmokeConfig);
  PropertyReport rep = run_spec(cfg.checks[0], cfg);
  auto plots = report_plots(rep.to_json());
  REQUIRE(plots.size() == 1);
  CHECK(plots[0].first == "histogram");
}

TEST_CASE("cli: verify, tightspan, and plot end to end") {
  fs::path dir = fresh_dir("cli");
  fs::path cfgfile = dir / "suite.ini";
  std::ofstream(cfgfile) << kSmokeConfig;
  fs::path out = dir / "reports";
  CHECK(cli({"verify", cfgfile.string(), "--out", out.string()}) == 0);
  CHECK(fs::exists(out / "summary.csv"));
  CHECK(fs::exists(out / "manifest.json"));

  // a failing check exits 1 and still writes reports
  fs::path badcfg = dir / "bad.ini";
  std::ofstream(badcfg) << "[check]\ncheck = geodesic\nspace = broken-bicombe\nn = 50\n";
  fs::path out2 = dir / "reports2";
  CHECK(cli({"verify", badcfg.string(), "--out", out2.string()}) == 1);
  CHECK(fs::exists(out2 / "summary.csv"));

  // usage errors exit 2
  CHECK(cli({"verify", (dir / "missing.ini").string()}) == 2);
  CHECK(cli({}) == 2);
  CHECK(cli({"frobnicate"}) == 2);

  fs::path graph = dir / "tripod.txt";
  std::ofstream(graph) << "0 3 1\n1 3 2\n2 3 3\n";
  fs::path tsout = dir / "ts";
  CHECK(cli({"tightspan", graph.string(), "--samples", "16", "--out", tsout.string()}) == 0);
  nlohmann::json ts = nlohmann::json::parse(slurp(tsout / "tightspan.json"));
  CHECK(ts["four_point_delta"].get<double>() < 1e-12);
  CHECK(ts.contains("tree"));
  CHECK(fs::exists(tsout / "metric.csv"));

  fs::path empty = dir / "empty.txt";
  std::ofstream(empty) << "";
  CHECK(cli({"tightspan", empty.string()}) == 2);
  fs::path disc = dir / "disconnected.txt";
  std::ofstream(disc) << "0 1 1\n2 3 1\n";
  CHECK(cli({"tightspan", disc.string(), "--out", (dir / "d").string()}) == 2);

  // plot the verify output
  fs::path plots = dir / "plots";
  std::string report1;
  for (const auto& entry : fs::directory_iterator(out))
    if (entry.path().filename().string().rfind("001-", 0) == 0)
      report1 = entry.path().string();
  REQUIRE(!report1.empty());
  CHECK(cli({"plot", report1, "--out", plots.string()}) == 0);
  bool any_svg = false;
  for (const auto& entry : fs::directory_iterator(plots))
    if (entry.path().extension() == ".svg") any_svg = true;
  CHECK(any_svg);

  fs::path mal = dir / "mal.json";
  std::ofstream(mal) << "{ not json";
  CHECK(cli({"plot", mal.string(), "--out", plots.string()}) == 2);
  CHECK(cli({"plot"}) == 2);
}
