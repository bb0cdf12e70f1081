#include "bicomb/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "bicomb/config.hpp"
#include "bicomb/rng.hpp"
#include "bicomb/runner.hpp"
#include "bicomb/svg.hpp"
#include "bicomb/tight_span.hpp"

namespace bicomb {

namespace {

std::string pick_out(const std::string& flag, const std::string& config_out) {
  if (!flag.empty()) return flag;
  if (!config_out.empty()) return config_out;
  if (const char* env = std::getenv("BICOMB_OUT"))
    if (*env) return env;
  return "out";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_verify(const std::string& config_path, const std::string& out_flag,
               int threads) {
  SuiteConfig cfg = load_config(config_path);
  cfg.out = pick_out(out_flag, cfg.out);
  if (threads >= 0) cfg.threads = threads;
  SuiteOutcome o = run_suite(cfg);
  write_outcome(o, cfg, cfg.out);
  for (const PropertyReport& r : o.reports)
    std::cout << (r.passed ? "pass  " : "FAIL  ") << r.check << " on "
              << r.space << "  n=" << r.n
              << "  max_violation=" << format_double(r.max_violation)
              << "  tol=" << format_double(r.tol) << "\n";
  std::cout << o.reports.size() << " checks, "
            << (o.all_passed ? "all passed" : "FAILURES") << "; reports in "
            << cfg.out << "\n";
  return o.all_passed ? 0 : 1;
}

FiniteMetric read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  std::vector<std::tuple<int, int, double>> edges;
  int n = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line.substr(0, line.find('#')));
    int u = 0, v = 0;
    double w = 0.0;
    if (!(row >> u)) continue;  // blank or comment-only line
    if (!(row >> v >> w) || u < 0 || v < 0)
      throw std::invalid_argument(path + " line " + std::to_string(lineno) +
                                  ": expected 'u v length'");
    std::string extra;
    if (row >> extra)
      throw std::invalid_argument(path + " line " + std::to_string(lineno) +
                                  ": trailing tokens");
    edges.emplace_back(u, v, w);
    n = std::max({n, u + 1, v + 1});
  }
  if (edges.empty())
    throw std::invalid_argument(path + ": no edges");
  return graph_metric(n, edges);
}

int cmd_tightspan(const std::string& graph_path, int samples,
                  std::uint64_t seed, const std::string& out_flag) {
  FiniteMetric m = read_graph(graph_path);
  std::string out = pick_out(out_flag, "");
  std::filesystem::create_directories(out);

  std::ostringstream csv;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      csv << format_double(m.at(i, j)) << (j + 1 < m.n ? "," : "\n");
  write_file(std::filesystem::path(out) / "metric.csv", csv.str());

  double delta = four_point_delta(m);
  Rng cover_rng(seed);
  double cover = covering_radius_estimate(m, cover_rng, samples);

  double diam = 0.0;
  for (double v : m.d) diam = std::max(diam, v);
  nlohmann::json extremal = nlohmann::json::array();
  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, static_cast<std::uint64_t>(s) + 1);
    std::vector<double> g(m.n);
    for (double& v : g) v = rng.uniform() * diam;
    std::vector<double> f = project_extremal(m, make_admissible(m, g));
    extremal.push_back({{"f", f}, {"defect", extremality_defect(m, f)}});
  }

  nlohmann::json report{{"schema", 1},
                        {"n", m.n},
                        {"four_point_delta", delta},
                        {"covering_radius_estimate", cover},
                        {"probes", samples},
                        {"seed", seed},
                        {"metric_csv", "metric.csv"},
                        {"extremal_samples", extremal}};
  if (delta <= 1e-9) {
    TreeRealization tree = realize_tree_metric(m);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : tree.edges) edges.push_back({e.u, e.v, e.len});
    report["tree"] = {{"n_original", tree.n_original},
                      {"n_nodes", tree.n_nodes},
                      {"edges", edges}};
  }
  write_file(std::filesystem::path(out) / "tightspan.json", report.dump(2));

  std::cout << m.n << " vertices, four-point delta "
            << format_double(delta) << ", covering radius estimate "
            << format_double(cover) << "\n";
  if (report.contains("tree"))
    std::cout << "tree metric: realization with "
              << report["tree"]["n_nodes"].get<int>() << " nodes written\n";
  std::cout << "outputs in " << out << "\n";
  return 0;
}

int cmd_plot(const std::vector<std::string>& files,
             const std::string& out_flag) {
  std::string out = pick_out(out_flag, "");
  std::filesystem::create_directories(out);
  for (const std::string& path : files) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open report: " + path);
    nlohmann::json rep;
    try {
      rep = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
      throw std::invalid_argument("malformed report " + path + ": " +
                                  e.what());
    }
    auto plots = report_plots(rep);
    std::string stem = std::filesystem::path(path).stem().string();
    for (const auto& [suffix, svg] : plots) {
      std::filesystem::path file =
          std::filesystem::path(out) / (stem + "-" + suffix + ".svg");
      write_file(file, svg);
      std::cout << "wrote " << file.string() << "\n";
    }
    if (plots.empty()) std::cout << path << ": nothing to plot\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"sampled property checks for bicombed metric spaces"};
  app.require_subcommand(1);

  std::string config_path, out_flag, graph_path;
  int threads = -1;
  int samples = 32;
  std::uint64_t seed = 1;
  std::vector<std::string> report_files;

  CLI::App* verify = app.add_subcommand(
      "verify", "run the checks requested by a config file");
  verify->add_option("config", config_path, "config file")->required();
  verify->add_option("--out", out_flag,
                     "output directory (default: config, then $BICOMB_OUT)");
  verify->add_option("--threads", threads,
                     "worker threads per sweep (0 = hardware)");

  CLI::App* tightspan = app.add_subcommand(
      "tightspan", "injective-hull analysis of a weighted graph");
  tightspan->add_option("graph", graph_path, "edge list: 'u v length' lines")
      ->required();
  tightspan->add_option("--samples", samples, "extremal probes")
      ->check(CLI::PositiveNumber);
  tightspan->add_option("--seed", seed, "probe seed");
  tightspan->add_option("--out", out_flag, "output directory");

  CLI::App* plot =
      app.add_subcommand("plot", "render report payloads as svg");
  plot->add_option("reports", report_files, "report json files")->required();
  plot->add_option("--out", out_flag, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(config_path, out_flag, threads);
    if (tightspan->parsed())
      return cmd_tightspan(graph_path, samples, seed, out_flag);
    if (plot->parsed()) return cmd_plot(report_files, out_flag);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace bicomb
