// bfsbias command-line front end.
//
//   generate    power-law configuration-model graph -> edge-list file
//   sample      BFS tree from one root -> tree edge list + degree histogram
//   fit         exponent estimates for an edge list or histogram -> JSON
//   experiment  degree-stratified BFS experiment -> report.json + CCDF CSVs
//   validate    analytic-claim validators -> validation.json (exit 0 iff the
//               rigorous bound sweeps pass)

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfsbias/bfs_tree.hpp"
#include "bfsbias/config_model.hpp"
#include "bfsbias/degree_distribution.hpp"
#include "bfsbias/edge_list.hpp"
#include "bfsbias/experiment.hpp"
#include "bfsbias/graph.hpp"
#include "bfsbias/stats.hpp"

namespace {

using nlohmann::json;

std::map<std::int64_t, std::size_t> read_histogram_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::map<std::int64_t, std::size_t> hist;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.rfind("degree", 0) == 0) continue;  // header
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected \"degree,count\"");
    const std::int64_t degree = std::stoll(line.substr(0, comma));
    const std::int64_t count = std::stoll(line.substr(comma + 1));
    if (degree < 0 || count < 0)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": negative degree or count");
    if (count > 0) hist[degree] += static_cast<std::size_t>(count);
  }
  if (hist.empty()) throw std::runtime_error(path.string() + ": no counts found");
  return hist;
}

json fit_outcome_json(const char* method, const std::function<bfsbias::PowerLawFit()>& f) {
  json j;
  j["method"] = method;
  try {
    const bfsbias::PowerLawFit fit = f();
    j["gamma_hat"] = fit.gamma_hat;
    j["k_min"] = fit.k_min;
    j["sample_size"] = fit.sample_size;
    if (fit.r_squared) j["r_squared"] = *fit.r_squared;
    if (fit.standard_error) j["standard_error"] = *fit.standard_error;
  } catch (const std::exception& e) {
    j["error"] = e.what();
  }
  return j;
}

int run_generate(double gamma, std::size_t n, std::int64_t k_max, std::uint64_t seed,
                 const std::filesystem::path& out) {
  if (k_max == 0) k_max = static_cast<std::int64_t>(n) - 1;
  const bfsbias::DegreeDistribution dist = bfsbias::DegreeDistribution::power_law(gamma, k_max);
  const std::vector<std::int64_t> degrees = bfsbias::sample_degree_sequence(dist, n, seed);
  bfsbias::Graph g = bfsbias::configuration_model(degrees, seed, /*simplify=*/true);
  bfsbias::write_edge_list(g, out);
  std::cout << "wrote " << g.size() << " edges on " << g.order() << " vertices to "
            << out.string() << "\n";
  return 0;
}

int run_sample(const std::filesystem::path& edges, std::int64_t root_external,
               std::uint64_t seed, const std::filesystem::path& tree_out,
               const std::filesystem::path& hist_out) {
  const bfsbias::EdgeListResult loaded = bfsbias::read_edge_list(edges);
  const auto& ids = loaded.external_ids;
  const auto it = std::lower_bound(ids.begin(), ids.end(), root_external);
  if (it == ids.end() || *it != root_external)
    throw std::runtime_error("root id " + std::to_string(root_external) +
                             " does not appear in " + edges.string());
  const auto root = static_cast<bfsbias::VertexId>(it - ids.begin());

  const bfsbias::SampledTree tree = bfsbias::bfs_tree(loaded.graph, root, seed);

  // Tree edges as "parent child" (external ids), children in discovery order.
  std::vector<bfsbias::VertexId> discovered;
  for (bfsbias::VertexId v = 0; v < loaded.graph.order(); ++v)
    if (tree.discovery_rank[v] > 0) discovered.push_back(v);
  std::sort(discovered.begin(), discovered.end(),
            [&](bfsbias::VertexId a, bfsbias::VertexId b) {
              return tree.discovery_rank[a] < tree.discovery_rank[b];
            });
  std::ofstream tout(tree_out);
  if (!tout) throw std::runtime_error("cannot open " + tree_out.string());
  tout << "# BFS tree, root " << root_external << ", seed " << seed << "\n";
  for (const bfsbias::VertexId v : discovered)
    tout << ids[static_cast<std::size_t>(tree.parent[v])] << " " << ids[v] << "\n";
  if (!tout) throw std::runtime_error("failed writing " + tree_out.string());

  const std::map<std::int64_t, std::size_t> hist = bfsbias::tree_degree_histogram(tree);
  std::ofstream hout(hist_out);
  if (!hout) throw std::runtime_error("cannot open " + hist_out.string());
  hout << "degree,count\n";
  for (const auto& [degree, count] : hist) hout << degree << "," << count << "\n";
  if (!hout) throw std::runtime_error("failed writing " + hist_out.string());

  std::cout << "covered " << tree.covered << " of " << loaded.graph.order()
            << " vertices; tree written to " << tree_out.string() << ", histogram to "
            << hist_out.string() << "\n";
  return 0;
}

int run_fit(const std::optional<std::filesystem::path>& edges,
            const std::optional<std::filesystem::path>& histogram, std::int64_t k_min,
            const std::vector<std::string>& methods) {
  std::map<std::int64_t, std::size_t> hist;
  json source;
  if (edges) {
    const bfsbias::EdgeListResult loaded = bfsbias::read_edge_list(*edges);
    hist = loaded.graph.degree_histogram();
    source = {{"edge_list", edges->string()},
              {"vertices", loaded.graph.order()},
              {"edges", loaded.graph.size()}};
  } else {
    hist = read_histogram_csv(*histogram);
    std::size_t total = 0;
    for (const auto& [degree, count] : hist) total += count;
    source = {{"histogram", histogram->string()}, {"samples", total}};
  }
  const bfsbias::Ccdf ccdf = bfsbias::ccdf_from_histogram(hist);

  json out;
  out["source"] = source;
  out["fits"] = json::array();
  for (const std::string& m : methods) {
    if (m == "regression")
      out["fits"].push_back(fit_outcome_json(
          "regression", [&] { return bfsbias::fit_gamma_regression(ccdf, k_min); }));
    else
      out["fits"].push_back(fit_outcome_json(
          "mle", [&] { return bfsbias::fit_gamma_mle_histogram(hist, k_min); }));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

bfsbias::ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& path,
                                         const std::optional<std::uint64_t>& seed,
                                         const std::optional<int>& threads) {
  bfsbias::ExperimentConfig cfg =
      path ? bfsbias::load_config(*path) : bfsbias::ExperimentConfig{};
  if (seed) cfg.seed = *seed;
  if (threads) cfg.threads = *threads;
  return cfg;
}

int run_experiment_cmd(const bfsbias::ExperimentConfig& cfg,
                       const std::filesystem::path& out_dir) {
  const bfsbias::ExperimentReport report = bfsbias::run_experiment(cfg);
  bfsbias::write_report_files(report, out_dir);
  std::cout << "report written to " << (out_dir / "report.json").string() << "\n";
  for (const auto& g : report.groups) {
    std::cout << "group " << g.band.label() << ": population " << g.population << ", "
              << g.roots.size() << " roots";
    if (g.regression.fit)
      std::cout << ", gamma_hat(regression) " << g.regression.fit->gamma_hat;
    if (g.mle.fit) std::cout << ", gamma_hat(mle) " << g.mle.fit->gamma_hat;
    std::cout << "\n";
  }
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

int run_validate_cmd(const bfsbias::ExperimentConfig& cfg,
                     const std::filesystem::path& out_dir) {
  const bfsbias::ValidationReport report = bfsbias::run_validation(cfg);
  bfsbias::write_validation_file(report, out_dir);
  std::cout << "validation written to " << (out_dir / "validation.json").string() << "\n";
  std::cout << "bound sweep: " << report.envelopes.checks << " checks, "
            << report.envelopes.violations.size() << " violations -> "
            << (report.pass() ? "PASS" : "FAIL") << "\n";
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BFS-tree sampling bias toolkit for power-law graphs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a configuration-model edge list");
  double gen_gamma = 2.5;
  std::size_t gen_n = 100000;
  std::int64_t gen_k_max = 0;
  std::uint64_t gen_seed = 1;
  std::filesystem::path gen_out;
  gen->add_option("--gamma", gen_gamma, "power-law exponent (> 1)")->capture_default_str();
  gen->add_option("--n", gen_n, "vertex count")->capture_default_str();
  gen->add_option("--k-max", gen_k_max, "degree cutoff (0 = n-1)")->capture_default_str();
  gen->add_option("--seed", gen_seed, "master seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output edge-list path")->required();

  // sample
  auto* smp = app.add_subcommand("sample", "write one BFS tree and its degree histogram");
  std::filesystem::path smp_edges, smp_tree_out, smp_hist_out;
  std::int64_t smp_root = 0;
  std::uint64_t smp_seed = 1;
  smp->add_option("--edges", smp_edges, "input edge-list path")->required();
  smp->add_option("--root", smp_root, "root vertex (external id)")->required();
  smp->add_option("--seed", smp_seed, "master seed")->capture_default_str();
  smp->add_option("--out-tree", smp_tree_out, "output tree edge-list path")->required();
  smp->add_option("--out-histogram", smp_hist_out, "output histogram CSV path")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "estimate the degree-tail exponent");
  std::optional<std::filesystem::path> fit_edges, fit_hist;
  std::int64_t fit_k_min = 10;
  std::vector<std::string> fit_methods = {"regression", "mle"};
  auto* fit_edges_opt = fit->add_option("--edges", fit_edges, "edge-list input");
  auto* fit_hist_opt = fit->add_option("--histogram", fit_hist, "\"degree,count\" CSV input");
  fit_edges_opt->excludes(fit_hist_opt);
  fit->add_option("--k-min", fit_k_min, "tail cutoff")->capture_default_str();
  fit->add_option("--method", fit_methods, "regression and/or mle")
      ->check(CLI::IsMember({"regression", "mle"}))
      ->capture_default_str();

  // experiment / validate share config-ish flags
  auto* exp = app.add_subcommand("experiment", "run the degree-stratified BFS experiment");
  auto* val = app.add_subcommand("validate", "run the analytic-claim validators");
  std::optional<std::filesystem::path> exp_config, val_config;
  std::filesystem::path exp_out = ".", val_out = ".";
  std::optional<std::uint64_t> exp_seed, val_seed;
  std::optional<int> exp_threads, val_threads;
  exp->add_option("--config", exp_config, "experiment config JSON");
  exp->add_option("--out", exp_out, "output directory")->capture_default_str();
  exp->add_option("--seed", exp_seed, "override the config seed");
  exp->add_option("--threads", exp_threads, "worker threads (0 = auto)");
  val->add_option("--config", val_config, "experiment config JSON");
  val->add_option("--out", val_out, "output directory")->capture_default_str();
  val->add_option("--seed", val_seed, "override the config seed");
  val->add_option("--threads", val_threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_generate(gen_gamma, gen_n, gen_k_max, gen_seed, gen_out);
    if (smp->parsed())
      return run_sample(smp_edges, smp_root, smp_seed, smp_tree_out, smp_hist_out);
    if (fit->parsed()) {
      if (!fit_edges && !fit_hist)
        throw CLI::RequiredError("--edges or --histogram");
      return run_fit(fit_edges, fit_hist, fit_k_min, fit_methods);
    }
    if (exp->parsed())
      return run_experiment_cmd(resolve_config(exp_config, exp_seed, exp_threads), exp_out);
    if (val->parsed())
      return run_validate_cmd(resolve_config(val_config, val_seed, val_threads), val_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
