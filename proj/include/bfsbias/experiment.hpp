// experiment.hpp -- end-to-end runs: build or load a graph, sample BFS trees
// from degree-stratified root groups, fit exponents, and emit report /
// validation files.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfsbias/graph.hpp"
#include "bfsbias/stats.hpp"
#include "bfsbias/validators.hpp"

namespace bfsbias {

// Library version, embedded in every report for provenance.
inline constexpr const char* kVersion = "1.0.0";

struct SyntheticSource {
  double gamma = 2.5;
  std::size_t n = 100000;
  std::int64_t k_max = 0;  // 0 means n - 1
};

struct FitSpec {
  std::int64_t k_min = 10;
  bool use_regression = true;
  bool use_mle = true;
};

struct ValidationSpec {
  std::size_t replicates = 200;  // BFS roots for the empirical validators
  std::size_t bins = 20;         // time-index bins for the visibility curve
  std::uint64_t min_observations = 100;
  std::int64_t concentration_min_degree = 18;
  std::vector<double> envelope_gammas = {2.1, 2.3, 2.5, 2.7, 2.9};
  std::size_t envelope_grid = 100;
  std::int64_t envelope_k_max = 1000000;
};

// Exactly one of synthetic / edge_list is set.
struct ExperimentConfig {
  std::optional<SyntheticSource> synthetic = SyntheticSource{};
  std::optional<std::filesystem::path> edge_list;
  std::vector<DegreeBand> groups;
  std::size_t roots_per_group = 10;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = all available
  FitSpec fit;
  ValidationSpec validation;

  static std::vector<DegreeBand> default_groups();  // [1,35], [36,70], [71,inf)
  ExperimentConfig();
};

// JSON round trip. parse accepts partial documents (absent fields keep their
// defaults) and reports unknown or ill-typed fields by dotted path.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& c);

// A fit that may have failed; error carries the reason when it did.
struct FitOutcome {
  std::optional<PowerLawFit> fit;
  std::optional<std::string> error;
};

struct GroupReport {
  DegreeBand band;
  std::size_t population = 0;       // band size inside the giant component
  std::vector<VertexId> roots;      // giant-internal ids, selection order
  std::vector<std::int64_t> root_source_ids;  // pre-extraction (or external) ids
  std::vector<std::size_t> covered;           // vertices reached, per tree
  Ccdf averaged_ccdf;               // mean of the per-tree tree-degree CCDFs
  FitOutcome regression;            // on the averaged CCDF
  FitOutcome mle;                   // on the pooled tree-degree histogram
  std::vector<std::optional<double>> per_tree_gamma_regression;
  std::vector<std::string> warnings;
};

struct GraphSummary {
  std::size_t n = 0;
  std::size_t edges = 0;
  std::size_t components = 0;
  std::size_t giant_n = 0;
  std::size_t giant_edges = 0;
  double giant_fraction = 0.0;
  std::size_t dropped_self_loops = 0;  // edge-list sources only
  std::size_t dropped_duplicates = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  GraphSummary graph;
  Ccdf underlying_ccdf;             // degree CCDF of the full graph
  FitOutcome underlying_regression;
  FitOutcome underlying_mle;
  // Predicted tree-degree tail exponent for the configured gamma (synthetic
  // only) and for the fitted underlying exponent (MLE preferred, else
  // regression); set only when the exponent lies in (2, 3).
  std::optional<double> predicted_tree_exponent_config;
  std::optional<double> predicted_tree_exponent_fitted;
  std::vector<GroupReport> groups;
  std::vector<std::string> warnings;
};

ExperimentReport run_experiment(const ExperimentConfig& config);
nlohmann::json report_to_json(const ExperimentReport& r);

// Writes report.json, ccdf_underlying.csv and ccdf_group<i>.csv (1-based)
// into out_dir (created if missing).
void write_report_files(const ExperimentReport& r, const std::filesystem::path& out_dir);

struct ValidationReport {
  ExperimentConfig config;
  GraphSummary graph;
  std::size_t replicates = 0;
  std::vector<MeanTreeDegreeRow> mean_rows;
  std::vector<ConcentrationRow> concentration_rows;
  std::vector<VisibilityBin> visibility_bins;
  std::uint64_t visibility_records = 0;
  EnvelopeSweep envelopes;
  std::vector<std::string> warnings;

  bool pass() const { return envelopes.pass(); }
};

ValidationReport run_validation(const ExperimentConfig& config);
nlohmann::json validation_to_json(const ValidationReport& r);
void write_validation_file(const ValidationReport& r, const std::filesystem::path& out_dir);

}  // namespace bfsbias
