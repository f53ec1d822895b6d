#include "bfsbias/experiment.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "bfsbias/analytic.hpp"
#include "bfsbias/bfs_tree.hpp"
#include "bfsbias/config_model.hpp"
#include "bfsbias/degree_distribution.hpp"
#include "bfsbias/edge_list.hpp"
#include "bfsbias/rng.hpp"

namespace bfsbias {

using nlohmann::json;

std::vector<DegreeBand> ExperimentConfig::default_groups() {
  return {DegreeBand{1, 35}, DegreeBand{36, 70}, DegreeBand{71, std::nullopt}};
}

ExperimentConfig::ExperimentConfig() : groups(default_groups()) {}

// --- config parsing ----------------------------------------------------------

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw std::runtime_error("config: " + path + ": " + what);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; }))
      config_error(path + "." + it.key(), "unknown field");
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) config_error(path, "expected a number");
  return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) config_error(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t as_uint(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0))
    config_error(path, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) config_error(path, "expected a string");
  return v.get<std::string>();
}

void parse_source(const json& j, const std::string& path, ExperimentConfig& c) {
  if (!j.is_object()) config_error(path, "expected an object");
  const json* type = find(j, "type");
  if (!type) config_error(path + ".type", "missing field");
  const std::string kind = as_string(*type, path + ".type");
  if (kind == "synthetic") {
    check_keys(j, path, {"type", "gamma", "n", "k_max"});
    SyntheticSource s;
    if (const json* v = find(j, "gamma")) s.gamma = as_double(*v, path + ".gamma");
    if (const json* v = find(j, "n")) s.n = as_uint(*v, path + ".n");
    if (const json* v = find(j, "k_max")) {
      const std::int64_t k = as_int(*v, path + ".k_max");
      if (k < 0) config_error(path + ".k_max", "must be >= 0 (0 means n - 1)");
      s.k_max = k;
    }
    if (!(s.gamma > 2.0)) config_error(path + ".gamma", "must exceed 2");
    if (s.n < 2) config_error(path + ".n", "need at least 2 vertices");
    c.synthetic = s;
    c.edge_list.reset();
  } else if (kind == "edge_list") {
    check_keys(j, path, {"type", "path"});
    const json* p = find(j, "path");
    if (!p) config_error(path + ".path", "missing field");
    c.edge_list = std::filesystem::path(as_string(*p, path + ".path"));
    c.synthetic.reset();
  } else {
    config_error(path + ".type", "expected \"synthetic\" or \"edge_list\"");
  }
}

std::vector<DegreeBand> parse_groups(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    config_error(path, "expected a nonempty array of [lo, hi] pairs");
  std::vector<DegreeBand> bands;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || e.size() != 2)
      config_error(p, "expected [lo, hi] with hi null for an unbounded band");
    DegreeBand b;
    b.lo = as_int(e[0], p + "[0]");
    if (!e[1].is_null()) b.hi = as_int(e[1], p + "[1]");
    bands.push_back(b);
  }
  return bands;
}

void parse_fit(const json& j, const std::string& path, FitSpec& fit) {
  if (!j.is_object()) config_error(path, "expected an object");
  check_keys(j, path, {"k_min", "methods"});
  if (const json* v = find(j, "k_min")) {
    fit.k_min = as_int(*v, path + ".k_min");
    if (fit.k_min < 1) config_error(path + ".k_min", "must be >= 1");
  }
  if (const json* v = find(j, "methods")) {
    if (!v->is_array()) config_error(path + ".methods", "expected an array");
    fit.use_regression = false;
    fit.use_mle = false;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string m =
          as_string((*v)[i], path + ".methods[" + std::to_string(i) + "]");
      if (m == "regression")
        fit.use_regression = true;
      else if (m == "mle")
        fit.use_mle = true;
      else
        config_error(path + ".methods[" + std::to_string(i) + "]",
                     "expected \"regression\" or \"mle\"");
    }
    if (!fit.use_regression && !fit.use_mle)
      config_error(path + ".methods", "need at least one method");
  }
}

void parse_validation(const json& j, const std::string& path, ValidationSpec& v) {
  if (!j.is_object()) config_error(path, "expected an object");
  check_keys(j, path,
             {"replicates", "bins", "min_observations", "concentration_min_degree",
              "envelope_gammas", "envelope_grid", "envelope_k_max"});
  if (const json* x = find(j, "replicates")) {
    v.replicates = as_uint(*x, path + ".replicates");
    if (v.replicates < 1) config_error(path + ".replicates", "must be >= 1");
  }
  if (const json* x = find(j, "bins")) {
    v.bins = as_uint(*x, path + ".bins");
    if (v.bins < 1) config_error(path + ".bins", "must be >= 1");
  }
  if (const json* x = find(j, "min_observations"))
    v.min_observations = as_uint(*x, path + ".min_observations");
  if (const json* x = find(j, "concentration_min_degree")) {
    v.concentration_min_degree = as_int(*x, path + ".concentration_min_degree");
    if (v.concentration_min_degree < 2)
      config_error(path + ".concentration_min_degree", "must be >= 2");
  }
  if (const json* x = find(j, "envelope_gammas")) {
    if (!x->is_array() || x->empty())
      config_error(path + ".envelope_gammas", "expected a nonempty array");
    v.envelope_gammas.clear();
    for (std::size_t i = 0; i < x->size(); ++i) {
      const std::string p = path + ".envelope_gammas[" + std::to_string(i) + "]";
      const double g = as_double((*x)[i], p);
      if (!(g > 2.0)) config_error(p, "must exceed 2");
      v.envelope_gammas.push_back(g);
    }
  }
  if (const json* x = find(j, "envelope_grid")) {
    v.envelope_grid = as_uint(*x, path + ".envelope_grid");
    if (v.envelope_grid < 2) config_error(path + ".envelope_grid", "must be >= 2");
  }
  if (const json* x = find(j, "envelope_k_max")) {
    v.envelope_k_max = as_int(*x, path + ".envelope_k_max");
    if (v.envelope_k_max < 2) config_error(path + ".envelope_k_max", "must be >= 2");
  }
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) config_error("$", "expected a JSON object");
  check_keys(j, "$",
             {"source", "groups", "roots_per_group", "seed", "threads", "fit",
              "validation"});
  ExperimentConfig c;
  if (const json* v = find(j, "source")) parse_source(*v, "$.source", c);
  if (const json* v = find(j, "groups")) c.groups = parse_groups(*v, "$.groups");
  if (const json* v = find(j, "roots_per_group")) {
    c.roots_per_group = as_uint(*v, "$.roots_per_group");
    if (c.roots_per_group < 1) config_error("$.roots_per_group", "must be >= 1");
  }
  if (const json* v = find(j, "seed")) c.seed = as_uint(*v, "$.seed");
  if (const json* v = find(j, "threads")) {
    const std::int64_t t = as_int(*v, "$.threads");
    if (t < 0) config_error("$.threads", "must be >= 0 (0 = all available)");
    c.threads = static_cast<int>(t);
  }
  if (const json* v = find(j, "fit")) parse_fit(*v, "$.fit", c.fit);
  if (const json* v = find(j, "validation"))
    parse_validation(*v, "$.validation", c.validation);
  // Stratification rejects malformed or overlapping bands at run time too,
  // but failing at parse time gives the field path.
  try {
    stratify_by_degree(Graph(0), c.groups);
  } catch (const std::exception& e) {
    config_error("$.groups", e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("config: " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  if (c.synthetic) {
    j["source"] = {{"type", "synthetic"},
                   {"gamma", c.synthetic->gamma},
                   {"n", c.synthetic->n},
                   {"k_max", c.synthetic->k_max}};
  } else if (c.edge_list) {
    j["source"] = {{"type", "edge_list"}, {"path", c.edge_list->string()}};
  }
  json groups = json::array();
  for (const DegreeBand& b : c.groups) {
    json band = json::array();
    band.push_back(b.lo);
    if (b.hi)
      band.push_back(*b.hi);
    else
      band.push_back(nullptr);
    groups.push_back(band);
  }
  j["groups"] = groups;
  j["roots_per_group"] = c.roots_per_group;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  json methods = json::array();
  if (c.fit.use_regression) methods.push_back("regression");
  if (c.fit.use_mle) methods.push_back("mle");
  j["fit"] = {{"k_min", c.fit.k_min}, {"methods", methods}};
  j["validation"] = {{"replicates", c.validation.replicates},
                     {"bins", c.validation.bins},
                     {"min_observations", c.validation.min_observations},
                     {"concentration_min_degree", c.validation.concentration_min_degree},
                     {"envelope_gammas", c.validation.envelope_gammas},
                     {"envelope_grid", c.validation.envelope_grid},
                     {"envelope_k_max", c.validation.envelope_k_max}};
  return j;
}

// --- shared run plumbing -----------------------------------------------------

namespace {

struct PreparedGraph {
  Graph graph;
  GiantComponent giant;
  std::vector<std::int64_t> external_ids;  // empty for synthetic sources
  GraphSummary summary;
  std::vector<std::string> warnings;
};

PreparedGraph prepare_graph(const ExperimentConfig& c) {
  if (c.synthetic.has_value() == c.edge_list.has_value())
    throw std::invalid_argument("config must select exactly one graph source");

  PreparedGraph pg;
  if (c.synthetic) {
    const SyntheticSource& s = *c.synthetic;
    const std::int64_t k_max =
        s.k_max > 0 ? s.k_max : static_cast<std::int64_t>(s.n) - 1;
    const DegreeDistribution dist = DegreeDistribution::power_law(s.gamma, k_max);
    const std::vector<std::int64_t> degrees =
        sample_degree_sequence(dist, s.n, c.seed);
    pg.graph = configuration_model(degrees, c.seed, /*simplify=*/true);
  } else {
    EdgeListResult r = read_edge_list(*c.edge_list);
    pg.summary.dropped_self_loops = r.dropped_self_loops;
    pg.summary.dropped_duplicates = r.dropped_duplicates;
    if (r.dropped_self_loops || r.dropped_duplicates)
      pg.warnings.push_back("edge list: dropped " +
                            std::to_string(r.dropped_self_loops) + " self-loops and " +
                            std::to_string(r.dropped_duplicates) + " duplicate edges");
    pg.graph = std::move(r.graph);
    pg.external_ids = std::move(r.external_ids);
    if (pg.graph.order() == 0)
      throw std::runtime_error("edge list contains no edges");
  }

  pg.giant = giant_component(pg.graph);
  pg.summary.n = pg.graph.order();
  pg.summary.edges = pg.graph.size();
  pg.summary.components = pg.giant.component_count;
  pg.summary.giant_n = pg.giant.graph.order();
  pg.summary.giant_edges = pg.giant.graph.size();
  pg.summary.giant_fraction = pg.giant.fraction;
  if (pg.giant.fraction < 0.5)
    pg.warnings.push_back("giant component covers only " +
                          std::to_string(pg.giant.fraction * 100.0) +
                          "% of the graph");
  return pg;
}

template <typename F>
FitOutcome try_fit(F&& f, const std::string& context,
                   std::vector<std::string>& warnings) {
  FitOutcome out;
  try {
    out.fit = f();
  } catch (const std::exception& e) {
    out.error = e.what();
    warnings.push_back(context + ": " + e.what());
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json fit_to_json(const FitOutcome& o) {
  if (o.error) return json{{"error", *o.error}};
  if (!o.fit) return nullptr;
  json j;
  j["gamma_hat"] = o.fit->gamma_hat;
  j["k_min"] = o.fit->k_min;
  j["method"] = o.fit->method == FitMethod::kRegressionCcdf ? "regression_ccdf"
                                                            : "mle_hill";
  j["sample_size"] = o.fit->sample_size;
  if (o.fit->r_squared) j["r_squared"] = *o.fit->r_squared;
  if (o.fit->standard_error) j["standard_error"] = *o.fit->standard_error;
  return j;
}

json graph_to_json(const GraphSummary& g) {
  return json{{"n", g.n},
              {"edges", g.edges},
              {"components", g.components},
              {"giant",
               {{"n", g.giant_n}, {"edges", g.giant_edges}, {"fraction", g.giant_fraction}}},
              {"dropped_self_loops", g.dropped_self_loops},
              {"dropped_duplicates", g.dropped_duplicates}};
}

json band_to_json(const DegreeBand& b) {
  json band = json::array();
  band.push_back(b.lo);
  if (b.hi)
    band.push_back(*b.hi);
  else
    band.push_back(nullptr);
  return band;
}

void write_ccdf_csv(const Ccdf& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "degree,ccdf\n";
  out << std::setprecision(17);
  for (const auto& [value, fraction] : curve.points)
    out << value << ',' << fraction << '\n';
  out.flush();
  if (!out) throw std::runtime_error("i/o error writing " + path.string());
}

}  // namespace

// --- experiment --------------------------------------------------------------

ExperimentReport run_experiment(const ExperimentConfig& c) {
  ExperimentReport report;
  report.config = c;

  PreparedGraph pg = prepare_graph(c);
  report.graph = pg.summary;
  report.warnings = std::move(pg.warnings);

  // Underlying (full graph) degree distribution and exponent fits.
  const std::map<std::int64_t, std::size_t> degree_hist = pg.graph.degree_histogram();
  report.underlying_ccdf = ccdf_from_histogram(degree_hist);
  if (c.fit.use_regression)
    report.underlying_regression = try_fit(
        [&] { return fit_gamma_regression(report.underlying_ccdf, c.fit.k_min); },
        "underlying regression fit", report.warnings);
  if (c.fit.use_mle)
    report.underlying_mle =
        try_fit([&] { return fit_gamma_mle_histogram(degree_hist, c.fit.k_min); },
                "underlying MLE fit", report.warnings);

  if (c.synthetic && c.synthetic->gamma > 2.0 && c.synthetic->gamma < 3.0)
    report.predicted_tree_exponent_config = predicted_tree_exponent(c.synthetic->gamma);
  const PowerLawFit* fitted = report.underlying_mle.fit
                                  ? &*report.underlying_mle.fit
                                  : (report.underlying_regression.fit
                                         ? &*report.underlying_regression.fit
                                         : nullptr);
  if (fitted) {
    if (fitted->gamma_hat > 2.0 && fitted->gamma_hat < 3.0)
      report.predicted_tree_exponent_fitted = predicted_tree_exponent(fitted->gamma_hat);
    else
      report.warnings.push_back(
          "fitted underlying exponent is outside (2, 3); tree-exponent prediction skipped");
  }

  // Degree-stratified root groups inside the giant component.
  const std::vector<std::vector<VertexId>> strata =
      stratify_by_degree(pg.giant.graph, c.groups);

  for (std::size_t gi = 0; gi < c.groups.size(); ++gi) {
    GroupReport gr;
    gr.band = c.groups[gi];
    gr.population = strata[gi].size();

    if (strata[gi].empty()) {
      gr.warnings.push_back("band " + gr.band.label() +
                            " has no vertices in the giant component");
      report.warnings.push_back("group " + std::to_string(gi + 1) + ": " +
                                gr.warnings.back());
      report.groups.push_back(std::move(gr));
      continue;
    }

    // Uniform sample without replacement: shuffle a copy, take a prefix.
    std::vector<VertexId> pool = strata[gi];
    Rng rng(c.seed, substream(streams::kRootSelection, gi));
    rng.shuffle(pool);
    const std::size_t want = std::min<std::size_t>(c.roots_per_group, pool.size());
    if (want < c.roots_per_group) {
      gr.warnings.push_back("band " + gr.band.label() + " has only " +
                            std::to_string(pool.size()) + " vertices; using all of them");
      report.warnings.push_back("group " + std::to_string(gi + 1) + ": " +
                                gr.warnings.back());
    }
    gr.roots.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
    for (VertexId r : gr.roots) {
      const VertexId original = pg.giant.original_ids[r];
      gr.root_source_ids.push_back(pg.external_ids.empty()
                                       ? static_cast<std::int64_t>(original)
                                       : pg.external_ids[original]);
    }

    const std::vector<std::map<std::int64_t, std::size_t>> histograms =
        pool_tree_histograms(pg.giant.graph, gr.roots, c.seed,
                             substream(streams::kTreeSampling, gi), c.threads);

    std::vector<Ccdf> curves;
    std::map<std::int64_t, std::size_t> pooled;
    curves.reserve(histograms.size());
    for (std::size_t ti = 0; ti < histograms.size(); ++ti) {
      std::size_t covered = 0;
      for (const auto& [value, count] : histograms[ti]) {
        covered += count;
        pooled[value] += count;
      }
      gr.covered.push_back(covered);
      curves.push_back(ccdf_from_histogram(histograms[ti]));
      if (c.fit.use_regression) {
        std::optional<double> gamma;
        try {
          gamma = fit_gamma_regression(curves.back(), c.fit.k_min).gamma_hat;
        } catch (const std::exception& e) {
          gr.warnings.push_back("tree " + std::to_string(ti) +
                                " regression fit failed: " + e.what());
        }
        gr.per_tree_gamma_regression.push_back(gamma);
      }
    }

    gr.averaged_ccdf = average_ccdf(curves);
    if (c.fit.use_regression)
      gr.regression = try_fit(
          [&] { return fit_gamma_regression(gr.averaged_ccdf, c.fit.k_min); },
          "group " + std::to_string(gi + 1) + " regression fit", report.warnings);
    if (c.fit.use_mle)
      gr.mle =
          try_fit([&] { return fit_gamma_mle_histogram(pooled, c.fit.k_min); },
                  "group " + std::to_string(gi + 1) + " MLE fit", report.warnings);

    report.groups.push_back(std::move(gr));
  }
  return report;
}

json report_to_json(const ExperimentReport& r) {
  json j;
  j["schema"] = "bfsbias-report-v1";
  j["version"] = kVersion;
  j["generated_at"] = utc_timestamp();
  j["config"] = config_to_json(r.config);
  j["graph"] = graph_to_json(r.graph);

  json underlying;
  underlying["ccdf_points"] = r.underlying_ccdf.points.size();
  json fits;
  if (r.config.fit.use_regression) fits["regression"] = fit_to_json(r.underlying_regression);
  if (r.config.fit.use_mle) fits["mle"] = fit_to_json(r.underlying_mle);
  underlying["fits"] = fits;
  j["underlying"] = underlying;

  j["predicted_tree_exponent"] = {
      {"from_config", r.predicted_tree_exponent_config
                          ? json(*r.predicted_tree_exponent_config)
                          : json(nullptr)},
      {"from_fitted", r.predicted_tree_exponent_fitted
                          ? json(*r.predicted_tree_exponent_fitted)
                          : json(nullptr)}};

  json groups = json::array();
  for (const GroupReport& g : r.groups) {
    json gj;
    gj["band"] = band_to_json(g.band);
    gj["label"] = g.band.label();
    gj["population"] = g.population;
    gj["roots"] = g.roots;
    gj["root_source_ids"] = g.root_source_ids;
    gj["covered"] = g.covered;
    gj["ccdf_points"] = g.averaged_ccdf.points.size();
    json gfits;
    if (r.config.fit.use_regression) gfits["regression"] = fit_to_json(g.regression);
    if (r.config.fit.use_mle) gfits["mle"] = fit_to_json(g.mle);
    gj["fits"] = gfits;
    if (r.config.fit.use_regression) {
      json per_tree = json::array();
      for (const auto& gamma : g.per_tree_gamma_regression)
        per_tree.push_back(gamma ? json(*gamma) : json(nullptr));
      gj["per_tree_gamma_regression"] = per_tree;
    }
    gj["warnings"] = g.warnings;
    groups.push_back(gj);
  }
  j["groups"] = groups;
  j["warnings"] = r.warnings;
  return j;
}

void write_report_files(const ExperimentReport& r, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "report.json");
    if (!out)
      throw std::runtime_error("cannot open for writing: " +
                               (out_dir / "report.json").string());
    out << report_to_json(r).dump(2) << '\n';
    out.flush();
    if (!out)
      throw std::runtime_error("i/o error writing " + (out_dir / "report.json").string());
  }
  write_ccdf_csv(r.underlying_ccdf, out_dir / "ccdf_underlying.csv");
  for (std::size_t gi = 0; gi < r.groups.size(); ++gi) {
    if (r.groups[gi].population == 0) continue;  // no curve to write
    write_ccdf_csv(r.groups[gi].averaged_ccdf,
                   out_dir / ("ccdf_group" + std::to_string(gi + 1) + ".csv"));
  }
}

// --- validation --------------------------------------------------------------

ValidationReport run_validation(const ExperimentConfig& c) {
  ValidationReport report;
  report.config = c;

  PreparedGraph pg = prepare_graph(c);
  report.graph = pg.summary;
  report.warnings = std::move(pg.warnings);
  const Graph& giant = pg.giant.graph;
  if (giant.order() < 2)
    throw std::runtime_error("giant component too small to validate");
  if (c.validation.replicates < 30)
    throw std::runtime_error(
        "validation needs at least 30 replicates for stable empirical rates");

  report.replicates = c.validation.replicates;
  std::vector<VertexId> roots(c.validation.replicates);
  Rng rng(c.seed, streams::kRootSelection);
  for (VertexId& r : roots)
    r = static_cast<VertexId>(rng.next_below(giant.order()));

  const TreeStatsPool pool =
      pool_tree_stats(giant, roots, c.seed, streams::kValidator, c.threads);
  report.mean_rows = summarize_mean_tree_degree(pool, c.validation.min_observations);
  report.concentration_rows = summarize_concentration(
      pool, c.validation.concentration_min_degree, c.validation.min_observations);
  if (report.mean_rows.empty())
    report.warnings.push_back("no degree class reached the observation minimum");
  if (report.concentration_rows.empty())
    report.warnings.push_back("no degree class at or above degree " +
                              std::to_string(c.validation.concentration_min_degree) +
                              " reached the observation minimum");

  const VisibilityPool vpool =
      pool_visibility(giant, roots, c.validation.bins, c.seed,
                      streams::kVisibilityValidator, c.threads);
  report.visibility_bins = summarize_visibility(vpool);
  for (const VisibilityBin& b : report.visibility_bins)
    report.visibility_records += b.records;
  for (const VisibilityBin& b : report.visibility_bins)
    if (b.records == 0)
      report.warnings.push_back("visibility bin [" + std::to_string(b.t_lo) + ", " +
                                std::to_string(b.t_hi) + ") collected no records");

  report.envelopes =
      validate_envelopes(c.validation.envelope_gammas, c.validation.envelope_grid,
                         c.validation.envelope_k_max);
  return report;
}

json validation_to_json(const ValidationReport& r) {
  json j;
  j["schema"] = "bfsbias-validation-v1";
  j["version"] = kVersion;
  j["generated_at"] = utc_timestamp();
  j["config"] = config_to_json(r.config);
  j["graph"] = graph_to_json(r.graph);

  json mean_rows = json::array();
  for (const MeanTreeDegreeRow& row : r.mean_rows) {
    mean_rows.push_back({{"degree", row.degree},
                         {"observations", row.observations},
                         {"mean_tree_degree", row.mean_tree_degree},
                         {"mean_children", row.mean_children},
                         {"predicted", row.predicted},
                         {"ratio", row.ratio ? json(*row.ratio) : json(nullptr)},
                         {"boundary", row.boundary}});
  }
  j["mean_tree_degree"] = {{"replicates", r.replicates}, {"rows", mean_rows}};

  json conc_rows = json::array();
  for (const ConcentrationRow& row : r.concentration_rows) {
    conc_rows.push_back({{"degree", row.degree},
                         {"observations", row.observations},
                         {"threshold", row.threshold},
                         {"lower_bound", row.lower_bound},
                         {"empirical_fraction", row.empirical_fraction},
                         {"satisfied", row.satisfied}});
  }
  j["concentration"] = {{"rows", conc_rows}};

  json bins = json::array();
  for (const VisibilityBin& b : r.visibility_bins) {
    bins.push_back({{"t_lo", b.t_lo},
                    {"t_hi", b.t_hi},
                    {"t_mid", b.t_mid},
                    {"records", b.records},
                    {"empirical_ratio",
                     b.empirical_ratio ? json(*b.empirical_ratio) : json(nullptr)},
                    {"predicted_cubic", b.predicted_cubic}});
  }
  j["visibility"] = {{"bins", bins}, {"records", r.visibility_records}};

  json violations = json::array();
  for (const EnvelopeViolation& v : r.envelopes.violations) {
    violations.push_back({{"gamma", v.gamma},
                          {"t", v.t},
                          {"inequality", v.inequality},
                          {"lhs", v.lhs},
                          {"rhs", v.rhs}});
  }
  j["envelopes"] = {{"gammas", r.envelopes.gammas},
                    {"grid", r.envelopes.grid},
                    {"k_max", r.envelopes.k_max},
                    {"checks", r.envelopes.checks},
                    {"violations", violations},
                    {"upper_attained_at_one", r.envelopes.upper_attained_at_one},
                    {"pass", r.envelopes.pass()}};
  j["pass"] = r.pass();
  j["warnings"] = r.warnings;
  return j;
}

void write_validation_file(const ValidationReport& r,
                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path path = out_dir / "validation.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << validation_to_json(r).dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("i/o error writing " + path.string());
}

}  // namespace bfsbias
