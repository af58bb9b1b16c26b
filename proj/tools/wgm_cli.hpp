#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wgm/degree.hpp"
#include "wgm/edits.hpp"
#include "wgm/error.hpp"
#include "wgm/graph.hpp"
#include "wgm/ingest.hpp"
#include "wgm/report.hpp"
#include "wgm/structure.hpp"
#include "wgm/synth.hpp"

namespace wgm::cli {

namespace fs = std::filesystem;

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  std::string nodes, edges, edits, catmap, catnames;
  std::string out;
  std::uint64_t seed = 42;
  double percentile = 0.90;
  std::size_t n_samples = 50000;
  std::size_t n_pairs = 10000;
  double top_fraction = 0.2;
  std::size_t x_min = 1;
  OutputFormat format = OutputFormat::json;
  bool include_anonymous = false;

  std::size_t trace_stride = default_trace_stride;
  bool undirected = false;
  bool exact = false;
  std::size_t top = 10;
  std::string which = "total";
  std::string method = "ls";
  std::string weighting = "counts";
  double bin_width = 0.25;

  // synth
  std::string kind = "preferential";
  std::size_t n = 1000;
  std::size_t m = 3;
  double p = 0.01;
  std::size_t authors = 100;
  std::size_t categories = 10;
  std::size_t total_edits = 10000;
  double zipf_s = 1.0;
  double home_probability = 0.8;
};

namespace detail {

inline Error usage(const std::string& what) { return Error(ErrorKind::usage, "UsageError", what); }

inline DegreeSelector parse_selector(const std::string& which) {
  if (which == "in") return DegreeSelector::in;
  if (which == "out") return DegreeSelector::out;
  return DegreeSelector::total;
}

inline FitOptions fit_options(const RunConfig& c) {
  FitOptions o;
  o.x_min = c.x_min;
  o.method = c.method == "mle" ? FitMethod::maximum_likelihood : FitMethod::least_squares;
  o.weighting = c.weighting == "uniform" ? FitWeighting::uniform : FitWeighting::counts;
  return o;
}

inline bool needs_graph(const std::string& command) {
  return command == "degrees" || command == "classify" || command == "cluster" || command == "paths" ||
         command == "fit" || command == "report";
}

inline bool needs_edits(const std::string& command) { return command == "categories" || command == "entropy"; }

// Every numeric parameter is checked here, before any file is opened.
inline void validate(const RunConfig& c) {
  if (c.command == "classify" || c.command == "report") check_percentile(c.percentile);
  if (c.command == "categories" || c.command == "report") check_fraction(c.top_fraction);
  if ((c.command == "cluster" || c.command == "report") && c.n_samples == 0)
    throw Error(ErrorKind::numeric_domain, "InvalidSampleCount", "--samples must be at least 1");
  if ((c.command == "paths" || c.command == "report") && c.n_pairs == 0)
    throw Error(ErrorKind::numeric_domain, "InvalidSampleCount", "--pairs must be at least 1");
  if (c.command == "degrees" && c.top == 0)
    throw Error(ErrorKind::numeric_domain, "InvalidCount", "--top must be at least 1");
  if ((c.command == "entropy" || c.command == "report") && !(c.bin_width > 0.0))
    throw Error(ErrorKind::numeric_domain, "InvalidBinWidth", "--bin-width must be positive");
  if (c.command == "synth") {
    if (c.out.empty()) throw usage("synth requires --out");
    if (c.kind == "preferential" && (c.m < 1 || c.m >= c.n)) throw invalid_spec("preferential attachment needs 1 <= m < n");
    if (c.kind == "uniform" && !(c.p >= 0.0 && c.p <= 1.0)) throw invalid_spec("edge probability must lie in [0, 1]");
    if (c.kind == "zipf") {
      if (c.authors < 1 || c.categories < 1 || c.total_edits < 1)
        throw invalid_spec("author, category and edit counts must be at least 1");
      if (!(c.zipf_s > 0.0)) throw invalid_spec("Zipf exponent must be positive");
      if (!(c.home_probability >= 0.0 && c.home_probability <= 1.0))
        throw invalid_spec("home probability must lie in [0, 1]");
    }
  }
  if (needs_graph(c.command) && c.edges.empty()) throw usage(c.command + " requires --edges");
  if (needs_edits(c.command) && (c.edits.empty() || c.catmap.empty() || c.catnames.empty()))
    throw usage(c.command + " requires --edits, --catmap and --catnames");
  if (c.command == "report" && (c.edits.empty() != c.catmap.empty() || c.catmap.empty() != c.catnames.empty()))
    throw usage("report needs all of --edits, --catmap and --catnames, or none");
}

inline ArticleGraph load_graph(const RunConfig& c) {
  if (c.nodes.empty()) {
    auto edges = load_edges(c.edges);
    std::size_t node_count = 0;
    for (const auto& e : edges) node_count = std::max<std::size_t>(node_count, std::max(e.source, e.target) + std::size_t{1});
    return build_graph(edges, node_count);
  }
  auto nodes = load_nodes(c.nodes);
  std::size_t bound = 0;
  for (const auto& r : nodes) bound = std::max<std::size_t>(bound, r.id + std::size_t{1});
  auto edges = load_edges(c.edges, bound);
  return build_article_graph(filter_main_namespace(nodes, edges));
}

inline EditLog load_log(const RunConfig& c) {
  auto records = load_edit_log(c.edits);
  auto catmap = load_category_map(c.catmap, c.catnames);
  return resolve_edits(records, catmap);
}

inline void write_file(const fs::path& path, const auto& writer) {
  auto out = wgm::detail::open_output(path);
  writer(out);
}

inline void flatten(const Json& value, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) flatten(item, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) flatten(value[i], prefix + "." + std::to_string(i), rows);
  } else if (value.is_number_float()) {
    rows.emplace_back(prefix, format_double(value.get<double>()));
  } else {
    rows.emplace_back(prefix, value.dump());
  }
}

inline void emit(std::ostream& out, const Json& summary, OutputFormat format) {
  if (format == OutputFormat::json) {
    out << summary.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(summary, "", rows);
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
}

inline Json graph_summary(const ArticleGraph& g) {
  return {{"node_count", g.node_count()},
          {"edge_count", g.edge_count()},
          {"mean_degree", mean_degree(g)},
          {"build_report", to_json(g.build_report())}};
}

inline Json ranking_json(const ArticleGraph& g, DegreeSelector which, std::size_t k) {
  Json list = Json::array();
  for (const auto& [node, degree] : top_k_by_degree(g, which, k)) {
    Json row = {{"node", node}, {"degree", degree}};
    if (g.has_titles()) row["title"] = g.titles()[node];
    list.push_back(row);
  }
  return list;
}

inline Json run_degrees(const RunConfig& c, const ArticleGraph& g) {
  Json summary = graph_summary(g);
  summary["top_indegree"] = ranking_json(g, DegreeSelector::in, c.top);
  summary["top_outdegree"] = ranking_json(g, DegreeSelector::out, c.top);
  for (auto which : {DegreeSelector::in, DegreeSelector::out, DegreeSelector::total}) {
    const auto hist = degree_histogram(g, which);
    summary["zero_degree_nodes_" + std::string(to_string(which))] = hist.zero_degree_nodes;
    if (!c.out.empty())
      write_file(fs::path(c.out) / ("degree_histogram_" + std::string(to_string(which)) + ".csv"),
                 [&](std::ostream& o) { write_histogram_csv(o, hist); });
  }
  return summary;
}

inline Json run_cluster(const RunConfig& c, const ArticleGraph& g) {
  const auto trace = sampled_clustering(g, c.n_samples, c.seed, c.trace_stride);
  Json summary = {{"final_estimate", trace.final_estimate}, {"seed", trace.seed}, {"n_samples", c.n_samples}};
  if (c.exact) summary["exact_clustering"] = exact_clustering(g);
  if (!c.out.empty())
    write_file(fs::path(c.out) / "clustering_trace.csv", [&](std::ostream& o) { write_trace_csv(o, trace); });
  return summary;
}

inline Json run_paths(const RunConfig& c, const ArticleGraph& g) {
  Json summary = to_json(sampled_avg_path(g, c.n_pairs, c.seed, !c.undirected));
  if (c.exact) summary["exact"] = to_json(exact_avg_path(g, !c.undirected));
  return summary;
}

inline Json run_categories(const RunConfig& c, const EditLog& log) {
  RankingOptions options{c.top_fraction, c.include_anonymous};
  const auto rows = category_report(log, options);
  if (!c.out.empty())
    write_file(fs::path(c.out) / "categories.csv", [&](std::ostream& o) { write_category_csv(o, rows); });
  Json list = Json::array();
  for (const auto& s : rows) list.push_back(to_json(s));
  return {{"categories", list}};
}

inline Json run_entropy(const RunConfig& c, const EditLog& log) {
  const auto report = entropy_report(log);
  const auto bins = entropy_histogram(report, c.bin_width);
  if (!c.out.empty()) {
    write_file(fs::path(c.out) / "author_entropy.csv", [&](std::ostream& o) { write_author_entropy_csv(o, report); });
    write_file(fs::path(c.out) / "entropy_histogram.csv",
               [&](std::ostream& o) { write_entropy_histogram_csv(o, bins); });
  }
  return {{"author_count", report.entries.size()},
          {"min", report.min},
          {"max", report.max},
          {"mean", report.mean},
          {"active_category_histogram", to_json(active_category_histogram(log))}};
}

inline Json run_synth(const RunConfig& c) {
  const fs::path dir(c.out);
  fs::create_directories(dir);
  if (c.kind == "zipf") {
    ZipfEditSpec spec;
    spec.n_authors = c.authors;
    spec.n_categories = c.categories;
    spec.total_edits = c.total_edits;
    spec.s = c.zipf_s;
    spec.home_probability = c.home_probability;
    spec.seed = c.seed;
    const auto synthetic = generate_zipf_edits(spec);
    write_file(dir / "edits.tsv", [&](std::ostream& o) { write_edit_log(o, synthetic.records); });
    auto map_out = wgm::detail::open_output(dir / "catmap.tsv");
    auto names_out = wgm::detail::open_output(dir / "catnames.tsv");
    write_category_map(map_out, names_out, synthetic.categories);
    return {{"kind", c.kind}, {"edits", synthetic.records.size()}, {"categories", c.categories}, {"seed", c.seed}};
  }
  const ArticleGraph g = c.kind == "uniform" ? generate_uniform(c.n, c.p, c.seed) : generate_preferential(c.n, c.m, c.seed);
  std::vector<NodeRecord> nodes(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) nodes[v] = {v, "node_" + std::to_string(v), 0};
  write_file(dir / "nodes.tsv", [&](std::ostream& o) { write_nodes(o, nodes); });
  write_file(dir / "edges.tsv", [&](std::ostream& o) { write_edges(o, g.edges()); });
  return {{"kind", c.kind}, {"node_count", g.node_count()}, {"edge_count", g.edge_count()}, {"seed", c.seed}};
}

inline Json run_report(const RunConfig& c, const ArticleGraph& g) {
  Json report;
  report["config"] = {{"seed", c.seed},          {"percentile", c.percentile},
                      {"n_samples", c.n_samples}, {"n_pairs", c.n_pairs},
                      {"top_fraction", c.top_fraction}, {"x_min", c.x_min},
                      {"include_anonymous", c.include_anonymous}};
  report["graph"] = graph_summary(g);
  Json hists;
  for (auto which : {DegreeSelector::in, DegreeSelector::out, DegreeSelector::total})
    hists[std::string(to_string(which))] = to_json(degree_histogram(g, which));
  report["degree_histograms"] = hists;
  report["top_indegree"] = ranking_json(g, DegreeSelector::in, c.top);
  report["top_outdegree"] = ranking_json(g, DegreeSelector::out, c.top);
  report["authority_quadrants"] = to_json(classify_authorities(g, c.percentile));
  report["power_law_fit"] = to_json(fit_power_law(degree_histogram(g, parse_selector(c.which)), fit_options(c)));
  report["clustering"] = to_json(sampled_clustering(g, c.n_samples, c.seed, c.trace_stride));
  report["paths"] = to_json(sampled_avg_path(g, c.n_pairs, c.seed, !c.undirected));
  if (!c.edits.empty()) {
    const EditLog log = load_log(c);
    RankingOptions options{c.top_fraction, c.include_anonymous};
    Json rows = Json::array();
    for (const auto& s : category_report(log, options)) rows.push_back(to_json(s));
    report["categories"] = rows;
    report["active_category_histogram"] = to_json(active_category_histogram(log));
    const auto entropy = entropy_report(log);
    report["entropy_report"] = to_json(entropy);
    report["entropy_histogram"] = to_json(entropy_histogram(entropy, c.bin_width));
  }
  return report;
}

}  // namespace detail

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"degrees", "classify", "cluster",  "paths", "fit",
                                                 "categories", "entropy", "synth", "report"};
  return names;
}

/// Runs one command and returns the process exit status. The summary goes to
/// `out` (JSON or key,value CSV); plot-ready CSV exports go under --out.
inline int run(const RunConfig& config, std::ostream& out) {
  detail::validate(config);
  Json summary;
  const auto& cmd = config.command;
  if (cmd == "synth") {
    summary = detail::run_synth(config);
  } else if (detail::needs_edits(cmd)) {
    const EditLog log = detail::load_log(config);
    summary = cmd == "categories" ? detail::run_categories(config, log) : detail::run_entropy(config, log);
  } else {
    const ArticleGraph g = detail::load_graph(config);
    if (!config.out.empty()) fs::create_directories(config.out);
    if (cmd == "degrees") {
      summary = detail::run_degrees(config, g);
    } else if (cmd == "classify") {
      summary = to_json(classify_authorities(g, config.percentile));
    } else if (cmd == "cluster") {
      summary = detail::run_cluster(config, g);
    } else if (cmd == "paths") {
      summary = detail::run_paths(config, g);
    } else if (cmd == "fit") {
      summary = to_json(fit_power_law(degree_histogram(g, detail::parse_selector(config.which)), detail::fit_options(config)));
    } else if (cmd == "report") {
      summary = detail::run_report(config, g);
      if (!config.out.empty())
        detail::write_file(fs::path(config.out) / "report.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
    } else {
      throw detail::usage("unknown command '" + cmd + "'");
    }
  }
  detail::emit(out, summary, config.format);
  return 0;
}

/// Parses argv, runs, and maps errors onto exit codes (2 usage, 3 parse,
/// 4 empty input, 5 numeric domain). Diagnostics are one line on `err`.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig config;
  CLI::App app{"Structural and contribution metrics for wiki link graphs and edit logs", "wgm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json}, {"csv", OutputFormat::csv}};
  const std::map<std::string, std::string> blurbs{
      {"degrees", "in/out/total degree histograms"},
      {"classify", "authority quadrants at a degree percentile"},
      {"cluster", "sampled clustering coefficient with convergence trace"},
      {"paths", "sampled mean shortest-path length"},
      {"fit", "power-law exponent of a degree histogram"},
      {"categories", "per-category edit concentration"},
      {"entropy", "per-author category entropy"},
      {"synth", "generate synthetic graphs or edit logs"},
      {"report", "every metric in one report.json"}};
  for (const auto& name : commands()) {
    auto* sub = app.add_subcommand(name, blurbs.at(name));
    sub->add_option("--nodes", config.nodes, "nodes.tsv (id, title, namespace)");
    sub->add_option("--edges", config.edges, "edges.tsv (source_id, target_id)");
    sub->add_option("--edits", config.edits, "edits.tsv (author_id, article_id)");
    sub->add_option("--catmap", config.catmap, "catmap.tsv (article_id, category_id)");
    sub->add_option("--catnames", config.catnames, "catnames.tsv (category_id, name)");
    sub->add_option("--out", config.out, "output directory for CSV/TSV/JSON files");
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--percentile", config.percentile, "authority threshold percentile")->capture_default_str();
    sub->add_option("--samples", config.n_samples, "clustering samples")->capture_default_str();
    sub->add_option("--pairs", config.n_pairs, "path-length sample pairs")->capture_default_str();
    sub->add_option("--top-fraction", config.top_fraction, "Pareto head fraction")->capture_default_str();
    sub->add_option("--xmin", config.x_min, "smallest degree used in the fit")->capture_default_str();
    sub->add_option("--format", config.format, "summary format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description("{json,csv} [json]"));
    sub->add_flag("--include-anonymous", config.include_anonymous, "rank author 0 in share metrics");
    sub->add_option("--trace-stride", config.trace_stride, "samples between trace points")->capture_default_str();
    sub->add_flag("--undirected", config.undirected, "paths on the undirected projection");
    sub->add_flag("--exact", config.exact, "also compute the exact value (small graphs)");
    sub->add_option("--top", config.top, "length of top-degree lists")->capture_default_str();
    sub->add_option("--which", config.which, "degree selector")->check(CLI::IsMember({"in", "out", "total"}))->capture_default_str();
    sub->add_option("--method", config.method, "fit method")->check(CLI::IsMember({"ls", "mle"}))->capture_default_str();
    sub->add_option("--weighting", config.weighting, "least-squares weights")
        ->check(CLI::IsMember({"counts", "uniform"}))
        ->capture_default_str();
    sub->add_option("--bin-width", config.bin_width, "entropy histogram bin width")->capture_default_str();
    if (name == "synth") {
      sub->add_option("--kind", config.kind, "generator")
          ->check(CLI::IsMember({"preferential", "uniform", "zipf"}))
          ->capture_default_str();
      sub->add_option("--n", config.n, "node count")->capture_default_str();
      sub->add_option("--m", config.m, "edges per new node")->capture_default_str();
      sub->add_option("--p", config.p, "edge probability")->capture_default_str();
      sub->add_option("--authors", config.authors, "author count")->capture_default_str();
      sub->add_option("--categories", config.categories, "category count")->capture_default_str();
      sub->add_option("--total-edits", config.total_edits, "edit count")->capture_default_str();
      sub->add_option("--zipf-s", config.zipf_s, "Zipf exponent of author activity")->capture_default_str();
      sub->add_option("--home-prob", config.home_probability, "home-category probability")->capture_default_str();
    }
    sub->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "wgm: usage error: " << e.what() << '\n';
    return exit_code_for(ErrorKind::usage);
  }

  try {
    return run(config, out);
  } catch (const Error& e) {
    err << "wgm: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "wgm: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace wgm::cli
