#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wgm/degree.hpp"
#include "wgm/edits.hpp"
#include "wgm/graph.hpp"
#include "wgm/structure.hpp"

// CSV exports and JSON views of the analysis types. JSON keys are the
// struct field names.

namespace wgm {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form; identical on every run.
inline std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline void write_histogram_csv(std::ostream& out, const DegreeHistogram& hist) {
  out << "degree,count\n";
  for (const auto& [k, n] : hist.entries) out << k << ',' << n << '\n';
}

inline void write_trace_csv(std::ostream& out, const ClusteringTrace& trace) {
  out << "samples,running_mean\n";
  for (const auto& p : trace.estimates) out << p.samples << ',' << format_double(p.running_mean) << '\n';
}

inline void write_category_csv(std::ostream& out, const std::vector<CategoryStats>& rows) {
  out << "category,n_edits,n_authors,ea_bar,top20pct_share,top1_share\n";
  for (const auto& s : rows)
    out << s.category_id << ',' << s.n_edits << ',' << s.n_authors << ',' << format_double(s.ea_bar) << ','
        << format_double(s.top_fraction_share) << ',' << format_double(s.top1_share) << '\n';
}

inline void write_entropy_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "bin_lower,bin_upper,author_count\n";
  for (const auto& b : bins) out << format_double(b.lower) << ',' << format_double(b.upper) << ',' << b.count << '\n';
}

inline void write_author_entropy_csv(std::ostream& out, const EntropyReport& report) {
  out << "author_id,entropy\n";
  for (const auto& e : report.entries) out << e.author_id << ',' << format_double(e.entropy) << '\n';
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline Json to_json(const BuildReport& r) {
  return {{"self_loops_dropped", r.self_loops_dropped}, {"duplicates_dropped", r.duplicates_dropped}};
}

inline Json to_json(const DegreeSummary& d) {
  return {{"indegree", d.indegree}, {"outdegree", d.outdegree}, {"degree", d.degree}};
}

inline Json to_json(const DegreeHistogram& h) {
  Json entries = Json::array();
  for (const auto& [k, n] : h.entries) entries.push_back({{"degree", k}, {"count", n}});
  return {{"which", std::string(to_string(h.which))}, {"entries", entries}, {"zero_degree_nodes", h.zero_degree_nodes}};
}

inline Json to_json(const AuthorityQuadrants& q) {
  return {{"all_round", q.all_round},       {"referring", q.referring},
          {"guru", q.guru},                 {"regular", q.regular},
          {"in_threshold", q.in_threshold}, {"out_threshold", q.out_threshold}};
}

inline Json to_json(const PowerLawFit& f) {
  return {{"alpha", f.alpha},
          {"log_prefactor", f.log_prefactor},
          {"x_min", f.x_min},
          {"r_squared", f.r_squared},
          {"points_used", f.points_used}};
}

inline Json to_json(const ClusteringTrace& t) {
  Json estimates = Json::array();
  for (const auto& p : t.estimates) estimates.push_back({{"samples", p.samples}, {"running_mean", p.running_mean}});
  return {{"estimates", estimates}, {"final_estimate", t.final_estimate}, {"seed", t.seed}};
}

inline Json to_json(const PathSampleResult& r) {
  return {{"mean_path_length", r.mean_path_length},
          {"reachable_pairs", r.reachable_pairs},
          {"sampled_pairs", r.sampled_pairs},
          {"unreachable_fraction", r.unreachable_fraction},
          {"seed", r.seed}};
}

inline Json to_json(const CategoryStats& s) {
  return {{"category_id", s.category_id}, {"n_edits", s.n_edits},
          {"n_authors", s.n_authors},     {"ea_bar", s.ea_bar},
          {"top_fraction_share", s.top_fraction_share}, {"top1_share", s.top1_share}};
}

inline Json to_json(const ActiveCategoryHistogram& h) {
  Json entries = Json::array();
  for (const auto& [categories, authors] : h.authors_by_category_count)
    entries.push_back({{"active_categories", categories}, {"authors", authors}});
  return {{"authors_by_category_count", entries},
          {"anonymous_present", h.anonymous_present},
          {"anonymous_active_categories", h.anonymous_active_categories}};
}

inline Json to_json(const EntropyReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back({{"author_id", e.author_id}, {"entropy", e.entropy}});
  return {{"entries", entries}, {"min", r.min}, {"max", r.max}, {"mean", r.mean}};
}

inline Json to_json(const std::vector<HistogramBin>& bins) {
  Json out = Json::array();
  for (const auto& b : bins) out.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count}});
  return out;
}

}  // namespace wgm
