#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "wgm/error.hpp"
#include "wgm/graph.hpp"
#include "wgm/records.hpp"

// TSV readers and writers for the node, edge, edit and category tables.
// Blank lines and lines starting with '#' are skipped; every error names the
// 1-based line that caused it.

namespace wgm {

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

template <typename Int>
Int parse_int(std::string_view field, std::size_t line, std::string_view what) {
  Int value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc{} || ptr != last)
    throw InputError("ParseError", line, "non-integer " + std::string(what) + " '" + std::string(field) + "'");
  return value;
}

template <typename Int>
Int parse_non_negative(std::string_view field, std::size_t line, std::string_view what) {
  // Reject a leading '-' up front so unsigned targets do not report overflow.
  if (!field.empty() && field.front() == '-')
    throw InputError("ParseError", line, "negative " + std::string(what) + " '" + std::string(field) + "'");
  return parse_int<Int>(field, line, what);
}

// Calls row(fields, line_number) for every data line.
template <typename Row>
void for_each_row(std::istream& in, std::size_t expected_fields, Row&& row) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != expected_fields)
      throw InputError("ParseError", number,
                       "expected " + std::to_string(expected_fields) + " tab-separated fields, found " +
                           std::to_string(fields.size()));
    row(fields, number);
  }
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "IoError", "cannot open " + path.string());
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::parse, "IoError", "cannot write " + path.string());
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// nodes.tsv: id<TAB>title<TAB>namespace
// ---------------------------------------------------------------------------

inline std::vector<NodeRecord> parse_nodes(std::istream& in) {
  std::vector<NodeRecord> nodes;
  std::unordered_set<NodeId> seen;
  detail::for_each_row(in, 3, [&](const auto& f, std::size_t line) {
    NodeRecord r;
    r.id = detail::parse_non_negative<NodeId>(f[0], line, "id");
    r.title = std::string(f[1]);
    r.namespace_id = detail::parse_int<std::int64_t>(f[2], line, "namespace");
    if (!seen.insert(r.id).second)
      throw InputError("DuplicateNodeId", line, "node id " + std::to_string(r.id) + " already defined");
    nodes.push_back(std::move(r));
  });
  return nodes;
}

inline std::vector<NodeRecord> load_nodes(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_nodes(in);
}

inline void write_nodes(std::ostream& out, const std::vector<NodeRecord>& nodes) {
  for (const auto& r : nodes) out << r.id << '\t' << r.title << '\t' << r.namespace_id << '\n';
}

// ---------------------------------------------------------------------------
// edges.tsv: source_id<TAB>target_id
// ---------------------------------------------------------------------------

/// With a node count, endpoints at or above it raise EndpointOutOfRange.
inline std::vector<Edge> parse_edges(std::istream& in, std::optional<std::size_t> node_count = std::nullopt) {
  std::vector<Edge> edges;
  detail::for_each_row(in, 2, [&](const auto& f, std::size_t line) {
    Edge e{detail::parse_non_negative<NodeId>(f[0], line, "source id"),
           detail::parse_non_negative<NodeId>(f[1], line, "target id")};
    if (node_count && (e.source >= *node_count || e.target >= *node_count))
      throw InputError("EndpointOutOfRange", line,
                       "edge (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                           ") exceeds node count " + std::to_string(*node_count));
    edges.push_back(e);
  });
  return edges;
}

inline std::vector<Edge> load_edges(const std::filesystem::path& path,
                                    std::optional<std::size_t> node_count = std::nullopt) {
  auto in = detail::open_input(path);
  return parse_edges(in, node_count);
}

inline void write_edges(std::ostream& out, const std::vector<Edge>& edges) {
  for (const auto& e : edges) out << e.source << '\t' << e.target << '\n';
}

// ---------------------------------------------------------------------------
// edits.tsv: author_id<TAB>article_id
// ---------------------------------------------------------------------------

inline std::vector<EditRecord> parse_edit_log(std::istream& in) {
  std::vector<EditRecord> log;
  detail::for_each_row(in, 2, [&](const auto& f, std::size_t line) {
    log.push_back({detail::parse_non_negative<AuthorId>(f[0], line, "author id"),
                   detail::parse_non_negative<ArticleId>(f[1], line, "article id")});
  });
  return log;
}

inline std::vector<EditRecord> load_edit_log(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_edit_log(in);
}

inline void write_edit_log(std::ostream& out, const std::vector<EditRecord>& log) {
  for (const auto& r : log) out << r.author_id << '\t' << r.article_id << '\n';
}

// ---------------------------------------------------------------------------
// catmap.tsv: article_id<TAB>category_id
// catnames.tsv: category_id<TAB>name
// ---------------------------------------------------------------------------

inline CategoryMap parse_category_map(std::istream& map_in, std::istream& names_in) {
  CategoryMap map;
  std::map<CategoryId, std::size_t> first_use;
  detail::for_each_row(map_in, 2, [&](const auto& f, std::size_t line) {
    const auto article = detail::parse_non_negative<ArticleId>(f[0], line, "article id");
    const auto category = detail::parse_non_negative<CategoryId>(f[1], line, "category id");
    map.article_to_categories[article].insert(category);
    first_use.try_emplace(category, line);
  });
  detail::for_each_row(names_in, 2, [&](const auto& f, std::size_t line) {
    const auto category = detail::parse_non_negative<CategoryId>(f[0], line, "category id");
    if (!map.category_names.emplace(category, std::string(f[1])).second)
      throw InputError("ParseError", line, "category id " + std::to_string(category) + " named twice");
  });
  for (const auto& [category, line] : first_use)
    if (!map.category_names.contains(category))
      throw InputError("UnnamedCategory", line, "category id " + std::to_string(category) + " has no name");
  return map;
}

inline CategoryMap load_category_map(const std::filesystem::path& map_path, const std::filesystem::path& names_path) {
  auto map_in = detail::open_input(map_path);
  auto names_in = detail::open_input(names_path);
  return parse_category_map(map_in, names_in);
}

inline void write_category_map(std::ostream& map_out, std::ostream& names_out, const CategoryMap& map) {
  for (const auto& [article, categories] : map.article_to_categories)
    for (CategoryId c : categories) map_out << article << '\t' << c << '\n';
  for (const auto& [id, name] : map.category_names) names_out << id << '\t' << name << '\n';
}

// ---------------------------------------------------------------------------
// Main-namespace filter
// ---------------------------------------------------------------------------

struct FilteredInput {
  std::vector<NodeRecord> nodes;  // ids renumbered densely
  std::vector<Edge> edges;        // in new ids
  std::map<NodeId, NodeId> remap;  // original id -> new id, kept nodes only
};

/// Keeps namespace-0 nodes, renumbered 0..k-1 in node-table order, and the
/// edges between them. An edge naming an id absent from the node table
/// raises UnknownNodeInEdge.
inline FilteredInput filter_main_namespace(const std::vector<NodeRecord>& nodes, const std::vector<Edge>& edges) {
  std::map<NodeId, bool> known;  // id -> in main namespace
  for (const auto& r : nodes) known.emplace(r.id, r.namespace_id == 0);

  FilteredInput out;
  for (const auto& r : nodes) {
    if (r.namespace_id != 0) continue;
    const auto fresh = static_cast<NodeId>(out.nodes.size());
    out.remap.emplace(r.id, fresh);
    out.nodes.push_back({fresh, r.title, 0});
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    for (NodeId end : {e.source, e.target})
      if (!known.contains(end))
        throw Error(ErrorKind::parse, "UnknownNodeInEdge",
                    "edge " + std::to_string(i + 1) + " references unknown node " + std::to_string(end));
    auto s = out.remap.find(e.source);
    auto t = out.remap.find(e.target);
    if (s != out.remap.end() && t != out.remap.end()) out.edges.push_back({s->second, t->second});
  }
  return out;
}

/// Graph over a filtered node table, titles attached.
inline ArticleGraph build_article_graph(const FilteredInput& input) {
  ArticleGraph g = build_graph(input.edges, input.nodes.size());
  std::vector<std::string> titles;
  titles.reserve(input.nodes.size());
  for (const auto& r : input.nodes) titles.push_back(r.title);
  g.set_titles(std::move(titles));
  return g;
}

}  // namespace wgm
