#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wgm/error.hpp"

namespace wgm {

// Dense index into a graph's node table.
using NodeId = std::uint32_t;

struct Edge {
  NodeId source;
  NodeId target;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct DegreeSummary {
  std::size_t indegree = 0;
  std::size_t outdegree = 0;
  std::size_t degree = 0;

  friend bool operator==(const DegreeSummary&, const DegreeSummary&) = default;
};

// What build_graph discarded while normalising the edge list.
struct BuildReport {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Immutable directed graph without self-loops or parallel edges.
///
/// Successor, predecessor and undirected-neighbour lists are stored in CSR
/// form and each list is sorted ascending, so neighbourhood intersections run
/// in linear time. Titles are optional labels; no metric reads them.
class ArticleGraph {
 public:
  ArticleGraph() : out_offsets_(1, 0), in_offsets_(1, 0), und_offsets_(1, 0) {}

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return out_targets_.size(); }
  const BuildReport& build_report() const noexcept { return report_; }

  std::span<const NodeId> successors(NodeId v) const {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeId> predecessors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  // Neighbours in the undirected projection: u ~ v iff u->v or v->u.
  std::span<const NodeId> neighbors(NodeId v) const {
    return {und_targets_.data() + und_offsets_[v], und_targets_.data() + und_offsets_[v + 1]};
  }

  std::size_t outdegree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t indegree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }
  std::size_t undirected_degree(NodeId v) const { return und_offsets_[v + 1] - und_offsets_[v]; }

  bool has_edge(NodeId source, NodeId target) const {
    auto succ = successors(source);
    return std::binary_search(succ.begin(), succ.end(), target);
  }

  // Edges in (source, target) lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count());
    for (NodeId v = 0; v < node_count_; ++v)
      for (NodeId t : successors(v)) result.push_back({v, t});
    return result;
  }

  bool has_titles() const noexcept { return !titles_.empty(); }
  const std::vector<std::string>& titles() const noexcept { return titles_; }

  void set_titles(std::vector<std::string> titles) {
    if (!titles.empty() && titles.size() != node_count_)
      throw Error(ErrorKind::usage, "TitleCountMismatch",
                  "expected " + std::to_string(node_count_) + " titles, got " +
                      std::to_string(titles.size()));
    titles_ = std::move(titles);
  }

  friend bool operator==(const ArticleGraph& a, const ArticleGraph& b) {
    return a.node_count_ == b.node_count_ && a.out_offsets_ == b.out_offsets_ &&
           a.out_targets_ == b.out_targets_;
  }

  friend ArticleGraph build_graph(std::span<const Edge> edges, std::size_t node_count);

 private:
  std::size_t node_count_ = 0;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
  std::vector<std::size_t> und_offsets_;
  std::vector<NodeId> und_targets_;
  std::vector<std::string> titles_;
  BuildReport report_;
};

namespace detail {

// Counting-sort pass building CSR rows keyed by `key` holding `value`.
template <typename Key, typename Value>
void fill_csr(std::span<const Edge> edges, std::size_t node_count, Key key, Value value,
              std::vector<std::size_t>& offsets, std::vector<NodeId>& items) {
  offsets.assign(node_count + 1, 0);
  for (const Edge& e : edges) ++offsets[key(e) + 1];
  for (std::size_t i = 0; i < node_count; ++i) offsets[i + 1] += offsets[i];
  items.assign(edges.size(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) items[cursor[key(e)]++] = value(e);
  for (std::size_t v = 0; v < node_count; ++v)
    std::sort(items.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              items.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
}

}  // namespace detail

/// Builds a graph over nodes [0, node_count). Self-loops and repeated edges
/// are dropped and tallied in the build report; an endpoint outside the node
/// range throws EndpointOutOfRange.
inline ArticleGraph build_graph(std::span<const Edge> edges, std::size_t node_count) {
  ArticleGraph g;
  g.node_count_ = node_count;

  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.source >= node_count || e.target >= node_count)
      throw Error(ErrorKind::parse, "EndpointOutOfRange",
                  "edge " + std::to_string(i) + " (" + std::to_string(e.source) + ", " +
                      std::to_string(e.target) + ") exceeds node count " + std::to_string(node_count));
    if (e.source == e.target) {
      ++g.report_.self_loops_dropped;
      continue;
    }
    kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  auto last = std::unique(kept.begin(), kept.end());
  g.report_.duplicates_dropped = static_cast<std::size_t>(kept.end() - last);
  kept.erase(last, kept.end());

  auto by_source = [](const Edge& e) { return e.source; };
  auto by_target = [](const Edge& e) { return e.target; };
  detail::fill_csr(kept, node_count, by_source, by_target, g.out_offsets_, g.out_targets_);
  detail::fill_csr(kept, node_count, by_target, by_source, g.in_offsets_, g.in_sources_);

  // Undirected projection: merge each node's successor and predecessor lists.
  g.und_offsets_.assign(node_count + 1, 0);
  g.und_targets_.clear();
  g.und_targets_.reserve(2 * kept.size());
  for (NodeId v = 0; v < node_count; ++v) {
    auto succ = g.successors(v);
    auto pred = g.predecessors(v);
    std::set_union(succ.begin(), succ.end(), pred.begin(), pred.end(),
                   std::back_inserter(g.und_targets_));
    g.und_offsets_[v + 1] = g.und_targets_.size();
  }
  g.und_targets_.shrink_to_fit();
  return g;
}

inline ArticleGraph build_graph(std::initializer_list<Edge> edges, std::size_t node_count) {
  return build_graph(std::span<const Edge>(edges.begin(), edges.size()), node_count);
}

inline void check_node(const ArticleGraph& graph, NodeId node) {
  if (node >= graph.node_count())
    throw Error(ErrorKind::numeric_domain, "NodeOutOfRange",
                "node " + std::to_string(node) + " not below node count " +
                    std::to_string(graph.node_count()));
}

inline DegreeSummary degree_of(const ArticleGraph& graph, NodeId node) {
  check_node(graph, node);
  const std::size_t in = graph.indegree(node);
  const std::size_t out = graph.outdegree(node);
  return {in, out, in + out};
}

// (2 * edge_count) / node_count.
inline double mean_degree(const ArticleGraph& graph) {
  if (graph.node_count() == 0) throw empty_graph();
  return 2.0 * static_cast<double>(graph.edge_count()) / static_cast<double>(graph.node_count());
}

}  // namespace wgm
