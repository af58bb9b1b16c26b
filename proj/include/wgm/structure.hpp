#pragma once

#include <cstddef>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "wgm/error.hpp"
#include "wgm/graph.hpp"
#include "wgm/parallel.hpp"
#include "wgm/random.hpp"

namespace wgm {

// Size of the intersection of two ascending ranges.
inline std::size_t sorted_intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

namespace detail {

inline double local_clustering_unchecked(const ArticleGraph& graph, NodeId node) {
  const auto nbrs = graph.neighbors(node);
  const std::size_t deg = nbrs.size();
  if (deg < 2) return 0.0;
  // Each triangle through `node` is seen once from each of its two other corners.
  std::size_t links = 0;
  for (NodeId u : nbrs) links += sorted_intersection_size(nbrs, graph.neighbors(u));
  return static_cast<double>(links) / (static_cast<double>(deg) * static_cast<double>(deg - 1));
}

}  // namespace detail

/// Watts-Strogatz coefficient on the undirected projection: linked
/// neighbour pairs over all neighbour pairs, 0 below two neighbours.
inline double local_clustering(const ArticleGraph& graph, NodeId node) {
  check_node(graph, node);
  return detail::local_clustering_unchecked(graph, node);
}

inline double exact_clustering(const ArticleGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw empty_graph();
  std::vector<double> coefficient(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t v = begin; v < end; ++v)
      coefficient[v] = detail::local_clustering_unchecked(graph, static_cast<NodeId>(v));
  });
  double sum = 0.0;
  for (double c : coefficient) sum += c;
  return sum / static_cast<double>(n);
}

struct TracePoint {
  std::size_t samples = 0;
  double running_mean = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct ClusteringTrace {
  std::vector<TracePoint> estimates;
  double final_estimate = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t default_trace_stride = 100;

/// Running mean of local_clustering over nodes drawn uniformly with
/// replacement. A trace point is recorded every `stride` samples and after the
/// last one. The draw order is fixed by the seed; coefficient evaluation is
/// batched across workers and accumulated in draw order.
inline ClusteringTrace sampled_clustering(const ArticleGraph& graph, std::size_t n_samples, std::uint64_t seed,
                                          std::size_t stride = default_trace_stride) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw empty_graph();
  if (n_samples == 0) throw Error(ErrorKind::numeric_domain, "InvalidSampleCount", "n_samples must be at least 1");
  if (stride == 0) stride = 1;

  ClusteringTrace trace;
  trace.seed = seed;
  trace.estimates.reserve(n_samples / stride + 1);
  Engine engine(seed);

  // With more draws than nodes, scoring every node once is cheaper than
  // rescoring repeats.
  std::vector<double> table;
  if (n_samples >= n) {
    table.resize(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end, unsigned) {
      for (std::size_t v = begin; v < end; ++v)
        table[v] = detail::local_clustering_unchecked(graph, static_cast<NodeId>(v));
    });
  }

  constexpr std::size_t batch = 1 << 14;
  std::vector<NodeId> draws;
  std::vector<double> values;
  double sum = 0.0;
  std::size_t done = 0;
  while (done < n_samples) {
    const std::size_t take = std::min(batch, n_samples - done);
    draws.resize(take);
    values.resize(take);
    for (auto& d : draws) d = static_cast<NodeId>(uniform_below(engine, n));
    if (!table.empty()) {
      for (std::size_t i = 0; i < take; ++i) values[i] = table[draws[i]];
    } else {
      parallel_for(take, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) values[i] = detail::local_clustering_unchecked(graph, draws[i]);
      });
    }
    for (std::size_t i = 0; i < take; ++i) {
      sum += values[i];
      ++done;
      if (done % stride == 0 || done == n_samples)
        trace.estimates.push_back({done, sum / static_cast<double>(done)});
    }
  }
  trace.final_estimate = trace.estimates.back().running_mean;
  return trace;
}

// ---------------------------------------------------------------------------
// Shortest paths
// ---------------------------------------------------------------------------

struct PathSampleResult {
  double mean_path_length = 0.0;
  std::size_t reachable_pairs = 0;
  std::size_t sampled_pairs = 0;
  double unreachable_fraction = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint32_t unreachable_distance = UINT32_MAX;

/// Reusable breadth-first search state; distances are reset lazily.
class BfsWorkspace {
 public:
  explicit BfsWorkspace(std::size_t node_count) : distance_(node_count, unreachable_distance) {}

  // Distance from source to target, or unreachable_distance.
  std::uint32_t distance(const ArticleGraph& graph, NodeId source, NodeId target, bool directed) {
    if (source == target) return 0;
    reset();
    visit(source, 0);
    std::size_t head = 0;
    while (head < visited_.size()) {
      const NodeId v = visited_[head++];
      const std::uint32_t next = distance_[v] + 1;
      for (NodeId w : directed ? graph.successors(v) : graph.neighbors(v)) {
        if (distance_[w] != unreachable_distance) continue;
        if (w == target) return next;
        visit(w, next);
      }
    }
    return unreachable_distance;
  }

  // Fills distances from source to every node; returned view stays valid
  // until the next call.
  std::span<const std::uint32_t> distances_from(const ArticleGraph& graph, NodeId source, bool directed) {
    reset();
    visit(source, 0);
    std::size_t head = 0;
    while (head < visited_.size()) {
      const NodeId v = visited_[head++];
      for (NodeId w : directed ? graph.successors(v) : graph.neighbors(v)) {
        if (distance_[w] != unreachable_distance) continue;
        visit(w, distance_[v] + 1);
      }
    }
    return distance_;
  }

 private:
  void visit(NodeId v, std::uint32_t d) {
    distance_[v] = d;
    visited_.push_back(v);
  }
  void reset() {
    for (NodeId v : visited_) distance_[v] = unreachable_distance;
    visited_.clear();
  }

  std::vector<std::uint32_t> distance_;
  std::vector<NodeId> visited_;
};

namespace detail {

inline void check_path_graph(const ArticleGraph& graph) {
  if (graph.node_count() == 0) throw empty_graph();
  if (graph.node_count() < 2)
    throw Error(ErrorKind::empty_input, "SingleNode", "path sampling needs at least two nodes");
}

inline PathSampleResult summarize_paths(std::uint64_t distance_sum, std::size_t reachable, std::size_t pairs,
                                        std::uint64_t seed) {
  PathSampleResult r;
  r.sampled_pairs = pairs;
  r.reachable_pairs = reachable;
  r.mean_path_length = reachable > 0 ? static_cast<double>(distance_sum) / static_cast<double>(reachable) : 0.0;
  r.unreachable_fraction = static_cast<double>(pairs - reachable) / static_cast<double>(pairs);
  r.seed = seed;
  return r;
}

}  // namespace detail

/// Mean breadth-first distance over ordered pairs (s, t), s != t, drawn
/// uniformly with replacement. Unreachable pairs are excluded from the mean
/// and reported through unreachable_fraction.
inline PathSampleResult sampled_avg_path(const ArticleGraph& graph, std::size_t n_pairs, std::uint64_t seed,
                                         bool directed) {
  detail::check_path_graph(graph);
  if (n_pairs == 0) throw Error(ErrorKind::numeric_domain, "InvalidSampleCount", "n_pairs must be at least 1");
  const std::size_t n = graph.node_count();

  Engine engine(seed);
  std::vector<Edge> pairs(n_pairs);
  for (auto& p : pairs) {
    const auto s = uniform_below(engine, n);
    auto t = uniform_below(engine, n - 1);
    if (t >= s) ++t;
    p = {static_cast<NodeId>(s), static_cast<NodeId>(t)};
  }

  const unsigned workers = thread_count();
  std::vector<std::uint64_t> sums(workers, 0);
  std::vector<std::size_t> reached(workers, 0);
  parallel_for(
      n_pairs,
      [&](std::size_t begin, std::size_t end, unsigned w) {
        BfsWorkspace bfs(n);
        for (std::size_t i = begin; i < end; ++i) {
          const auto d = bfs.distance(graph, pairs[i].source, pairs[i].target, directed);
          if (d == unreachable_distance) continue;
          sums[w] += d;
          ++reached[w];
        }
      },
      workers);
  std::uint64_t sum = 0;
  std::size_t reachable = 0;
  for (unsigned w = 0; w < workers; ++w) {
    sum += sums[w];
    reachable += reached[w];
  }
  return detail::summarize_paths(sum, reachable, n_pairs, seed);
}

/// Every ordered pair exactly once: one breadth-first search per source.
inline PathSampleResult exact_avg_path(const ArticleGraph& graph, bool directed) {
  detail::check_path_graph(graph);
  const std::size_t n = graph.node_count();
  const unsigned workers = thread_count();
  std::vector<std::uint64_t> sums(workers, 0);
  std::vector<std::size_t> reached(workers, 0);
  parallel_for(
      n,
      [&](std::size_t begin, std::size_t end, unsigned w) {
        BfsWorkspace bfs(n);
        for (std::size_t s = begin; s < end; ++s) {
          const auto dist = bfs.distances_from(graph, static_cast<NodeId>(s), directed);
          for (std::size_t t = 0; t < n; ++t) {
            if (t == s || dist[t] == unreachable_distance) continue;
            sums[w] += dist[t];
            ++reached[w];
          }
        }
      },
      workers);
  std::uint64_t sum = 0;
  std::size_t reachable = 0;
  for (unsigned w = 0; w < workers; ++w) {
    sum += sums[w];
    reachable += reached[w];
  }
  return detail::summarize_paths(sum, reachable, n * (n - 1), 0);
}

}  // namespace wgm
