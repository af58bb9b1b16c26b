#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wgm/error.hpp"
#include "wgm/graph.hpp"
#include "wgm/parallel.hpp"

namespace wgm {

enum class DegreeSelector { in, out, total };

inline std::string_view to_string(DegreeSelector which) {
  switch (which) {
    case DegreeSelector::in: return "in";
    case DegreeSelector::out: return "out";
    case DegreeSelector::total: return "total";
  }
  return "total";
}

inline std::size_t select_degree(const ArticleGraph& g, NodeId v, DegreeSelector which) {
  switch (which) {
    case DegreeSelector::in: return g.indegree(v);
    case DegreeSelector::out: return g.outdegree(v);
    case DegreeSelector::total: return g.indegree(v) + g.outdegree(v);
  }
  return 0;
}

/// Node counts per degree value. Degree 0 is never stored as a key; nodes of
/// selected degree 0 are counted in zero_degree_nodes, so
/// sum(entries) + zero_degree_nodes == node_count.
struct DegreeHistogram {
  DegreeSelector which = DegreeSelector::total;
  std::map<std::size_t, std::size_t> entries;
  std::size_t zero_degree_nodes = 0;

  std::size_t node_count() const {
    std::size_t total = zero_degree_nodes;
    for (const auto& [k, n] : entries) total += n;
    return total;
  }

  friend bool operator==(const DegreeHistogram&, const DegreeHistogram&) = default;
};

inline DegreeHistogram degree_histogram(const ArticleGraph& graph, DegreeSelector which) {
  if (graph.node_count() == 0) throw empty_graph();
  // Per-worker tallies over fixed node ranges, merged in worker order. Integer
  // sums, so the merge order cannot change the result.
  const unsigned workers = thread_count();
  std::vector<std::map<std::size_t, std::size_t>> partial(workers);
  parallel_for(
      graph.node_count(),
      [&](std::size_t begin, std::size_t end, unsigned w) {
        for (std::size_t v = begin; v < end; ++v)
          ++partial[w][select_degree(graph, static_cast<NodeId>(v), which)];
      },
      workers);
  DegreeHistogram hist;
  hist.which = which;
  for (const auto& tally : partial)
    for (const auto& [k, n] : tally) hist.entries[k] += n;
  if (auto zero = hist.entries.find(0); zero != hist.entries.end()) {
    hist.zero_degree_nodes = zero->second;
    hist.entries.erase(zero);
  }
  return hist;
}

// ---------------------------------------------------------------------------
// Authority quadrants
// ---------------------------------------------------------------------------

struct AuthorityQuadrants {
  std::size_t all_round = 0;  // high in, high out
  std::size_t referring = 0;  // low in, high out
  std::size_t guru = 0;       // high in, low out
  std::size_t regular = 0;    // low in, low out
  std::size_t in_threshold = 0;
  std::size_t out_threshold = 0;

  std::size_t total() const { return all_round + referring + guru + regular; }
  friend bool operator==(const AuthorityQuadrants&, const AuthorityQuadrants&) = default;
};

enum class Authority { all_round, referring, guru, regular };

inline std::string_view to_string(Authority a) {
  switch (a) {
    case Authority::all_round: return "all_round";
    case Authority::referring: return "referring";
    case Authority::guru: return "guru";
    case Authority::regular: return "regular";
  }
  return "regular";
}

inline void check_percentile(double percentile) {
  if (!(percentile > 0.0 && percentile < 1.0))
    throw Error(ErrorKind::numeric_domain, "InvalidPercentile",
                "percentile must lie in (0, 1), got " + std::to_string(percentile));
}

/// Nearest-rank empirical quantile: the ceil(p*n)-th smallest value.
inline std::size_t nearest_rank_quantile(std::vector<std::size_t> values, double percentile) {
  check_percentile(percentile);
  if (values.empty()) throw empty_graph();
  const auto n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1), values.end());
  return values[rank - 1];
}

inline Authority classify_node(std::size_t indegree, std::size_t outdegree,
                               std::size_t in_threshold, std::size_t out_threshold) {
  const bool high_in = indegree > in_threshold;
  const bool high_out = outdegree > out_threshold;
  if (high_in && high_out) return Authority::all_round;
  if (high_in) return Authority::guru;
  if (high_out) return Authority::referring;
  return Authority::regular;
}

/// A degree is high when it strictly exceeds the percentile quantile of its
/// own axis; in- and outdegree thresholds are computed independently.
inline AuthorityQuadrants classify_authorities(const ArticleGraph& graph, double percentile = 0.90) {
  check_percentile(percentile);
  if (graph.node_count() == 0) throw empty_graph();
  const auto n = graph.node_count();
  std::vector<std::size_t> in(n), out(n);
  for (NodeId v = 0; v < n; ++v) {
    in[v] = graph.indegree(v);
    out[v] = graph.outdegree(v);
  }
  AuthorityQuadrants q;
  q.in_threshold = nearest_rank_quantile(in, percentile);
  q.out_threshold = nearest_rank_quantile(out, percentile);
  for (NodeId v = 0; v < n; ++v) {
    switch (classify_node(in[v], out[v], q.in_threshold, q.out_threshold)) {
      case Authority::all_round: ++q.all_round; break;
      case Authority::referring: ++q.referring; break;
      case Authority::guru: ++q.guru; break;
      case Authority::regular: ++q.regular; break;
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// Power-law fitting
// ---------------------------------------------------------------------------

enum class FitMethod {
  least_squares,      // straight line through log(n_k) against log(k)
  maximum_likelihood  // exact discrete MLE
};

// Point weights for the least-squares fit. Counts weighting treats each
// log(n_k) as having Poisson variance 1/n_k, so sparse tail bins holding one
// or two nodes do not flatten the slope.
enum class FitWeighting { counts, uniform };

struct PowerLawFit {
  double alpha = 0.0;
  double log_prefactor = 0.0;  // natural-log intercept: log n_k ~ log_prefactor - alpha log k
  std::size_t x_min = 1;
  double r_squared = 0.0;
  std::size_t points_used = 0;
};

struct FitOptions {
  std::size_t x_min = 1;
  FitMethod method = FitMethod::least_squares;
  FitWeighting weighting = FitWeighting::counts;
};

namespace detail {

// zeta(s, q) = sum_{k>=0} (q + k)^-s for s > 1: direct sum, then the
// Euler-Maclaurin tail.
inline double hurwitz_zeta(double s, double q) {
  constexpr int direct = 16;
  double sum = 0;
  for (int k = 0; k < direct; ++k) sum += std::pow(q + k, -s);
  const double x = q + direct;
  const double xs = std::pow(x, -s);
  sum += x * xs / (s - 1.0) + xs / 2.0;
  sum += s * xs / (12.0 * x);
  sum -= s * (s + 1) * (s + 2) * xs / (720.0 * x * x * x);
  sum += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * xs / (30240.0 * x * x * x * x * x);
  return sum;
}

}  // namespace detail

inline PowerLawFit fit_power_law(const DegreeHistogram& hist, const FitOptions& options) {
  const std::size_t x_min = std::max<std::size_t>(options.x_min, 1);
  std::vector<std::pair<double, double>> points;  // (log k, log n_k)
  std::vector<double> weights;
  for (auto it = hist.entries.lower_bound(x_min); it != hist.entries.end(); ++it) {
    if (it->second == 0) continue;
    points.emplace_back(std::log(static_cast<double>(it->first)), std::log(static_cast<double>(it->second)));
    weights.push_back(options.weighting == FitWeighting::counts ? static_cast<double>(it->second) : 1.0);
  }
  if (points.size() < 2)
    throw Error(ErrorKind::numeric_domain, "InsufficientPoints",
                "need at least 2 distinct degree values >= " + std::to_string(x_min) + ", found " +
                    std::to_string(points.size()));

  // Weighted least squares, centred sums.
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sw += weights[i];
    sx += weights[i] * points[i].first;
    sy += weights[i] * points[i].second;
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dx = points[i].first - mx, dy = points[i].second - my;
    sxx += weights[i] * dx * dx;
    sxy += weights[i] * dx * dy;
    syy += weights[i] * dy * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r = points[i].second - (intercept + slope * points[i].first);
    ss_res += weights[i] * r * r;
  }

  PowerLawFit fit;
  fit.x_min = x_min;
  fit.points_used = points.size();
  fit.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;

  if (options.method == FitMethod::least_squares) {
    fit.alpha = -slope;
    fit.log_prefactor = intercept;
    return fit;
  }

  // Discrete likelihood: maximise -alpha S - N ln zeta(alpha, k_min), which
  // is concave in alpha.
  double n = 0, log_sum = 0;
  for (auto it = hist.entries.lower_bound(x_min); it != hist.entries.end(); ++it) {
    n += static_cast<double>(it->second);
    log_sum += static_cast<double>(it->second) * std::log(static_cast<double>(it->first));
  }
  const double q = static_cast<double>(x_min);
  auto log_likelihood = [&](double a) { return -a * log_sum - n * std::log(detail::hurwitz_zeta(a, q)); };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1.0 + 1e-9, hi = 50.0;
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = log_likelihood(x1), f2 = log_likelihood(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = log_likelihood(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = log_likelihood(x1);
    }
  }
  fit.alpha = (lo + hi) / 2.0;
  // Prefactor chosen so the fitted line passes through the weighted centroid.
  fit.log_prefactor = my + fit.alpha * mx;
  return fit;
}

inline PowerLawFit fit_power_law(const DegreeHistogram& hist, std::size_t x_min = 1) {
  FitOptions options;
  options.x_min = x_min;
  return fit_power_law(hist, options);
}

// ---------------------------------------------------------------------------
// Ranking
// ---------------------------------------------------------------------------

/// The k nodes of highest selected degree, descending, ties by ascending id.
inline std::vector<std::pair<NodeId, std::size_t>> top_k_by_degree(const ArticleGraph& graph,
                                                                   DegreeSelector which, std::size_t k) {
  if (graph.node_count() == 0) throw empty_graph();
  if (k == 0) throw Error(ErrorKind::numeric_domain, "InvalidCount", "k must be at least 1");
  std::vector<std::pair<NodeId, std::size_t>> ranked(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) ranked[v] = {v, select_degree(graph, v, which)};
  k = std::min(k, ranked.size());
  auto order = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(), order);
  ranked.resize(k);
  return ranked;
}

}  // namespace wgm
