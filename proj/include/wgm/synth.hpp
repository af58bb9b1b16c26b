#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wgm/error.hpp"
#include "wgm/graph.hpp"
#include "wgm/random.hpp"
#include "wgm/records.hpp"

namespace wgm {

inline Error invalid_spec(const std::string& what) {
  return Error(ErrorKind::numeric_domain, "InvalidSpec", what);
}

/// Preferential attachment growth. Nodes 0..m form a bidirectional clique;
/// every later node adds m out-edges to distinct earlier nodes, each chosen
/// with probability proportional to its current total degree.
inline ArticleGraph generate_preferential(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) throw invalid_spec("preferential attachment needs 1 <= m < n");

  std::vector<Edge> edges;
  edges.reserve(m * (m + 1) + (n - m - 1) * m);
  // A node of total degree d occupies d slots; a uniform slot is a
  // degree-proportional node.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * edges.capacity());
  auto add = [&](NodeId s, NodeId t) {
    edges.push_back({s, t});
    endpoints.push_back(s);
    endpoints.push_back(t);
  };
  for (NodeId u = 0; u <= m; ++u)
    for (NodeId v = 0; v <= m; ++v)
      if (u != v) add(u, v);

  Engine engine(seed);
  std::vector<NodeId> chosen;
  chosen.reserve(m);
  for (std::size_t v = m + 1; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < m) {
      const NodeId t = endpoints[uniform_below(engine, endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (NodeId t : chosen) add(static_cast<NodeId>(v), t);
  }
  return build_graph(edges, n);
}

/// Directed Erdos-Renyi graph: every ordered pair u != v is an edge with
/// probability p. Uses geometric skips over the n(n-1) pair sequence.
inline ArticleGraph generate_uniform(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw invalid_spec("edge probability must lie in [0, 1]");
  std::vector<Edge> edges;
  if (n < 2 || p == 0.0) return build_graph(edges, n);

  const std::uint64_t slots = static_cast<std::uint64_t>(n) * (n - 1);
  auto pair_at = [n](std::uint64_t slot) {
    const auto u = static_cast<NodeId>(slot / (n - 1));
    auto v = static_cast<NodeId>(slot % (n - 1));
    if (v >= u) ++v;
    return Edge{u, v};
  };
  if (p == 1.0) {
    edges.reserve(slots);
    for (std::uint64_t s = 0; s < slots; ++s) edges.push_back(pair_at(s));
    return build_graph(edges, n);
  }

  Engine engine(seed);
  const double log_q = std::log1p(-p);
  edges.reserve(static_cast<std::size_t>(static_cast<double>(slots) * p * 1.1) + 16);
  std::uint64_t slot = 0;
  while (true) {
    const double skip = std::floor(std::log1p(-uniform_unit(engine)) / log_q);
    if (skip >= static_cast<double>(slots - slot)) break;
    slot += static_cast<std::uint64_t>(skip);
    edges.push_back(pair_at(slot));
    if (++slot >= slots) break;
  }
  return build_graph(edges, n);
}

struct ZipfEditSpec {
  std::size_t n_authors = 100;
  std::size_t n_categories = 10;
  std::size_t total_edits = 10000;
  double s = 1.0;                       // Zipf exponent of author activity
  double home_probability = 0.8;        // chance an edit lands in the author's home category
  std::size_t articles_per_category = 5;
  std::uint64_t seed = 42;
};

struct SyntheticEdits {
  std::vector<EditRecord> records;
  CategoryMap categories;
};

/// Zipf-distributed synthetic contributions. Authors are numbered 1..n (0 is
/// reserved for the anonymous aggregate); author r edits with weight r^-s.
/// Category c owns articles c*A .. c*A+A-1, each in that category only.
inline SyntheticEdits generate_zipf_edits(const ZipfEditSpec& spec) {
  if (spec.n_authors < 1 || spec.n_categories < 1 || spec.total_edits < 1 || spec.articles_per_category < 1)
    throw invalid_spec("author, category, edit and article counts must be at least 1");
  if (!(spec.s > 0.0)) throw invalid_spec("Zipf exponent must be positive");
  if (!(spec.home_probability >= 0.0 && spec.home_probability <= 1.0))
    throw invalid_spec("home probability must lie in [0, 1]");

  Engine engine(spec.seed);
  SyntheticEdits out;
  const auto per = static_cast<ArticleId>(spec.articles_per_category);
  for (std::size_t c = 0; c < spec.n_categories; ++c) {
    const auto id = static_cast<CategoryId>(c);
    out.categories.category_names[id] = "category_" + std::to_string(c);
    for (ArticleId a = 0; a < per; ++a) out.categories.article_to_categories[id * per + a] = {id};
  }

  std::vector<double> cumulative(spec.n_authors);
  double acc = 0.0;
  for (std::size_t r = 0; r < spec.n_authors; ++r) {
    acc += std::pow(static_cast<double>(r + 1), -spec.s);
    cumulative[r] = acc;
  }
  std::vector<std::size_t> home(spec.n_authors);
  for (auto& h : home) h = uniform_below(engine, spec.n_categories);

  out.records.reserve(spec.total_edits);
  for (std::size_t e = 0; e < spec.total_edits; ++e) {
    const double u = uniform_unit(engine) * acc;
    auto rank = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    rank = std::min(rank, spec.n_authors - 1);
    std::size_t category = home[rank];
    if (spec.n_categories > 1 && uniform_unit(engine) >= spec.home_probability) {
      category = uniform_below(engine, spec.n_categories - 1);
      if (category >= home[rank]) ++category;
    }
    const auto article = static_cast<ArticleId>(category) * per +
                         static_cast<ArticleId>(uniform_below(engine, spec.articles_per_category));
    out.records.push_back({static_cast<AuthorId>(rank + 1), article});
  }
  return out;
}

inline SyntheticEdits generate_zipf_edits(std::size_t n_authors, std::size_t n_categories, std::size_t total_edits,
                                          double s, std::uint64_t seed) {
  ZipfEditSpec spec;
  spec.n_authors = n_authors;
  spec.n_categories = n_categories;
  spec.total_edits = total_edits;
  spec.s = s;
  spec.seed = seed;
  return generate_zipf_edits(spec);
}

}  // namespace wgm
