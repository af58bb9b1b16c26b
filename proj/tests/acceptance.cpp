// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Usage: acceptance [fixture_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wgm/degree.hpp"
#include "wgm/edits.hpp"
#include "wgm/graph.hpp"
#include "wgm/structure.hpp"
#include "wgm/synth.hpp"
#include "wgm_cli.hpp"

namespace {

namespace fs = std::filesystem;
using namespace wgm;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Graphs of 25 sizes up to 2000 nodes, alternating uniform and preferential.
std::vector<std::pair<std::vector<Edge>, std::size_t>> clustering_graphs() {
  std::vector<std::pair<std::vector<Edge>, std::size_t>> graphs;
  for (std::size_t i = 0; i < 25; ++i) {
    const std::size_t n = 80 * (i + 1);
    ArticleGraph g = i % 2 == 0 ? generate_uniform(n, 6.0 / static_cast<double>(n), 100 + i)
                                : generate_preferential(n, 2 + i % 3, 100 + i);
    graphs.emplace_back(g.edges(), n);
  }
  return graphs;
}

Outcome criterion_clustering() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t within = 0, total = 0;
  double worst_exact = 0;
  for (const auto& [edges, n] : clustering_graphs()) {
    const ArticleGraph g = build_graph(edges, n);
    const double exact = exact_clustering(g);
    const double brute = oracle::mean(oracle::triangle_clustering(edges, n));
    worst_exact = std::max(worst_exact, std::abs(exact - brute));
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const double sampled = sampled_clustering(g, 200 * n, seed).final_estimate;
      ++total;
      if (std::abs(sampled - exact) <= 0.01) ++within;
    }
  }
  const double elapsed = seconds_since(start);
  o.require(worst_exact <= 1e-9, "exact vs triangle oracle deviation " + std::to_string(worst_exact));
  o.require(within * 100 >= 95 * total, "sampled within 0.01 for only " + std::to_string(within) + "/" + std::to_string(total));
  o.require(elapsed < 60.0, "runtime " + fmt(elapsed, 1) + " s");
  o.detail += " [exact max dev " + std::to_string(worst_exact) + ", sampled " + std::to_string(within) + "/" +
              std::to_string(total) + " within 0.01, " + fmt(elapsed, 1) + " s]";
  return o;
}

Outcome criterion_power_law() {
  Outcome o;
  const auto start = Clock::now();
  std::string fits;
  for (double a : {1.2, 2.0, 3.0}) {
    DegreeHistogram h;
    for (std::size_t k = 1; k <= 1000; ++k) {
      const auto n = static_cast<std::size_t>(std::llround(1e6 * std::pow(static_cast<double>(k), -a)));
      if (n > 0) h.entries[k] = n;
    }
    const double alpha = fit_power_law(h).alpha;
    fits += " a=" + fmt(a, 1) + "->" + fmt(alpha);
    o.require(std::abs(alpha - a) <= 0.02, "exact histogram a=" + fmt(a, 1) + " fitted " + fmt(alpha));
  }
  DegreeHistogram sampled;
  for (auto s : oracle::power_law_samples(2.5, 100000, 2024)) ++sampled.entries[s];
  const double alpha = fit_power_law(sampled).alpha;
  fits += " iid2.5->" + fmt(alpha);
  o.require(std::abs(alpha - 2.5) <= 0.15, "inverse-CDF sample fitted " + fmt(alpha));
  const double elapsed = seconds_since(start);
  o.require(elapsed < 10.0, "runtime " + fmt(elapsed, 1) + " s");
  o.detail += " [" + fits + ", " + fmt(elapsed, 1) + " s]";
  return o;
}

Outcome criterion_generator_fit() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t in_range = 0, r2_wins = 0;
  double lo = 1e9, hi = -1e9;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pa = generate_preferential(10000, 3, seed);
    const auto fit = fit_power_law(degree_histogram(pa, DegreeSelector::total), 3);
    lo = std::min(lo, fit.alpha);
    hi = std::max(hi, fit.alpha);
    if (fit.alpha >= 2.4 && fit.alpha <= 3.4) ++in_range;
    const double p = static_cast<double>(pa.edge_count()) / (10000.0 * 9999.0);
    const auto er = generate_uniform(10000, p, seed);
    const auto er_fit = fit_power_law(degree_histogram(er, DegreeSelector::total), 3);
    if (fit.r_squared > er_fit.r_squared) ++r2_wins;
  }
  const double elapsed = seconds_since(start);
  o.require(in_range >= 18, "alpha in range for " + std::to_string(in_range) + "/20");
  o.require(r2_wins == 20, "r_squared beats uniform in " + std::to_string(r2_wins) + "/20");
  o.require(elapsed < 120.0, "runtime " + fmt(elapsed, 1) + " s");
  o.detail += " [alpha in range " + std::to_string(in_range) + "/20, span " + fmt(lo, 3) + ".." + fmt(hi, 3) +
              ", r2 wins " + std::to_string(r2_wins) + "/20, " + fmt(elapsed, 1) + " s]";
  return o;
}

Outcome criterion_classification() {
  Outcome o;
  std::size_t graphs = 0;
  for (const auto& [edges, n] : clustering_graphs()) {
    const auto q = classify_authorities(build_graph(edges, n));
    o.require(q.total() == n, "quadrants do not sum to node count");
    ++graphs;
  }
  // Bidirectional ring and complete graph: every degree ties.
  std::vector<Edge> ring, complete;
  for (NodeId v = 0; v < 50; ++v) {
    ring.push_back({v, (v + 1) % 50});
    ring.push_back({(v + 1) % 50, v});
  }
  for (NodeId u = 0; u < 6; ++u)
    for (NodeId v = 0; v < 6; ++v)
      if (u != v) complete.push_back({u, v});
  for (const auto& [edges, n] : std::vector<std::pair<std::vector<Edge>, std::size_t>>{{ring, 50}, {complete, 6}}) {
    for (double p : {0.1, 0.5, 0.9}) {
      const auto q = classify_authorities(build_graph(edges, n), p);
      o.require(q.regular == n, "all-equal graph not 100% regular");
    }
    ++graphs;
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 10 * seed;
    const auto edges = oracle::random_edges(n, 4 * n, seed);
    const auto q = classify_authorities(build_graph(edges, n));
    const auto ref = oracle::sort_and_scan(oracle::scan_degrees(edges, n), 0.90);
    o.require(q.all_round == ref.all_round && q.referring == ref.referring && q.guru == ref.guru &&
                  q.regular == ref.regular,
              "mismatch with sort-and-scan oracle at seed " + std::to_string(seed));
    o.require(q.total() == n, "quadrants do not sum to node count");
    ++graphs;
  }
  o.detail += " [" + std::to_string(graphs) + " graphs]";
  return o;
}

Outcome criterion_paths() {
  Outcome o;
  double worst = 0;
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const std::size_t n = 50 + 25 * seed;  // up to 200
    std::vector<Edge> edges = seed % 2 ? generate_preferential(n, 2, seed).edges() : oracle::random_edges(n, 3 * n, seed);
    const auto g = build_graph(edges, n);
    for (bool directed : {true, false}) {
      const auto exact = exact_avg_path(g, directed);
      const auto ref = oracle::floyd_warshall(edges, n, directed);
      worst = std::max(worst, std::abs(exact.mean_path_length - ref.mean));
      o.require(exact.reachable_pairs == ref.reachable && exact.sampled_pairs == ref.pairs, "pair counts differ");
      ++checked;
    }
  }
  o.require(worst <= 1e-9, "exhaustive mean deviates by " + std::to_string(worst));

  const auto g = generate_preferential(200, 2, 77);
  const auto directed_g = generate_uniform(200, 0.03, 77);
  const double exact_u = exact_avg_path(g, false).mean_path_length;
  const double exact_d = exact_avg_path(directed_g, true).mean_path_length;
  double worst_sampled = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    worst_sampled = std::max(worst_sampled, std::abs(sampled_avg_path(g, 20000, seed, false).mean_path_length - exact_u));
    worst_sampled =
        std::max(worst_sampled, std::abs(sampled_avg_path(directed_g, 20000, seed, true).mean_path_length - exact_d));
  }
  o.require(worst_sampled <= 0.05, "sampled mean off by " + fmt(worst_sampled));
  o.detail += " [" + std::to_string(checked) + " exhaustive checks, max dev " + std::to_string(worst) +
              "; sampled max dev " + fmt(worst_sampled) + "]";
  return o;
}

// Shares by direct sort of raw per-author counts.
double brute_share(std::vector<std::uint64_t> counts, std::size_t head) {
  std::sort(counts.rbegin(), counts.rend());
  double top = 0, total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    total += static_cast<double>(counts[i]);
    if (i < head) top += static_cast<double>(counts[i]);
  }
  return top / total;
}

Outcome criterion_edit_invariants() {
  Outcome o;
  std::size_t authors_checked = 0, categories_checked = 0;
  const std::vector<double> fractions{0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0};
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    ZipfEditSpec spec;
    spec.n_authors = 20 + 7 * seed;
    spec.n_categories = 2 + seed % 39;
    spec.total_edits = 500 + 90 * seed;
    spec.s = 0.5 + 0.03 * static_cast<double>(seed);
    spec.home_probability = 0.5 + 0.01 * static_cast<double>(seed % 50);
    spec.seed = seed;
    const auto synthetic = generate_zipf_edits(spec);
    const auto log = resolve_edits(synthetic.records, synthetic.categories);

    std::vector<EditRecord> tripled;
    for (const auto& r : synthetic.records)
      for (int i = 0; i < 3; ++i) tripled.push_back(r);
    const auto scaled = resolve_edits(tripled, synthetic.categories);

    // Raw per-(author, category) counts straight from the records.
    std::map<AuthorId, std::map<CategoryId, std::uint64_t>> by_author;
    std::map<CategoryId, std::map<AuthorId, std::uint64_t>> by_category;
    for (const auto& r : synthetic.records) {
      const CategoryId c = *synthetic.categories.article_to_categories.at(r.article_id).begin();
      ++by_author[r.author_id][c];
      ++by_category[c][r.author_id];
    }

    const double bound = std::log2(static_cast<double>(spec.n_categories));
    for (const auto& [author, per] : by_author) {
      const auto profile = author_profile(log, author);
      const auto scaled_profile = author_profile(scaled, author);
      std::vector<std::uint64_t> counts;
      std::uint64_t total = 0, top = 0;
      for (auto [c, n] : per) {
        counts.push_back(n);
        total += n;
        top = std::max(top, n);
      }
      const double h = oracle::entropy_bits(counts);
      o.require(profile.entropy >= 0.0 && profile.entropy <= bound + 1e-12, "entropy outside [0, log2 C]");
      o.require((profile.entropy == 0.0) == (profile.active_categories == 1), "entropy zero iff single category");
      o.require(std::abs(profile.entropy - h) <= 1e-9, "entropy differs from recomputation");
      o.require(std::abs(profile.max_share - static_cast<double>(top) / static_cast<double>(total)) <= 1e-9,
                "max_share differs from recomputation");
      o.require(std::abs(scaled_profile.entropy - profile.entropy) <= 1e-9 &&
                    std::abs(scaled_profile.max_share - profile.max_share) <= 1e-12,
                "profile not invariant under count scaling");
      ++authors_checked;
    }

    for (const auto& [category, per] : by_category) {
      std::vector<std::uint64_t> counts;
      std::uint64_t total = 0;
      for (auto [a, n] : per) {
        counts.push_back(n);
        total += n;
      }
      o.require(pareto_share(log, category, 1.0) == 1.0, "pareto_share(1.0) != 1");
      double previous = 0.0;
      for (double f : fractions) {
        const double share = pareto_share(log, category, f);
        o.require(share >= previous, "pareto_share not monotone in fraction");
        previous = share;
        const auto head = static_cast<std::size_t>(std::ceil(f * static_cast<double>(counts.size()) - 1e-9));
        o.require(std::abs(share - brute_share(counts, std::max<std::size_t>(head, 1))) <= 1e-9,
                  "pareto_share differs from recomputation");
        o.require(std::abs(pareto_share(scaled, category, f) - share) <= 1e-12, "pareto_share not scale invariant");
        o.require(top_k_share(log, category, 1) <= share + 1e-12, "top-1 share exceeds head share");
      }
      const double top1 = top_k_share(log, category, 1);
      o.require(std::abs(top1 - brute_share(counts, 1)) <= 1e-9, "top1 differs from recomputation");
      o.require(std::abs(top_k_share(scaled, category, 1) - top1) <= 1e-12, "top1 not scale invariant");
      const double ea = edits_per_author(log, category);
      o.require(std::abs(ea - static_cast<double>(total) / static_cast<double>(counts.size())) <= 1e-9,
                "ea_bar differs from recomputation");
      o.require(std::abs(edits_per_author(scaled, category) - 3.0 * ea) <= 1e-9, "ea_bar does not scale");
      ++categories_checked;
    }
  }
  o.detail += " [50 logs, " + std::to_string(authors_checked) + " author profiles, " +
              std::to_string(categories_checked) + " category rankings]";
  return o;
}

Outcome criterion_ea_bar() {
  Outcome o;
  CategoryMap map;
  map.article_to_categories[0] = {0};
  map.category_names[0] = "specialist";
  std::vector<EditRecord> records;
  // 13 authors, 4977 edits.
  for (AuthorId a = 1; a <= 13; ++a) {
    const int count = a == 1 ? 4977 - 12 * 294 : 294;
    for (int i = 0; i < count; ++i) records.push_back({a, 0});
  }
  const double ea = edits_per_author(resolve_edits(records, map), 0);
  char rounded[32];
  std::snprintf(rounded, sizeof rounded, "%.1f", ea);
  o.require(std::string(rounded) == "382.8", std::string("ea_bar rounds to ") + rounded);
  o.detail += std::string(" [4977/13 = ") + fmt(ea, 4) + " -> " + rounded + "]";
  return o;
}

struct CliRun {
  int status = 0;
  std::string out;
};

CliRun cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "wgm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.status = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str() + err.str();
  return r;
}

std::map<std::string, std::string> directory_contents(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    files[entry.path().filename().string()] = {std::istreambuf_iterator<char>(in), {}};
  }
  return files;
}

Outcome criterion_determinism(const fs::path& fixture) {
  Outcome o;
  const fs::path work = fs::temp_directory_path() / "wgm_acceptance_determinism";
  fs::remove_all(work);
  const std::string nodes = (fixture / "nodes.tsv").string(), edges = (fixture / "edges.tsv").string(),
                    edits = (fixture / "edits.tsv").string(), catmap = (fixture / "catmap.tsv").string(),
                    catnames = (fixture / "catnames.tsv").string();
  const std::vector<std::string> graph{"--nodes", nodes, "--edges", edges};
  const std::vector<std::string> log{"--edits", edits, "--catmap", catmap, "--catnames", catnames};
  auto join = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const std::vector<std::vector<std::string>> commands{
      join({"degrees"}, graph),
      join({"classify"}, graph),
      join({"cluster", "--seed", "3"}, graph),
      join({"paths", "--seed", "3"}, graph),
      join({"fit", "--xmin", "5"}, graph),
      join({"categories"}, log),
      join({"entropy"}, log),
      {"synth", "--kind", "preferential", "--n", "2000", "--m", "3", "--seed", "9"},
      {"synth", "--kind", "uniform", "--n", "1000", "--p", "0.01", "--seed", "9"},
      {"synth", "--kind", "zipf", "--authors", "200", "--categories", "12", "--seed", "9"},
      join(join({"report", "--seed", "11"}, graph), log),
  };
  std::size_t index = 0;
  double report_seconds = 0;
  for (const auto& command : commands) {
    std::string outputs[2];
    std::map<std::string, std::string> files[2];
    for (int round = 0; round < 2; ++round) {
      const fs::path dir = work / (std::to_string(index) + "_" + std::to_string(round));
      fs::create_directories(dir);
      const auto start = Clock::now();
      const auto r = cli_run(join(command, {"--out", dir.string()}));
      if (command[0] == "report") report_seconds = std::max(report_seconds, seconds_since(start));
      o.require(r.status == 0, command[0] + " failed: " + r.out);
      outputs[round] = r.out;
      files[round] = directory_contents(dir);
    }
    o.require(outputs[0] == outputs[1], command[0] + " stdout differs between runs");
    o.require(files[0] == files[1], command[0] + " output files differ between runs");
    o.require(!files[0].empty() || command[0] == "classify" || command[0] == "fit" || command[0] == "paths",
              command[0] + " wrote no files");
    ++index;
  }
  fs::remove_all(work);
  o.require(report_seconds < 10.0, "report took " + fmt(report_seconds, 2) + " s");
  o.detail += " [" + std::to_string(commands.size()) + " commands x2, report " + fmt(report_seconds, 2) + " s]";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path fixture = argc > 1 ? fs::path(argv[1]) : fs::path("data/fixture_1k");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1. clustering oracle equivalence and sampling accuracy", criterion_clustering},
      {"2. power-law fit recovery", criterion_power_law},
      {"3. preferential-attachment fit pipeline", criterion_generator_fit},
      {"4. authority classification consistency", criterion_classification},
      {"5. path-length oracle", criterion_paths},
      {"6. edit analytics invariants", criterion_edit_invariants},
      {"7. edits-per-author arithmetic (4977/13)", criterion_ea_bar},
      {"8. determinism and report runtime", [&] { return criterion_determinism(fixture); }},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
