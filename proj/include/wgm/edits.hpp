#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wgm/error.hpp"
#include "wgm/records.hpp"

namespace wgm {

using EditCount = std::uint64_t;

/// Edits resolved onto a selected set of categories. An edit to an article
/// in k selected categories counts once toward each of them; edits to
/// articles outside the selection are dropped.
class EditLog {
 public:
  const std::vector<EditRecord>& records() const noexcept { return records_; }
  const std::map<std::pair<AuthorId, CategoryId>, EditCount>& resolved() const noexcept { return resolved_; }
  const std::set<CategoryId>& selected_categories() const noexcept { return selected_; }

  // Author -> edit count within one category; empty if the category has none.
  const std::map<AuthorId, EditCount>& authors_in(CategoryId category) const {
    static const std::map<AuthorId, EditCount> none;
    auto it = by_category_.find(category);
    return it == by_category_.end() ? none : it->second;
  }
  // Category -> edit count for one author.
  const std::map<CategoryId, EditCount>& categories_of(AuthorId author) const {
    static const std::map<CategoryId, EditCount> none;
    auto it = by_author_.find(author);
    return it == by_author_.end() ? none : it->second;
  }
  const std::map<AuthorId, std::map<CategoryId, EditCount>>& by_author() const noexcept { return by_author_; }
  bool empty() const noexcept { return resolved_.empty(); }

  friend EditLog resolve_edits(std::span<const EditRecord> records, const CategoryMap& catmap,
                               const std::set<CategoryId>& categories);

 private:
  std::vector<EditRecord> records_;
  std::set<CategoryId> selected_;
  std::map<std::pair<AuthorId, CategoryId>, EditCount> resolved_;
  std::map<CategoryId, std::map<AuthorId, EditCount>> by_category_;
  std::map<AuthorId, std::map<CategoryId, EditCount>> by_author_;
};

inline EditLog resolve_edits(std::span<const EditRecord> records, const CategoryMap& catmap,
                             const std::set<CategoryId>& categories) {
  if (categories.empty())
    throw Error(ErrorKind::empty_input, "EmptyCategorySelection", "no categories selected");
  EditLog log;
  log.records_.assign(records.begin(), records.end());
  log.selected_ = categories;
  for (const EditRecord& r : records) {
    auto it = catmap.article_to_categories.find(r.article_id);
    if (it == catmap.article_to_categories.end()) continue;
    for (CategoryId c : it->second) {
      if (!categories.contains(c)) continue;
      ++log.resolved_[{r.author_id, c}];
      ++log.by_category_[c][r.author_id];
      ++log.by_author_[r.author_id][c];
    }
  }
  return log;
}

// All named categories selected.
inline EditLog resolve_edits(std::span<const EditRecord> records, const CategoryMap& catmap) {
  return resolve_edits(records, catmap, catmap.category_ids());
}

// ---------------------------------------------------------------------------
// Per-category statistics
// ---------------------------------------------------------------------------

struct CategoryStats {
  CategoryId category_id = 0;
  EditCount n_edits = 0;
  std::size_t n_authors = 0;
  double ea_bar = 0.0;
  double top_fraction_share = 0.0;
  double top1_share = 0.0;
};

struct RankingOptions {
  double top_fraction = 0.2;
  // Author 0 aggregates every anonymous editor; by default it is left out of
  // the share rankings and of their denominators.
  bool include_anonymous = false;
};

namespace detail {

inline Error empty_category(CategoryId category) {
  return Error(ErrorKind::empty_input, "EmptyCategory", "category " + std::to_string(category) + " has no edits");
}

// Author counts for a category sorted descending, ties by ascending author id.
inline std::vector<EditCount> ranked_counts(const EditLog& log, CategoryId category, bool include_anonymous) {
  std::vector<std::pair<AuthorId, EditCount>> authors;
  for (const auto& [author, count] : log.authors_in(category))
    if (include_anonymous || author != anonymous_author) authors.emplace_back(author, count);
  if (authors.empty()) throw empty_category(category);
  std::sort(authors.begin(), authors.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<EditCount> counts;
  counts.reserve(authors.size());
  for (const auto& [author, count] : authors) counts.push_back(count);
  return counts;
}

inline double head_share(const std::vector<EditCount>& ranked, std::size_t head) {
  head = std::min(head, ranked.size());
  EditCount top = 0, total = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    total += ranked[i];
    if (i < head) top += ranked[i];
  }
  return static_cast<double>(top) / static_cast<double>(total);
}

inline std::size_t head_count(double top_fraction, std::size_t n_authors) {
  // ceil(f * n), computed so that exact products such as 0.2 * 5 are not
  // pushed to the next integer by binary rounding.
  const double scaled = top_fraction * static_cast<double>(n_authors);
  auto head = static_cast<std::size_t>(std::ceil(scaled - 1e-9 * std::max(1.0, scaled)));
  return std::clamp<std::size_t>(head, 1, n_authors);
}

}  // namespace detail

inline void check_fraction(double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction <= 1.0))
    throw Error(ErrorKind::numeric_domain, "InvalidFraction",
                "top fraction must lie in (0, 1], got " + std::to_string(top_fraction));
}

// Total category edits over distinct authors (anonymous aggregate included).
inline double edits_per_author(const EditLog& log, CategoryId category) {
  const auto& authors = log.authors_in(category);
  if (authors.empty()) throw detail::empty_category(category);
  EditCount total = 0;
  for (const auto& [author, count] : authors) total += count;
  return static_cast<double>(total) / static_cast<double>(authors.size());
}

/// Edit share of the ceil(top_fraction * n) most active authors.
inline double pareto_share(const EditLog& log, CategoryId category, double top_fraction = 0.2,
                           bool include_anonymous = false) {
  check_fraction(top_fraction);
  const auto ranked = detail::ranked_counts(log, category, include_anonymous);
  return detail::head_share(ranked, detail::head_count(top_fraction, ranked.size()));
}

inline double top_k_share(const EditLog& log, CategoryId category, std::size_t k = 1,
                          bool include_anonymous = false) {
  if (k == 0) throw Error(ErrorKind::numeric_domain, "InvalidCount", "k must be at least 1");
  return detail::head_share(detail::ranked_counts(log, category, include_anonymous), k);
}

inline CategoryStats category_stats(const EditLog& log, CategoryId category, const RankingOptions& options = {}) {
  check_fraction(options.top_fraction);
  const auto& authors = log.authors_in(category);
  if (authors.empty()) throw detail::empty_category(category);
  CategoryStats s;
  s.category_id = category;
  for (const auto& [author, count] : authors) s.n_edits += count;
  s.n_authors = authors.size();
  s.ea_bar = static_cast<double>(s.n_edits) / static_cast<double>(s.n_authors);
  s.top_fraction_share = pareto_share(log, category, options.top_fraction, options.include_anonymous);
  s.top1_share = top_k_share(log, category, 1, options.include_anonymous);
  return s;
}

// One row per selected category that received at least one ranked edit.
inline std::vector<CategoryStats> category_report(const EditLog& log, const RankingOptions& options = {}) {
  check_fraction(options.top_fraction);
  std::vector<CategoryStats> rows;
  for (CategoryId c : log.selected_categories()) {
    const auto& authors = log.authors_in(c);
    const bool ranked = std::any_of(authors.begin(), authors.end(), [&](const auto& a) {
      return options.include_anonymous || a.first != anonymous_author;
    });
    if (ranked) rows.push_back(category_stats(log, c, options));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Author profiles
// ---------------------------------------------------------------------------

struct AuthorProfile {
  AuthorId author_id = 0;
  std::map<CategoryId, EditCount> edits_per_category;
  EditCount total_edits = 0;
  std::size_t active_categories = 0;
  double max_share = 0.0;
  double entropy = 0.0;
};

namespace detail {

inline void check_profile(const AuthorProfile& profile) {
  if (profile.total_edits == 0)
    throw Error(ErrorKind::empty_input, "EmptyProfile",
                "author " + std::to_string(profile.author_id) + " has no edits");
}

}  // namespace detail

// Largest single-category fraction of the author's edits.
inline double max_share(const AuthorProfile& profile) {
  detail::check_profile(profile);
  EditCount top = 0;
  for (const auto& [c, count] : profile.edits_per_category) top = std::max(top, count);
  return static_cast<double>(top) / static_cast<double>(profile.total_edits);
}

/// Shannon entropy in bits of the author's edit distribution over
/// categories, H = -sum p log2 p; 0 for a single-category author.
inline double author_entropy(const AuthorProfile& profile) {
  detail::check_profile(profile);
  const double total = static_cast<double>(profile.total_edits);
  double h = 0.0;
  for (const auto& [c, count] : profile.edits_per_category) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

inline AuthorProfile make_profile(AuthorId author, std::map<CategoryId, EditCount> edits) {
  AuthorProfile p;
  p.author_id = author;
  p.edits_per_category = std::move(edits);
  for (const auto& [c, count] : p.edits_per_category) {
    p.total_edits += count;
    if (count > 0) ++p.active_categories;
  }
  if (p.total_edits > 0) {
    p.max_share = max_share(p);
    p.entropy = author_entropy(p);
  }
  return p;
}

inline AuthorProfile author_profile(const EditLog& log, AuthorId author) {
  return make_profile(author, log.categories_of(author));
}

// Ascending author id.
inline std::vector<AuthorProfile> author_profiles(const EditLog& log) {
  std::vector<AuthorProfile> profiles;
  profiles.reserve(log.by_author().size());
  for (const auto& [author, edits] : log.by_author()) profiles.push_back(make_profile(author, edits));
  return profiles;
}

struct ActiveCategoryHistogram {
  std::map<std::size_t, std::size_t> authors_by_category_count;  // active categories -> authors
  bool anonymous_present = false;
  std::size_t anonymous_active_categories = 0;
};

// Every author, the anonymous aggregate included; its position is flagged.
inline ActiveCategoryHistogram active_category_histogram(const EditLog& log) {
  if (log.empty()) throw Error(ErrorKind::empty_input, "EmptyLog", "edit log has no resolved edits");
  ActiveCategoryHistogram h;
  for (const auto& [author, edits] : log.by_author()) {
    ++h.authors_by_category_count[edits.size()];
    if (author == anonymous_author) {
      h.anonymous_present = true;
      h.anonymous_active_categories = edits.size();
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Entropy report
// ---------------------------------------------------------------------------

struct AuthorEntropy {
  AuthorId author_id = 0;
  double entropy = 0.0;
};

struct EntropyReport {
  std::vector<AuthorEntropy> entries;  // ascending author id
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

inline EntropyReport entropy_report(const EditLog& log) {
  if (log.empty()) throw Error(ErrorKind::empty_input, "EmptyLog", "edit log has no resolved edits");
  EntropyReport report;
  double sum = 0.0;
  for (const auto& profile : author_profiles(log)) {
    report.entries.push_back({profile.author_id, profile.entropy});
    sum += profile.entropy;
  }
  auto [lo, hi] = std::minmax_element(report.entries.begin(), report.entries.end(),
                                      [](const auto& a, const auto& b) { return a.entropy < b.entropy; });
  report.min = lo->entropy;
  report.max = hi->entropy;
  report.mean = sum / static_cast<double>(report.entries.size());
  return report;
}

/// Fixed-width bins [i*w, (i+1)*w) from 0 through the bin holding the
/// largest value; empty bins in between are kept.
inline std::vector<HistogramBin> entropy_histogram(const EntropyReport& report, double bin_width = 0.25) {
  if (!(bin_width > 0.0))
    throw Error(ErrorKind::numeric_domain, "InvalidBinWidth", "bin width must be positive");
  std::vector<HistogramBin> bins;
  for (const auto& e : report.entries) {
    const auto index = static_cast<std::size_t>(std::floor(e.entropy / bin_width));
    if (index >= bins.size()) {
      const std::size_t old = bins.size();
      bins.resize(index + 1);
      for (std::size_t i = old; i < bins.size(); ++i)
        bins[i] = {static_cast<double>(i) * bin_width, static_cast<double>(i + 1) * bin_width, 0};
    }
    ++bins[index].count;
  }
  return bins;
}

}  // namespace wgm
