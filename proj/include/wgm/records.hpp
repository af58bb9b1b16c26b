#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "wgm/graph.hpp"

namespace wgm {

using AuthorId = std::int64_t;
using ArticleId = std::int64_t;
using CategoryId = std::int64_t;

// Author 0 is the aggregate of all anonymous editors.
inline constexpr AuthorId anonymous_author = 0;

// One row of nodes.tsv. Namespace 0 is the main (article) namespace.
struct NodeRecord {
  NodeId id = 0;
  std::string title;
  std::int64_t namespace_id = 0;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

// One edit; repeated rows are repeated edits.
struct EditRecord {
  AuthorId author_id = 0;
  ArticleId article_id = 0;

  friend bool operator==(const EditRecord&, const EditRecord&) = default;
};

struct CategoryMap {
  std::map<ArticleId, std::set<CategoryId>> article_to_categories;
  std::map<CategoryId, std::string> category_names;
  std::map<CategoryId, std::string> class_of_category;  // optional grouping, may be empty

  std::set<CategoryId> category_ids() const {
    std::set<CategoryId> ids;
    for (const auto& [id, name] : category_names) ids.insert(id);
    return ids;
  }

  friend bool operator==(const CategoryMap&, const CategoryMap&) = default;
};

}  // namespace wgm
