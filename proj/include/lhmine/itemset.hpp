#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "lhmine/item.hpp"

namespace lhmine {

/// A canonically sorted, duplicate-free set of items.
class Itemset {
 public:
  Itemset() = default;
  Itemset(std::initializer_list<ItemId> ids);
  explicit Itemset(std::vector<ItemId> ids);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  ItemId operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<ItemId>& ids() const { return items_; }

  bool contains(ItemId id) const;
  bool is_subset_of(const Itemset& other) const;
  bool intersects(const Itemset& other) const;

  Itemset with(ItemId id) const;
  Itemset without_index(std::size_t i) const;
  Itemset united(const Itemset& other) const;

  /// Items joined by ';' in canonical order, e.g. "Skipped=YES;Status=UNSOLVED".
  std::string to_string() const;

  /// Parses the ';'-joined form. Throws std::invalid_argument on unknown items.
  static Itemset parse(std::string_view text);

  friend auto operator<=>(const Itemset&, const Itemset&) = default;
  friend bool operator==(const Itemset&, const Itemset&) = default;

 private:
  std::vector<ItemId> items_;
};

using Transaction = Itemset;

}  // namespace lhmine
