#include "lhmine/itemset.hpp"

#include <algorithm>
#include <stdexcept>

namespace lhmine {

Itemset::Itemset(std::initializer_list<ItemId> ids) : Itemset(std::vector<ItemId>(ids)) {}

Itemset::Itemset(std::vector<ItemId> ids) : items_(std::move(ids)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool Itemset::contains(ItemId id) const {
  return std::binary_search(items_.begin(), items_.end(), id);
}

bool Itemset::is_subset_of(const Itemset& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

bool Itemset::intersects(const Itemset& other) const {
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a;
    else ++b;
  }
  return false;
}

Itemset Itemset::with(ItemId id) const {
  auto ids = items_;
  ids.push_back(id);
  return Itemset(std::move(ids));
}

Itemset Itemset::without_index(std::size_t i) const {
  Itemset out;
  out.items_.reserve(items_.size() - 1);
  for (std::size_t j = 0; j < items_.size(); ++j) {
    if (j != i) out.items_.push_back(items_[j]);
  }
  return out;
}

Itemset Itemset::united(const Itemset& other) const {
  Itemset out;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(out.items_));
  return out;
}

std::string Itemset::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ';';
    out += item_label(items_[i]);
  }
  return out;
}

Itemset Itemset::parse(std::string_view text) {
  std::vector<ItemId> ids;
  while (!text.empty()) {
    auto cut = text.find(';');
    auto token = text.substr(0, cut);
    auto id = parse_item_label(token);
    if (!id) throw std::invalid_argument("unknown item '" + std::string(token) + "'");
    ids.push_back(*id);
    if (cut == std::string_view::npos) break;
    text.remove_prefix(cut + 1);
  }
  return Itemset(std::move(ids));
}

}  // namespace lhmine
