#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lhmine/itemset.hpp"
#include "lhmine/thresholds.hpp"

namespace lhmine {

struct MiningOptions {
  /// Worker threads for support counting; 0 picks the hardware concurrency.
  /// Results are identical for every value.
  unsigned threads = 1;
};

/// Frequent itemsets with their exact transaction counts.
class FrequentItemsetTable {
 public:
  FrequentItemsetTable(std::size_t transaction_count, double min_support);

  void insert(const Itemset& itemset, std::uint64_t count);

  std::optional<std::uint64_t> count(const Itemset& itemset) const;
  std::optional<double> support(const Itemset& itemset) const;
  bool contains(const Itemset& itemset) const { return entries_.contains(itemset); }

  const std::map<Itemset, std::uint64_t>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t transaction_count() const { return transaction_count_; }
  double min_support() const { return min_support_.value(); }
  const Threshold& min_support_threshold() const { return min_support_; }

  friend bool operator==(const FrequentItemsetTable& a, const FrequentItemsetTable& b) {
    return a.transaction_count_ == b.transaction_count_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t transaction_count_;
  Threshold min_support_;
  std::map<Itemset, std::uint64_t> entries_;
};

/// Level-wise Apriori. Every itemset with support >= min_support (exact
/// comparison) is returned with its exact count.
/// Throws std::invalid_argument on an empty transaction list or a
/// min_support outside (0, 1].
FrequentItemsetTable frequent_itemsets(std::span<const Transaction> transactions,
                                       double min_support, MiningOptions options = {});

/// Join (k-1)-itemsets sharing their first k-2 items, then drop candidates
/// with an infrequent (k-1)-subset. Output is sorted and duplicate-free.
/// Throws std::invalid_argument on mixed or zero input sizes.
std::vector<Itemset> generate_candidates(std::span<const Itemset> frequent);

/// Number of transactions containing every item of each candidate.
std::map<Itemset, std::uint64_t> count_support(std::span<const Itemset> candidates,
                                               std::span<const Transaction> transactions);

/// `itemset,support`, ordered by size then canonical order.
std::string itemsets_to_csv(const FrequentItemsetTable& table);

void validate_fraction(double value, const char* name);

}  // namespace lhmine
