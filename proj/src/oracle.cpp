#include "lhmine/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lhmine::oracle {
namespace {

struct Enumeration {
  std::vector<ItemId> vocabulary;
  std::vector<std::uint64_t> counts;  // indexed by subset mask over vocabulary

  Itemset itemset(std::uint64_t mask) const {
    std::vector<ItemId> ids;
    for (std::size_t i = 0; i < vocabulary.size(); ++i) {
      if ((mask >> i) & 1) ids.push_back(vocabulary[i]);
    }
    return Itemset(std::move(ids));
  }
};

Enumeration enumerate(std::span<const Transaction> transactions, double min_support) {
  if (transactions.empty()) throw std::invalid_argument("no transactions");
  validate_fraction(min_support, "min_support");

  Enumeration e;
  for (const auto& t : transactions) e.vocabulary.insert(e.vocabulary.end(), t.begin(), t.end());
  std::sort(e.vocabulary.begin(), e.vocabulary.end());
  e.vocabulary.erase(std::unique(e.vocabulary.begin(), e.vocabulary.end()), e.vocabulary.end());
  if (e.vocabulary.size() > kMaxItems)
    throw std::invalid_argument("oracle vocabulary of " + std::to_string(e.vocabulary.size()) +
                                " items exceeds the cap of " + std::to_string(kMaxItems));

  const std::size_t m = e.vocabulary.size();
  std::vector<std::uint64_t> rows;
  rows.reserve(transactions.size());
  for (const auto& t : transactions) {
    std::uint64_t bits = 0;
    for (auto id : t) {
      auto i = std::lower_bound(e.vocabulary.begin(), e.vocabulary.end(), id) - e.vocabulary.begin();
      bits |= std::uint64_t{1} << i;
    }
    rows.push_back(bits);
  }
  e.counts.assign(std::size_t{1} << m, 0);
  for (std::uint64_t mask = 1; mask < e.counts.size(); ++mask) {
    for (auto bits : rows) e.counts[mask] += (mask & ~bits) == 0;
  }
  return e;
}

}  // namespace

FrequentItemsetTable enumerate_frequent(std::span<const Transaction> transactions,
                                        double min_support) {
  auto e = enumerate(transactions, min_support);
  FrequentItemsetTable table(transactions.size(), min_support);
  const Threshold threshold(min_support);
  for (std::uint64_t mask = 1; mask < e.counts.size(); ++mask) {
    if (support_meets(e.counts[mask], transactions.size(), threshold))
      table.insert(e.itemset(mask), e.counts[mask]);
  }
  return table;
}

std::vector<Rule> enumerate_rules(std::span<const Transaction> transactions, double min_support,
                                  double min_confidence, double min_lift) {
  auto e = enumerate(transactions, min_support);
  const std::uint64_t n = transactions.size();
  const std::uint64_t full = e.counts.size() - 1;
  std::vector<Rule> rules;
  for (std::uint64_t a = 1; a <= full; ++a) {
    // c ranges over the non-empty subsets of the complement of a.
    const std::uint64_t rest = full & ~a;
    for (std::uint64_t c = rest; c != 0; c = (c - 1) & rest) {
      RuleCounts counts{e.counts[a | c], e.counts[a], e.counts[c], n};
      if (first_shortfall(counts, min_support, min_confidence, min_lift) != Shortfall::None)
        continue;
      rules.push_back(make_rule(e.itemset(a), e.itemset(c), counts));
    }
  }
  return rules;
}

}  // namespace lhmine::oracle
