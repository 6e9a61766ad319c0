#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lhmine/itemset.hpp"
#include "lhmine/rules.hpp"
#include "lhmine/transactions.hpp"

namespace lhmine::test {

inline std::string data_path(const std::string& name) {
  return std::string(LHMINE_TEST_DATA) + "/" + name;
}

/// The 17-session fixture with hand-checked rule metrics.
inline std::vector<SessionRecord> micro_records() {
  return read_records_file(data_path("micro_sessions.csv")).records;
}

/// Random transactions over item ids [0, items), each item present with
/// probability `density`. Empty transactions are allowed.
inline std::vector<Transaction> random_transactions(std::mt19937_64& rng, std::size_t items,
                                                    std::size_t count, double density) {
  std::bernoulli_distribution pick(density);
  std::vector<Transaction> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<ItemId> ids;
    for (ItemId i = 0; i < items; ++i) {
      if (pick(rng)) ids.push_back(i);
    }
    out.emplace_back(std::move(ids));
  }
  return out;
}

inline std::vector<Rule> sorted_by_key(std::vector<Rule> rules) {
  std::sort(rules.begin(), rules.end(),
            [](const Rule& a, const Rule& b) { return a.key() < b.key(); });
  return rules;
}

}  // namespace lhmine::test
