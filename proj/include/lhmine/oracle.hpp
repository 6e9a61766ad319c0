#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lhmine/mining.hpp"
#include "lhmine/rules.hpp"

namespace lhmine::oracle {

/// Largest observed vocabulary the oracle accepts (2^20 subsets).
inline constexpr std::size_t kMaxItems = 20;

/// Every non-empty subset of the observed vocabulary, counted by direct scan.
/// Throws std::invalid_argument on empty input, a bad min_support, or more
/// than kMaxItems distinct items.
FrequentItemsetTable enumerate_frequent(std::span<const Transaction> transactions,
                                        double min_support);

/// Every disjoint non-empty (A, C) over the vocabulary that passes the three
/// thresholds, with metrics from direct counts. Unordered.
std::vector<Rule> enumerate_rules(std::span<const Transaction> transactions, double min_support,
                                  double min_confidence, double min_lift);

}  // namespace lhmine::oracle
