#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lhmine/itemset.hpp"
#include "lhmine/mining.hpp"

namespace lhmine {

/// Raw transaction counts behind a rule's metrics.
struct RuleCounts {
  std::uint64_t joint = 0;       // transactions containing antecedent and consequent
  std::uint64_t antecedent = 0;
  std::uint64_t consequent = 0;
  std::uint64_t transactions = 0;

  friend bool operator==(const RuleCounts&, const RuleCounts&) = default;
};

/// Antecedent/consequent pair identifying a rule independent of its metrics.
struct RuleKey {
  Itemset antecedent;
  Itemset consequent;

  /// "Skipped=YES => Status=UNSOLVED"
  std::string to_string() const;
  /// Parses the to_string form; "->" is accepted in place of "=>".
  /// Throws std::invalid_argument.
  static RuleKey parse(std::string_view text);

  friend auto operator<=>(const RuleKey&, const RuleKey&) = default;
  friend bool operator==(const RuleKey&, const RuleKey&) = default;
};

struct Rule {
  Itemset antecedent;
  Itemset consequent;
  double support = 0.0;
  double confidence = 0.0;
  double lift = 0.0;
  RuleCounts counts;

  RuleKey key() const { return {antecedent, consequent}; }

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Builds a rule with metrics computed from the counts:
/// support = joint/n, confidence = joint/antecedent, lift = joint*n/(antecedent*consequent).
Rule make_rule(Itemset antecedent, Itemset consequent, const RuleCounts& counts);

struct MiningConfig {
  double min_support = 0.20;
  double min_confidence = 0.60;
  double min_lift = 1.0;  // strict: lift > min_lift
  std::size_t top_k = 30;

  /// Throws std::invalid_argument when a field is outside its domain.
  void validate() const;

  friend bool operator==(const MiningConfig&, const MiningConfig&) = default;
};

/// Threshold a rule fails first, in reporting order.
enum class Shortfall { None, Support, Confidence, Lift };

Shortfall first_shortfall(const RuleCounts& counts, double min_support, double min_confidence,
                          double min_lift);

/// "support 0.231 < 0.25", "confidence 0.364 < 0.50", "lift 1.000 <= 1.00"; empty for None.
std::string describe_shortfall(const RuleCounts& counts, double min_support,
                               double min_confidence, double min_lift);

/// All rules A => C with A ∪ C frequent, confidence >= min_confidence and
/// lift > min_lift.
std::vector<Rule> derive_rules(const FrequentItemsetTable& table, double min_confidence,
                               double min_lift);

/// Ranking order: lift, confidence, support (all descending), then fewer
/// items, then the antecedent and consequent strings.
bool ranks_before(const Rule& a, const Rule& b);

/// Sorts by ranks_before and keeps the first top_k.
std::vector<Rule> rank_rules(std::vector<Rule> rules, std::size_t top_k);

/// `antecedent,consequent,support,confidence,lift`, rows in the given order.
std::string rules_to_csv(std::span<const Rule> rules);

}  // namespace lhmine
