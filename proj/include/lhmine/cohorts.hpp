#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lhmine/mining.hpp"
#include "lhmine/rules.hpp"
#include "lhmine/transactions.hpp"

namespace lhmine {

/// One subgroup mined end to end. Immutable once produced.
struct CohortResult {
  CohortSpec spec;
  MiningConfig config;
  std::size_t record_count = 0;
  IndicatorRates stats;
  FrequentItemsetTable itemsets{1, 1.0};
  std::vector<Rule> rules;                // ranked, truncated to config.top_k
  std::vector<Transaction> transactions;  // kept for raw-count lookups

  /// Exact counts for an arbitrary rule in this cohort, frequent or not.
  RuleCounts counts_for(const RuleKey& key) const;
};

/// filter_cohort -> encode_transactions -> frequent_itemsets -> derive_rules
/// -> rank_rules. Throws std::invalid_argument naming the cohort when it is empty.
CohortResult mine_cohort(std::span<const SessionRecord> records, const CohortSpec& spec,
                         const MiningConfig& config, MiningOptions options = {});

struct RuleMetrics {
  double lift = 0.0;
  double confidence = 0.0;
  double support = 0.0;
  friend bool operator==(const RuleMetrics&, const RuleMetrics&) = default;
};

struct ComparisonRow {
  RuleKey rule;
  std::optional<RuleMetrics> a;
  std::optional<RuleMetrics> b;
  std::optional<double> delta;  // b.lift - a.lift when the rule is in both lists
  std::string absent_reason;    // names the cohort missing the rule and why
};

struct CohortComparison {
  std::string cohort_a;
  std::string cohort_b;
  std::vector<ComparisonRow> rows;  // by max lift, descending
};

/// Side-by-side view of every rule in either cohort's top list.
/// Throws std::invalid_argument if the results were mined with different configs.
CohortComparison compare_cohorts(const CohortResult& a, const CohortResult& b);

struct OutcomeRules {
  std::vector<Rule> solved;    // consequent exactly {Status=SOLVED}
  std::vector<Rule> unsolved;  // consequent exactly {Status=UNSOLVED}
};

OutcomeRules outcome_rules(const CohortResult& result);

/// `rule,cohort_a_lift,cohort_b_lift,delta,cohort_a_conf,cohort_b_conf,cohort_a_support,cohort_b_support,absent_reason`
std::string comparison_to_csv(const CohortComparison& comparison);

/// `outcome,rank,antecedent,consequent,support,confidence,lift`
std::string outcomes_to_csv(const OutcomeRules& outcomes);

}  // namespace lhmine
