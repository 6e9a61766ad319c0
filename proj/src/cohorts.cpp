#include "lhmine/cohorts.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "lhmine/format.hpp"

namespace lhmine {
namespace {

RuleMetrics metrics_of(const Rule& r) { return {r.lift, r.confidence, r.support}; }

// Why a rule missing from `result`'s top list is absent there.
std::string absence_reason(const CohortResult& result, const RuleKey& key) {
  const auto& cfg = result.config;
  auto counts = result.counts_for(key);
  auto rule = make_rule(key.antecedent, key.consequent, counts);
  switch (first_shortfall(counts, cfg.min_support, cfg.min_confidence, cfg.min_lift)) {
    case Shortfall::Support:
      return "below support (observed support = " + format_fixed(rule.support, 3) + ")";
    case Shortfall::Confidence:
      return "below confidence (observed confidence = " + format_fixed(rule.confidence, 3) + ")";
    case Shortfall::Lift:
      return "below lift (observed lift = " + format_fixed(rule.lift, 3) + ")";
    case Shortfall::None:
      break;
  }
  return "outside top " + std::to_string(cfg.top_k) + " (lift = " + format_fixed(rule.lift, 3) + ")";
}

std::string cell(const std::optional<RuleMetrics>& m, double RuleMetrics::*field) {
  return m ? format_decimal((*m).*field) : "ABSENT";
}

}  // namespace

RuleCounts CohortResult::counts_for(const RuleKey& key) const {
  RuleCounts c;
  c.transactions = transactions.size();
  for (const auto& t : transactions) {
    bool has_a = key.antecedent.is_subset_of(t);
    bool has_c = key.consequent.is_subset_of(t);
    c.antecedent += has_a;
    c.consequent += has_c;
    c.joint += has_a && has_c;
  }
  return c;
}

CohortResult mine_cohort(std::span<const SessionRecord> records, const CohortSpec& spec,
                         const MiningConfig& config, MiningOptions options) {
  config.validate();
  auto members = filter_cohort(records, spec);
  if (members.empty())
    throw std::invalid_argument("cohort '" + spec.name + "' has no records");

  CohortResult result;
  result.spec = spec;
  result.config = config;
  result.record_count = members.size();
  result.stats = indicator_rates(members, spec.name);
  result.transactions = encode_transactions(members);
  result.itemsets = frequent_itemsets(result.transactions, config.min_support, options);
  result.rules = rank_rules(derive_rules(result.itemsets, config.min_confidence, config.min_lift),
                            config.top_k);
  return result;
}

CohortComparison compare_cohorts(const CohortResult& a, const CohortResult& b) {
  if (!(a.config == b.config))
    throw std::invalid_argument("compare_cohorts: '" + a.spec.name + "' and '" + b.spec.name +
                                "' were mined with different configurations");

  std::map<RuleKey, ComparisonRow> rows;
  for (const auto& r : a.rules) rows[r.key()].a = metrics_of(r);
  for (const auto& r : b.rules) rows[r.key()].b = metrics_of(r);

  CohortComparison out{a.spec.name, b.spec.name, {}};
  for (auto& [key, row] : rows) {
    row.rule = key;
    if (row.a && row.b) {
      row.delta = row.b->lift - row.a->lift;
    } else if (row.a) {
      row.absent_reason = b.spec.name + ": " + absence_reason(b, key);
    } else {
      row.absent_reason = a.spec.name + ": " + absence_reason(a, key);
    }
    out.rows.push_back(std::move(row));
  }
  auto max_lift = [](const ComparisonRow& r) {
    return std::max(r.a ? r.a->lift : 0.0, r.b ? r.b->lift : 0.0);
  };
  std::stable_sort(out.rows.begin(), out.rows.end(), [&](const auto& x, const auto& y) {
    return max_lift(x) > max_lift(y);
  });
  return out;
}

OutcomeRules outcome_rules(const CohortResult& result) {
  const Itemset solved{items::kStatusSolved};
  const Itemset unsolved{items::kStatusUnsolved};
  OutcomeRules out;
  for (const auto& r : result.rules) {
    if (r.consequent == solved) out.solved.push_back(r);
    else if (r.consequent == unsolved) out.unsolved.push_back(r);
  }
  return out;
}

std::string comparison_to_csv(const CohortComparison& c) {
  std::string out =
      "rule,cohort_a_lift,cohort_b_lift,delta,cohort_a_conf,cohort_b_conf,cohort_a_support,"
      "cohort_b_support,absent_reason\n";
  for (const auto& row : c.rows) {
    out += row.rule.to_string() + ',' + cell(row.a, &RuleMetrics::lift) + ',' +
           cell(row.b, &RuleMetrics::lift) + ',' +
           (row.delta ? format_decimal(*row.delta) : std::string()) + ',' +
           cell(row.a, &RuleMetrics::confidence) + ',' + cell(row.b, &RuleMetrics::confidence) +
           ',' + cell(row.a, &RuleMetrics::support) + ',' + cell(row.b, &RuleMetrics::support) +
           ',' + row.absent_reason + '\n';
  }
  return out;
}

std::string outcomes_to_csv(const OutcomeRules& outcomes) {
  std::string out = "outcome,rank,antecedent,consequent,support,confidence,lift\n";
  auto emit = [&out](std::string_view label, const std::vector<Rule>& rules) {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto& r = rules[i];
      out += std::string(label) + ',' + std::to_string(i + 1) + ',' + r.antecedent.to_string() +
             ',' + r.consequent.to_string() + ',' + format_decimal(r.support) + ',' +
             format_decimal(r.confidence) + ',' + format_decimal(r.lift) + '\n';
    }
  };
  emit("SOLVED", outcomes.solved);
  emit("UNSOLVED", outcomes.unsolved);
  return out;
}

}  // namespace lhmine
