#include "lhmine/rules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lhmine/format.hpp"

namespace lhmine {

std::string RuleKey::to_string() const {
  return antecedent.to_string() + " => " + consequent.to_string();
}

RuleKey RuleKey::parse(std::string_view text) {
  auto arrow = text.find("=>");
  auto width = 2;
  if (arrow == std::string_view::npos) arrow = text.find("->");
  if (arrow == std::string_view::npos)
    throw std::invalid_argument("rule '" + std::string(text) + "' lacks '=>'");
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '{')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '}')) s.remove_suffix(1);
    return s;
  };
  RuleKey key{Itemset::parse(trim(text.substr(0, arrow))),
              Itemset::parse(trim(text.substr(arrow + width)))};
  if (key.antecedent.empty() || key.consequent.empty())
    throw std::invalid_argument("rule '" + std::string(text) + "' has an empty side");
  if (key.antecedent.intersects(key.consequent))
    throw std::invalid_argument("rule '" + std::string(text) + "' has overlapping sides");
  return key;
}

Rule make_rule(Itemset antecedent, Itemset consequent, const RuleCounts& c) {
  Rule r;
  r.antecedent = std::move(antecedent);
  r.consequent = std::move(consequent);
  r.counts = c;
  const auto joint = static_cast<double>(c.joint);
  const auto n = static_cast<double>(c.transactions);
  r.support = c.transactions ? joint / n : 0.0;
  r.confidence = c.antecedent ? joint / static_cast<double>(c.antecedent) : 0.0;
  r.lift = (c.antecedent && c.consequent)
               ? (joint * n) / (static_cast<double>(c.antecedent) * static_cast<double>(c.consequent))
               : 0.0;
  return r;
}

void MiningConfig::validate() const {
  validate_fraction(min_support, "min_support");
  validate_fraction(min_confidence, "min_confidence");
  if (!(min_lift >= 0.0) || !std::isfinite(min_lift))
    throw std::invalid_argument("min_lift must be >= 0");
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
}

Shortfall first_shortfall(const RuleCounts& c, double min_support, double min_confidence,
                          double min_lift) {
  if (!support_meets(c.joint, c.transactions, Threshold(min_support))) return Shortfall::Support;
  if (!confidence_meets(c.joint, c.antecedent, Threshold(min_confidence)))
    return Shortfall::Confidence;
  if (!lift_exceeds(c.joint, c.antecedent, c.consequent, c.transactions, Threshold(min_lift)))
    return Shortfall::Lift;
  return Shortfall::None;
}

std::string describe_shortfall(const RuleCounts& c, double min_support, double min_confidence,
                               double min_lift) {
  Rule r = make_rule({}, {}, c);
  switch (first_shortfall(c, min_support, min_confidence, min_lift)) {
    case Shortfall::Support:
      return "support " + format_fixed(r.support, 3) + " < " + format_threshold(min_support);
    case Shortfall::Confidence:
      return "confidence " + format_fixed(r.confidence, 3) + " < " +
             format_threshold(min_confidence);
    case Shortfall::Lift:
      return "lift " + format_fixed(r.lift, 3) + " <= " + format_threshold(min_lift);
    case Shortfall::None:
      break;
  }
  return {};
}

std::vector<Rule> derive_rules(const FrequentItemsetTable& table, double min_confidence,
                               double min_lift) {
  const Threshold confidence(min_confidence);
  const Threshold lift(min_lift);
  const std::uint64_t n = table.transaction_count();

  std::vector<Rule> rules;
  for (const auto& [itemset, joint] : table.entries()) {
    const std::size_t k = itemset.size();
    if (k < 2) continue;
    if (k >= 63) throw std::length_error("derive_rules: itemset too large to partition");
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      std::vector<ItemId> lhs, rhs;
      for (std::size_t i = 0; i < k; ++i) {
        ((mask >> i) & 1 ? lhs : rhs).push_back(itemset[i]);
      }
      Itemset antecedent(std::move(lhs));
      Itemset consequent(std::move(rhs));
      auto a = table.count(antecedent);
      auto c = table.count(consequent);
      if (!a || !c) continue;  // unreachable for tables built by frequent_itemsets
      if (!confidence_meets(joint, *a, confidence)) continue;
      if (!lift_exceeds(joint, *a, *c, n, lift)) continue;
      rules.push_back(make_rule(std::move(antecedent), std::move(consequent), {joint, *a, *c, n}));
    }
  }
  return rules;
}

bool ranks_before(const Rule& a, const Rule& b) {
  if (a.lift != b.lift) return a.lift > b.lift;
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.support != b.support) return a.support > b.support;
  auto a_items = a.antecedent.size() + a.consequent.size();
  auto b_items = b.antecedent.size() + b.consequent.size();
  if (a_items != b_items) return a_items < b_items;
  auto as = a.antecedent.to_string();
  auto bs = b.antecedent.to_string();
  if (as != bs) return as < bs;
  return a.consequent.to_string() < b.consequent.to_string();
}

std::vector<Rule> rank_rules(std::vector<Rule> rules, std::size_t top_k) {
  std::stable_sort(rules.begin(), rules.end(), ranks_before);
  if (rules.size() > top_k) rules.resize(top_k);
  return rules;
}

std::string rules_to_csv(std::span<const Rule> rules) {
  std::string out = "antecedent,consequent,support,confidence,lift\n";
  for (const auto& r : rules) {
    out += r.antecedent.to_string() + ',' + r.consequent.to_string() + ',' +
           format_decimal(r.support) + ',' + format_decimal(r.confidence) + ',' +
           format_decimal(r.lift) + '\n';
  }
  return out;
}

}  // namespace lhmine
