#include <random>

#include "doctest.h"
#include "lhmine/oracle.hpp"
#include "support.hpp"

using namespace lhmine;

TEST_CASE("oracle matches Apriori on the micro-dataset") {
  auto tx = encode_transactions(test::micro_records());
  CHECK(oracle::enumerate_frequent(tx, 0.20) == frequent_itemsets(tx, 0.20));
  auto expected = test::sorted_by_key(derive_rules(frequent_itemsets(tx, 0.20), 0.60, 1.0));
  auto actual = test::sorted_by_key(oracle::enumerate_rules(tx, 0.20, 0.60, 1.0));
  CHECK(actual == expected);
  CHECK(actual.size() == 27);
}

TEST_CASE("oracle on one transaction") {
  std::vector<Transaction> tx{Itemset{3, 5, 9}};
  auto table = oracle::enumerate_frequent(tx, 1.0);
  CHECK(table.size() == 7);
}

TEST_CASE("oracle domain checks") {
  std::vector<Transaction> tx{Itemset{1}};
  CHECK_THROWS_AS(oracle::enumerate_frequent(tx, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(oracle::enumerate_frequent({}, 0.5), std::invalid_argument);
  std::vector<ItemId> wide(21);
  for (ItemId i = 0; i < wide.size(); ++i) wide[i] = i;
  std::vector<Transaction> big{Itemset(wide)};
  CHECK_THROWS_WITH_AS(oracle::enumerate_frequent(big, 0.5),
                       doctest::Contains("cap of 20"), std::invalid_argument);
}

TEST_CASE("identical transactions give no rule above lift 1") {
  std::vector<Transaction> tx(10, Itemset{1, 2, 3});
  CHECK(oracle::enumerate_rules(tx, 0.1, 0.1, 1.0).empty());
  auto all = oracle::enumerate_rules(tx, 0.1, 0.1, 0.5);
  CHECK(all.size() == 12);  // 3^3 - 2*2^3 + 1 ordered disjoint non-empty pairs
  for (const auto& r : all) {
    CHECK(r.confidence == 1.0);
    CHECK(r.lift == 1.0);
    CHECK_FALSE(r.consequent.empty());
  }
}

TEST_CASE("oracle is independent of transaction and item order") {
  std::mt19937_64 rng(43);
  auto tx = test::random_transactions(rng, 6, 80, 0.5);
  auto reference = oracle::enumerate_frequent(tx, 0.1);
  auto rules = test::sorted_by_key(oracle::enumerate_rules(tx, 0.1, 0.3, 1.0));

  // Relabel items by a permutation, shuffle the transactions, and map back.
  std::vector<ItemId> perm{4, 0, 5, 2, 1, 3};
  std::vector<ItemId> inverse(6);
  for (ItemId i = 0; i < 6; ++i) inverse[perm[i]] = i;
  std::vector<Transaction> relabeled;
  for (const auto& t : tx) {
    std::vector<ItemId> ids;
    for (auto id : t) ids.push_back(perm[id]);
    relabeled.emplace_back(std::move(ids));
  }
  std::shuffle(relabeled.begin(), relabeled.end(), rng);
  auto back = [&](const Itemset& s) {
    std::vector<ItemId> ids;
    for (auto id : s) ids.push_back(inverse[id]);
    return Itemset(std::move(ids));
  };

  auto table = oracle::enumerate_frequent(relabeled, 0.1);
  REQUIRE(table.size() == reference.size());
  for (const auto& [s, c] : table.entries()) CHECK(reference.count(back(s)) == c);

  std::vector<Rule> mapped;
  for (auto r : oracle::enumerate_rules(relabeled, 0.1, 0.3, 1.0)) {
    r.antecedent = back(r.antecedent);
    r.consequent = back(r.consequent);
    mapped.push_back(r);
  }
  CHECK(test::sorted_by_key(mapped) == rules);
}
