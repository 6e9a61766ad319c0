#include <random>

#include "doctest.h"
#include "lhmine/transactions.hpp"
#include "support.hpp"

using namespace lhmine;

namespace {

const std::string kHeader(kSessionCsvHeader);

bool valid(const SessionRecord& r) {
  return !r.account.empty() && r.account.find_first_not_of(" \t") != std::string::npos;
}

}  // namespace

TEST_CASE("parse_records reads the first logged row") {
  auto result = parse_records(kHeader + "\nABIS01,YES,NO,NO,UNSOLVED,2,0,11,466,YES,Low\n");
  REQUIRE(result.records.size() == 1);
  CHECK(result.rejected.empty());
  const auto& r = result.records[0];
  CHECK(r.account == "ABIS01");
  CHECK(r.mistake_occurred);
  CHECK_FALSE(r.hint_used);
  CHECK_FALSE(r.skipped);
  CHECK(r.status == SessionStatus::Unsolved);
  CHECK(r.total_steps == 2);
  CHECK(r.total_hints == 0);
  CHECK(r.total_answer_attempts == 11);
  CHECK(r.time_spent == 466);
  CHECK(r.with_intervention);
  CHECK(r.lh_label == LhLevel::Low);
}

TEST_CASE("parse_records edge cases") {
  SUBCASE("header only") {
    auto result = parse_records(kHeader + "\n");
    CHECK(result.records.empty());
    CHECK(result.rejected.empty());
  }
  SUBCASE("blank status") {
    auto result = parse_records(kHeader + "\nABIS01,YES,NO,NO,,2,0,11,466,YES,Low\n");
    CHECK(result.records.empty());
    REQUIRE(result.rejected.size() == 1);
    CHECK(result.rejected[0].message == "row 2: missing Status");
  }
  SUBCASE("empty file") {
    CHECK_THROWS_AS(parse_records(""), InputError);
    CHECK_THROWS_AS(parse_records("\n\n"), InputError);
  }
  SUBCASE("unknown header names the expected one") {
    try {
      parse_records("Account,Mistake\nA,YES\n");
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find(kHeader) != std::string::npos);
    }
  }
  SUBCASE("CRLF, BOM and mixed-case vocabulary") {
    auto result = parse_records("\xEF\xBB\xBF" + kHeader +
                                "\r\nx,yes,No,YES,solved,1,2,3,4,no,HIGH\r\n");
    REQUIRE(result.records.size() == 1);
    const auto& r = result.records[0];
    CHECK(r.hint_used == false);
    CHECK(r.skipped);
    CHECK(r.status == SessionStatus::Solved);
    CHECK_FALSE(r.with_intervention);
    CHECK(r.lh_label == LhLevel::High);
  }
  SUBCASE("bad rows are rejected with diagnostics, good rows kept in order") {
    auto result = parse_records(kHeader +
                                "\nA,YES,NO,NO,SOLVED,1,0,1,10,YES,Low"
                                "\nB,YES,NO,NO,DONE,1,0,1,10,YES,Low"
                                "\nC,YES,NO,NO,SOLVED,-1,0,1,10,YES,Low"
                                "\n"
                                "\nD,YES,NO,NO,SOLVED,1,0,1,10,YES"
                                "\nE,YES,NO,NO,SOLVED,1.5,0,1,10,YES,Low"
                                "\n   ,YES,NO,NO,SOLVED,1,0,1,10,YES,Low"
                                "\nF,NO,NO,NO,UNSOLVED,0,0,0,0,NO,High\n");
    REQUIRE(result.records.size() == 2);
    CHECK(result.records[0].account == "A");
    CHECK(result.records[1].account == "F");
    REQUIRE(result.rejected.size() == 6);
    CHECK(result.rejected[0].message == "row 3: invalid Status value 'DONE'");
    CHECK(result.rejected[1].message == "row 4: negative TotalSteps '-1'");
    CHECK(result.rejected[2].message == "row 5: blank row");
    CHECK(result.rejected[3].message == "row 6: expected 11 fields, found 10");
    CHECK(result.rejected[4].message == "row 7: invalid TotalSteps value '1.5'");
    CHECK(result.rejected[5].message == "row 8: missing Account");
  }
  SUBCASE("quoted fields") {
    auto result = parse_records(kHeader + "\n\"AB,1\",YES,NO,NO,SOLVED,1,0,1,10,YES,Low\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].account == "AB,1");
    auto bad = parse_records(kHeader + "\n\"AB,YES,NO,NO,SOLVED,1,0,1,10,YES,Low\n");
    CHECK(bad.rejected.size() == 1);
  }
}

TEST_CASE("fuzzed rows never yield invalid records") {
  const std::vector<std::string> good = {"S1", "YES", "NO", "NO", "SOLVED", "1",
                                         "0",  "3",   "40", "YES", "Low"};
  const std::vector<std::string> junk = {"", " ", "-1", "maybe", "1e3", "0x10",
                                         "YESS", "SOLVED ", "\"", "99999999999999999999999"};
  std::mt19937_64 rng(7);
  std::size_t accepted = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    auto fields = good;
    auto idx = rng() % fields.size();
    fields[idx] = junk[rng() % junk.size()];
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + fields[i];
    ParseResult result;
    REQUIRE_NOTHROW(result = parse_records(kHeader + "\n" + line + "\n"));
    CHECK(result.records.size() + result.rejected.size() == 1);
    for (const auto& r : result.records) {
      CHECK(valid(r));
      accepted++;
    }
  }
  // "SOLVED " trims to a valid Status; everything else must be rejected.
  CHECK(accepted < 400);
}

TEST_CASE("random bytes are rejected or parsed, never crash") {
  std::mt19937_64 rng(11);
  const std::string alphabet = "ab,YESNOLowHigh0123456789-\" \r";
  for (int iter = 0; iter < 2000; ++iter) {
    std::string line;
    auto len = rng() % 80;
    for (std::size_t i = 0; i < len; ++i) line += alphabet[rng() % alphabet.size()];
    ParseResult result;
    REQUIRE_NOTHROW(result = parse_records(kHeader + "\n" + line));
    for (const auto& r : result.records) CHECK(valid(r));
  }
}

TEST_CASE("encode_transactions produces the four indicator items") {
  auto records = test::micro_records();
  REQUIRE(records.size() == 17);
  auto tx = encode_transactions(records);
  REQUIRE(tx.size() == 17);
  CHECK(tx[0] == Itemset{items::kMistakeYes, items::kHintNo, items::kSkippedNo,
                         items::kStatusUnsolved});
  // ABIS02, no mistake, solved
  CHECK(tx[8] == Itemset{items::kMistakeNo, items::kHintNo, items::kSkippedNo,
                         items::kStatusSolved});
  CHECK(encode_transactions({}).empty());
  for (const auto& t : tx) {
    REQUIRE(t.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(attribute_of(t[i]) == static_cast<Attribute>(i));
  }
}

TEST_CASE("decode inverts encode on every indicator combination") {
  for (int bits = 0; bits < 16; ++bits) {
    SessionRecord r;
    r.account = "x";
    r.mistake_occurred = bits & 1;
    r.hint_used = bits & 2;
    r.skipped = bits & 4;
    r.status = (bits & 8) ? SessionStatus::Solved : SessionStatus::Unsolved;
    auto decoded = decode_transaction(encode_transaction(r));
    REQUIRE(decoded);
    CHECK(*decoded == Indicators{r.mistake_occurred, r.hint_used, r.skipped, r.status});
  }
  CHECK_FALSE(decode_transaction(Itemset{items::kMistakeYes, items::kMistakeNo}));
}

TEST_CASE("filter_cohort") {
  auto records = test::micro_records();
  auto low = filter_cohort(records, CohortSpec::low_lh());
  CHECK(low.size() == 5);
  for (const auto& r : low) CHECK(r.account == "ABIS01");
  auto high = filter_cohort(records, CohortSpec::high_lh());
  CHECK(high.size() == 12);
  CHECK(std::count_if(high.begin(), high.end(), [](auto& r) { return r.account == "ABIS02"; }) == 10);
  CHECK(std::count_if(high.begin(), high.end(), [](auto& r) { return r.account == "ABIS03"; }) == 2);
  CHECK(filter_cohort(records, CohortSpec::overall()) == records);
  CHECK(filter_cohort(records, CohortSpec::without_intervention()).empty());
  CHECK(cohort_from_name("Low") == CohortSpec::low_lh());
  CHECK_THROWS_AS(cohort_from_name("medium"), std::invalid_argument);
}

TEST_CASE("sequential filters equal their conjunction") {
  std::vector<SessionRecord> records;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    SessionRecord r;
    r.account = "S" + std::to_string(i);
    r.with_intervention = rng() & 1;
    r.lh_label = (rng() & 1) ? LhLevel::High : LhLevel::Low;
    records.push_back(r);
  }
  std::vector<CohortSpec> specs{CohortSpec::overall()};
  for (auto& s : standard_cohorts()) specs.push_back(s);
  specs.push_back({LhLevel::Low, Intervention::Without, "low/without"});
  for (const auto& a : specs) {
    for (const auto& b : specs) {
      auto twice = filter_cohort(filter_cohort(records, a), b);
      std::vector<SessionRecord> both;
      for (const auto& r : records) {
        if (a.matches(r) && b.matches(r)) both.push_back(r);
      }
      CHECK(twice == both);
    }
  }
}

TEST_CASE("descriptive_stats") {
  auto records = test::micro_records();
  auto rows = descriptive_stats(records);
  REQUIRE(rows.size() == 4);  // overall, low, high, with; no without rows
  CHECK(rows[0].cohort == "Overall");
  CHECK(rows[0].mistake_rate() == doctest::Approx(11.0 / 17));
  CHECK(rows[0].skip_rate() == doctest::Approx(6.0 / 17));
  CHECK(rows[0].solve_rate() == doctest::Approx(4.0 / 17));
  CHECK(rows[0].hint_rate() == 0.0);
  CHECK(rows[1].cohort == "Low LH");
  CHECK(rows[1].sessions == 5);
  CHECK(rows[1].skip_rate() == doctest::Approx(0.2));

  SessionRecord all_yes{"S1", true, true, true, SessionStatus::Solved, 0, 0, 0, 0, true, LhLevel::High};
  auto single = descriptive_stats(std::vector{all_yes});
  for (const auto& r : single) {
    CHECK(r.mistake_rate() == 1.0);
    CHECK(r.hint_rate() == 1.0);
    CHECK(r.skip_rate() == 1.0);
    CHECK(r.solve_rate() == 1.0);
  }
  CHECK_THROWS_WITH_AS(descriptive_stats({}), "no records", std::invalid_argument);

  auto csv = stats_to_csv(rows);
  CHECK(csv.starts_with("cohort,sessions,mistake_rate,hint_rate,skip_rate,solve_rate\n"));
  CHECK(csv.find("Overall,17,0.647059,0.000000,0.352941,0.235294\n") != std::string::npos);
}

TEST_CASE("records_to_csv round-trips through parse_records") {
  auto records = test::micro_records();
  auto again = parse_records(records_to_csv(records));
  CHECK(again.rejected.empty());
  CHECK(again.records == records);
}
