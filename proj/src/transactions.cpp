#include "lhmine/transactions.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lhmine/format.hpp"

namespace lhmine {
namespace {

constexpr std::size_t kColumnCount = 11;

constexpr std::array<std::string_view, kColumnCount> kColumns = {
    "Account",    "MistakeOccurred",     "HintUsed",  "Skipped",
    "Status",     "TotalSteps",          "TotalHints", "TotalAnswerAttempts",
    "TimeSpent",  "With Intervention",   "Label",
};

enum Column : std::size_t {
  kAccount, kMistake, kHint, kSkipped, kStatus, kSteps, kHints, kAttempts, kTime,
  kIntervention, kLabel,
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Splits one CSV line; honours double-quoted fields with "" escapes.
std::optional<std::vector<std::string>> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(current));
  return fields;
}

struct RowParser {
  std::size_t row;
  std::vector<std::string>& fields;
  std::optional<std::string> error;

  std::string_view field(Column c) const { return trim(fields[c]); }

  void fail(std::string message) {
    if (!error) error = "row " + std::to_string(row) + ": " + std::move(message);
  }

  bool present(Column c) {
    if (field(c).empty()) {
      fail("missing " + std::string(kColumns[c]));
      return false;
    }
    return true;
  }

  bool yes_no(Column c) {
    if (!present(c)) return false;
    auto v = upper(field(c));
    if (v == "YES") return true;
    if (v != "NO") fail("invalid " + std::string(kColumns[c]) + " value '" + std::string(field(c)) + "'");
    return false;
  }

  std::uint64_t count(Column c) {
    if (!present(c)) return 0;
    auto v = field(c);
    if (v.front() == '-') {
      fail("negative " + std::string(kColumns[c]) + " '" + std::string(v) + "'");
      return 0;
    }
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      fail("invalid " + std::string(kColumns[c]) + " value '" + std::string(v) + "'");
      return 0;
    }
    return out;
  }

  SessionStatus status() {
    if (!present(kStatus)) return SessionStatus::Unsolved;
    auto v = upper(field(kStatus));
    if (v == "SOLVED") return SessionStatus::Solved;
    if (v != "UNSOLVED") fail("invalid Status value '" + std::string(field(kStatus)) + "'");
    return SessionStatus::Unsolved;
  }

  LhLevel label() {
    if (!present(kLabel)) return LhLevel::Low;
    auto v = upper(field(kLabel));
    if (v == "HIGH") return LhLevel::High;
    if (v != "LOW") fail("invalid Label value '" + std::string(field(kLabel)) + "'");
    return LhLevel::Low;
  }
};

std::string_view yes_no(bool v) { return v ? "YES" : "NO"; }

}  // namespace

ParseResult parse_records(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  if (trim(text).empty()) throw InputError("empty input: expected header '" + std::string(kSessionCsvHeader) + "'");

  ParseResult result;
  std::size_t row = 0;
  bool header_seen = false;
  while (!text.empty()) {
    auto cut = text.find('\n');
    auto line = text.substr(0, cut);
    text.remove_prefix(cut == std::string_view::npos ? text.size() : cut + 1);
    ++row;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!header_seen) {
      if (line != kSessionCsvHeader)
        throw InputError("unexpected header '" + std::string(line) + "'; expected '" +
                         std::string(kSessionCsvHeader) + "'");
      header_seen = true;
      continue;
    }

    auto reject = [&](std::string message) {
      result.rejected.push_back({row, "row " + std::to_string(row) + ": " + std::move(message)});
    };
    if (trim(line).empty()) {
      reject("blank row");
      continue;
    }
    auto fields = split_line(line);
    if (!fields) {
      reject("unterminated quoted field");
      continue;
    }
    if (fields->size() != kColumnCount) {
      reject("expected " + std::to_string(kColumnCount) + " fields, found " +
             std::to_string(fields->size()));
      continue;
    }

    RowParser p{row, *fields, std::nullopt};
    SessionRecord r;
    if (p.present(kAccount)) r.account = std::string(p.field(kAccount));
    r.mistake_occurred = p.yes_no(kMistake);
    r.hint_used = p.yes_no(kHint);
    r.skipped = p.yes_no(kSkipped);
    r.status = p.status();
    r.total_steps = p.count(kSteps);
    r.total_hints = p.count(kHints);
    r.total_answer_attempts = p.count(kAttempts);
    r.time_spent = p.count(kTime);
    r.with_intervention = p.yes_no(kIntervention);
    r.lh_label = p.label();

    if (p.error) {
      result.rejected.push_back({row, *p.error});
    } else {
      result.records.push_back(std::move(r));
    }
  }
  return result;
}

ParseResult read_records_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read input file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_records(buf.str());
}

std::string records_to_csv(std::span<const SessionRecord> records) {
  std::string out(kSessionCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.account;
    out += ',';
    out += yes_no(r.mistake_occurred);
    out += ',';
    out += yes_no(r.hint_used);
    out += ',';
    out += yes_no(r.skipped);
    out += ',';
    out += r.status == SessionStatus::Solved ? "SOLVED" : "UNSOLVED";
    for (auto v : {r.total_steps, r.total_hints, r.total_answer_attempts, r.time_spent}) {
      out += ',';
      out += std::to_string(v);
    }
    out += ',';
    out += yes_no(r.with_intervention);
    out += ',';
    out += r.lh_label == LhLevel::Low ? "Low" : "High";
    out += '\n';
  }
  return out;
}

Transaction encode_transaction(const SessionRecord& r) {
  return Transaction{
      r.mistake_occurred ? items::kMistakeYes : items::kMistakeNo,
      r.hint_used ? items::kHintYes : items::kHintNo,
      r.skipped ? items::kSkippedYes : items::kSkippedNo,
      r.status == SessionStatus::Solved ? items::kStatusSolved : items::kStatusUnsolved,
  };
}

std::vector<Transaction> encode_transactions(std::span<const SessionRecord> records) {
  std::vector<Transaction> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(encode_transaction(r));
  return out;
}

std::optional<Indicators> decode_transaction(const Transaction& t) {
  if (t.size() != 4) return std::nullopt;
  for (std::size_t i = 0; i < 4; ++i) {
    auto attr = attribute_of(t[i]);
    if (!attr || static_cast<std::size_t>(*attr) != i) return std::nullopt;
  }
  return Indicators{
      t[0] == items::kMistakeYes,
      t[1] == items::kHintYes,
      t[2] == items::kSkippedYes,
      t[3] == items::kStatusSolved ? SessionStatus::Solved : SessionStatus::Unsolved,
  };
}

bool CohortSpec::matches(const SessionRecord& r) const {
  if (lh && r.lh_label != *lh) return false;
  if (intervention && r.with_intervention != (*intervention == Intervention::With)) return false;
  return true;
}

std::string CohortSpec::slug() const {
  std::string out;
  if (lh) out += *lh == LhLevel::Low ? "low" : "high";
  if (intervention) {
    if (!out.empty()) out += '_';
    out += *intervention == Intervention::With ? "with" : "without";
  }
  return out.empty() ? "overall" : out;
}

CohortSpec CohortSpec::overall() { return {std::nullopt, std::nullopt, "Overall"}; }
CohortSpec CohortSpec::low_lh() { return {LhLevel::Low, std::nullopt, "Low LH"}; }
CohortSpec CohortSpec::high_lh() { return {LhLevel::High, std::nullopt, "High LH"}; }
CohortSpec CohortSpec::with_intervention() {
  return {std::nullopt, Intervention::With, "With Intervention"};
}
CohortSpec CohortSpec::without_intervention() {
  return {std::nullopt, Intervention::Without, "Without Intervention"};
}

std::vector<CohortSpec> standard_cohorts() {
  return {CohortSpec::low_lh(), CohortSpec::high_lh(), CohortSpec::with_intervention(),
          CohortSpec::without_intervention()};
}

CohortSpec cohort_from_name(std::string_view name) {
  auto v = upper(trim(name));
  if (v == "ALL" || v == "OVERALL") return CohortSpec::overall();
  if (v == "LOW") return CohortSpec::low_lh();
  if (v == "HIGH") return CohortSpec::high_lh();
  if (v == "WITH") return CohortSpec::with_intervention();
  if (v == "WITHOUT") return CohortSpec::without_intervention();
  throw std::invalid_argument("unknown cohort '" + std::string(name) +
                              "' (expected low, high, with, without or all)");
}

std::vector<SessionRecord> filter_cohort(std::span<const SessionRecord> records,
                                         const CohortSpec& spec) {
  std::vector<SessionRecord> out;
  for (const auto& r : records) {
    if (spec.matches(r)) out.push_back(r);
  }
  return out;
}

IndicatorRates indicator_rates(std::span<const SessionRecord> records, std::string cohort) {
  if (records.empty()) throw std::invalid_argument("no records");
  IndicatorRates rates;
  rates.cohort = std::move(cohort);
  rates.sessions = records.size();
  for (const auto& r : records) {
    rates.mistakes += r.mistake_occurred;
    rates.hints += r.hint_used;
    rates.skips += r.skipped;
    rates.solved += r.status == SessionStatus::Solved;
  }
  return rates;
}

std::vector<IndicatorRates> descriptive_stats(std::span<const SessionRecord> records) {
  if (records.empty()) throw std::invalid_argument("no records");
  std::vector<IndicatorRates> rows;
  rows.push_back(indicator_rates(records, CohortSpec::overall().name));
  for (const auto& spec : standard_cohorts()) {
    auto subset = filter_cohort(records, spec);
    if (!subset.empty()) rows.push_back(indicator_rates(subset, spec.name));
  }
  return rows;
}

std::string stats_to_csv(std::span<const IndicatorRates> rows) {
  std::string out = "cohort,sessions,mistake_rate,hint_rate,skip_rate,solve_rate\n";
  for (const auto& r : rows) {
    out += r.cohort + ',' + std::to_string(r.sessions) + ',' + format_decimal(r.mistake_rate()) +
           ',' + format_decimal(r.hint_rate()) + ',' + format_decimal(r.skip_rate()) + ',' +
           format_decimal(r.solve_rate()) + '\n';
  }
  return out;
}

}  // namespace lhmine
