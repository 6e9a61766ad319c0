#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lhmine/itemset.hpp"

namespace lhmine {

enum class SessionStatus : std::uint8_t { Solved, Unsolved };
enum class LhLevel : std::uint8_t { Low, High };
enum class Intervention : std::uint8_t { With, Without };

/// One cleaned row of a tutoring-session log.
struct SessionRecord {
  std::string account;
  bool mistake_occurred = false;
  bool hint_used = false;
  bool skipped = false;
  SessionStatus status = SessionStatus::Unsolved;
  std::uint64_t total_steps = 0;
  std::uint64_t total_hints = 0;
  std::uint64_t total_answer_attempts = 0;
  std::uint64_t time_spent = 0;  // seconds
  bool with_intervention = false;
  LhLevel lh_label = LhLevel::Low;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

/// Input header, column order as exported by the tutoring system.
inline constexpr std::string_view kSessionCsvHeader =
    "Account,MistakeOccurred,HintUsed,Skipped,Status,TotalSteps,TotalHints,"
    "TotalAnswerAttempts,TimeSpent,With Intervention,Label";

struct RowDiagnostic {
  std::size_t row = 0;  // 1-based line number; the header is row 1
  std::string message;  // "row N: missing Status"
};

struct ParseResult {
  std::vector<SessionRecord> records;
  std::vector<RowDiagnostic> rejected;
};

/// Hard ingestion failure (empty input, bad header, unreadable file).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and cleans a session log. Rows with a blank, unparsable or
/// out-of-vocabulary field are rejected with a diagnostic; order is kept.
ParseResult parse_records(std::string_view csv_text);
ParseResult read_records_file(const std::filesystem::path& path);

/// Serializes records in the input format (header included).
std::string records_to_csv(std::span<const SessionRecord> records);

/// The four indicator items of a session: Mistake, Hint, Skipped, Status.
Transaction encode_transaction(const SessionRecord& record);
std::vector<Transaction> encode_transactions(std::span<const SessionRecord> records);

struct Indicators {
  bool mistake_occurred;
  bool hint_used;
  bool skipped;
  SessionStatus status;
  friend bool operator==(const Indicators&, const Indicators&) = default;
};

/// Inverse of encode_transaction; nullopt unless the transaction holds
/// exactly one item per attribute.
std::optional<Indicators> decode_transaction(const Transaction& transaction);

/// Subgroup filter. Absent fields mean "no restriction".
struct CohortSpec {
  std::optional<LhLevel> lh;
  std::optional<Intervention> intervention;
  std::string name = "Overall";

  bool matches(const SessionRecord& record) const;
  /// Short file-name friendly tag: "overall", "low", "with", ...
  std::string slug() const;

  static CohortSpec overall();
  static CohortSpec low_lh();
  static CohortSpec high_lh();
  static CohortSpec with_intervention();
  static CohortSpec without_intervention();

  friend bool operator==(const CohortSpec&, const CohortSpec&) = default;
};

/// LOW, HIGH, WITH, WITHOUT.
std::vector<CohortSpec> standard_cohorts();

/// Resolves "low|high|with|without|all". Throws std::invalid_argument.
CohortSpec cohort_from_name(std::string_view name);

std::vector<SessionRecord> filter_cohort(std::span<const SessionRecord> records,
                                         const CohortSpec& spec);

struct IndicatorRates {
  std::string cohort;
  std::size_t sessions = 0;
  std::size_t mistakes = 0;
  std::size_t hints = 0;
  std::size_t skips = 0;
  std::size_t solved = 0;

  double mistake_rate() const { return ratio(mistakes); }
  double hint_rate() const { return ratio(hints); }
  double skip_rate() const { return ratio(skips); }
  double solve_rate() const { return ratio(solved); }

 private:
  double ratio(std::size_t n) const {
    return sessions ? static_cast<double>(n) / static_cast<double>(sessions) : 0.0;
  }
};

/// Indicator counts for the given records. Throws std::invalid_argument when empty.
IndicatorRates indicator_rates(std::span<const SessionRecord> records, std::string cohort);

/// Overall row followed by every non-empty standard cohort.
/// Throws std::invalid_argument("no records") on empty input.
std::vector<IndicatorRates> descriptive_stats(std::span<const SessionRecord> records);

/// `cohort,sessions,mistake_rate,hint_rate,skip_rate,solve_rate`
std::string stats_to_csv(std::span<const IndicatorRates> rows);

}  // namespace lhmine
