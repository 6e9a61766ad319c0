#include "lhmine/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lhmine/format.hpp"

namespace lhmine {
namespace {

void validate_levels(const std::vector<double>& levels, const char* name) {
  if (levels.empty()) throw std::invalid_argument(std::string(name) + " levels are empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    validate_fraction(levels[i], name);
    if (i && !(levels[i] > levels[i - 1]))
      throw std::invalid_argument(std::string(name) + " levels must be strictly increasing");
  }
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

void ThresholdGrid::validate() const {
  validate_levels(support_levels, "support");
  validate_levels(confidence_levels, "confidence");
  if (!(min_lift >= 0.0) || !std::isfinite(min_lift))
    throw std::invalid_argument("min_lift must be >= 0");
}

std::string GridCell::label() const {
  return "s=" + format_threshold(min_support) + "/c=" + format_threshold(min_confidence);
}

std::size_t StabilityRow::cells_present() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const CellOutcome& c) { return c.present; }));
}

std::optional<double> StabilityRow::lift() const {
  for (const auto& c : cells) {
    if (c.present) return c.lift;
  }
  return std::nullopt;
}

bool StabilityRow::lift_is_stable() const {
  auto reference = lift();
  if (!reference) return true;
  return std::all_of(cells.begin(), cells.end(), [&](const CellOutcome& c) {
    return !c.present || std::fabs(c.lift - *reference) <= 1e-12;
  });
}

const StabilityRow* StabilityTable::find(const std::string& cohort, const RuleKey& rule) const {
  for (const auto& row : rows) {
    if (row.cohort == cohort && row.rule == rule) return &row;
  }
  return nullptr;
}

std::vector<RuleKey> default_tracked_rules() {
  using namespace items;
  return {
      {Itemset{kSkippedYes}, Itemset{kStatusUnsolved}},
      {Itemset{kHintNo, kSkippedYes}, Itemset{kStatusUnsolved}},
      {Itemset{kMistakeYes, kSkippedYes}, Itemset{kStatusUnsolved}},
      {Itemset{kSkippedNo}, Itemset{kStatusSolved}},
  };
}

std::vector<GridCell> grid_cells(const ThresholdGrid& grid) {
  std::vector<GridCell> cells;
  for (double s : grid.support_levels) {
    for (double c : grid.confidence_levels) cells.push_back({s, c});
  }
  return cells;
}

SweepResult sweep_grid(std::span<const SessionRecord> records,
                       std::span<const CohortSpec> cohorts, const ThresholdGrid& grid,
                       std::span<const RuleKey> tracked, std::size_t top_k,
                       MiningOptions options) {
  grid.validate();
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  const auto cells = grid_cells(grid);
  const double loosest_support = grid.support_levels.front();
  const double loosest_confidence = grid.confidence_levels.front();

  SweepResult result;
  result.table.grid = grid;
  result.table.cells = cells;
  result.table.tracked.assign(tracked.begin(), tracked.end());

  for (const auto& spec : cohorts) {
    auto members = filter_cohort(records, spec);
    if (members.empty())
      throw std::invalid_argument("cohort '" + spec.name + "' has no records");
    auto transactions = encode_transactions(members);

    // Metrics depend only on the data, so one loose pass covers every cell.
    auto table = frequent_itemsets(transactions, loosest_support, options);
    auto loose = derive_rules(table, loosest_confidence, grid.min_lift);

    CohortSweep sweep{spec, members.size(), {}};
    for (const auto& cell : cells) {
      const Threshold s(cell.min_support);
      const Threshold c(cell.min_confidence);
      std::vector<Rule> kept;
      for (const auto& r : loose) {
        if (support_meets(r.counts.joint, r.counts.transactions, s) &&
            confidence_meets(r.counts.joint, r.counts.antecedent, c))
          kept.push_back(r);
      }
      sweep.cell_rules.push_back(rank_rules(std::move(kept), top_k));
    }

    CohortResult lookup;
    lookup.transactions = std::move(transactions);
    for (const auto& key : tracked) {
      auto counts = lookup.counts_for(key);
      auto rule = make_rule(key.antecedent, key.consequent, counts);
      StabilityRow row{spec.name, key, {}};
      for (const auto& cell : cells) {
        CellOutcome outcome{cell, false, rule.lift, {}};
        outcome.present = first_shortfall(counts, cell.min_support, cell.min_confidence,
                                          grid.min_lift) == Shortfall::None;
        if (!outcome.present)
          outcome.detail =
              describe_shortfall(counts, cell.min_support, cell.min_confidence, grid.min_lift);
        row.cells.push_back(std::move(outcome));
      }
      result.table.rows.push_back(std::move(row));
    }
    result.table.cohorts.push_back(spec.name);
    result.cohorts.push_back(std::move(sweep));
  }
  return result;
}

std::string stability_to_csv(const StabilityTable& table) {
  std::string out = "cohort,rule,lift,cells_present,cells_absent,absence_detail\n";
  for (const auto& row : table.rows) {
    auto present = row.cells_present();
    std::string detail;
    for (const auto& c : row.cells) {
      if (c.present) continue;
      if (!detail.empty()) detail += " | ";
      detail += c.cell.label() + ": " + c.detail;
    }
    auto lift = row.lift();
    out += row.cohort + ',' + row.rule.to_string() + ',' + (lift ? format_decimal(*lift) : "") +
           ',' + std::to_string(present) + ',' + std::to_string(row.cells.size() - present) + ',' +
           detail + '\n';
  }
  return out;
}

std::string render_stability_text(const StabilityTable& table) {
  std::vector<std::string> header{"Subgroup"};
  for (const auto& r : table.tracked) header.push_back(r.to_string());

  std::vector<std::vector<std::string>> body;
  std::vector<std::string> notes;
  for (const auto& cohort : table.cohorts) {
    std::vector<std::string> line{cohort};
    for (const auto& rule : table.tracked) {
      const auto* row = table.find(cohort, rule);
      auto lift = row ? row->lift() : std::nullopt;
      if (!lift) {
        line.push_back("-");
        continue;
      }
      std::string text = format_fixed(*lift, 3);
      if (row->cells_present() < row->cells.size()) {
        notes.push_back(std::string());
        auto& note = notes.back();
        note = "[" + std::to_string(notes.size()) + "] " + cohort + ", " + rule.to_string() +
               ": reported in " + std::to_string(row->cells_present()) + " of " +
               std::to_string(row->cells.size()) + " cells; absent at";
        bool first = true;
        for (const auto& c : row->cells) {
          if (c.present) continue;
          note += (first ? " " : "; ") + c.cell.label() + " (" + c.detail + ")";
          first = false;
        }
        text += " [" + std::to_string(notes.size()) + "]";
      }
      line.push_back(std::move(text));
    }
    body.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    widths[i] = header[i].size();
    for (const auto& line : body) widths[i] = std::max(widths[i], line[i].size());
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) s += "  ";
      s += i + 1 == line.size() ? line[i] : pad(line[i], widths[i]);
    }
    return s + '\n';
  };

  std::string out = emit(header);
  std::size_t rule_width = 0;
  for (auto w : widths) rule_width += w + 2;
  out += std::string(rule_width > 2 ? rule_width - 2 : 0, '-') + '\n';
  for (const auto& line : body) out += emit(line);

  auto joined = [](const std::vector<double>& levels) {
    std::string text;
    for (double v : levels) text += (text.empty() ? "" : ", ") + format_threshold(v);
    return text;
  };
  out += "\nGrid: support in {" + joined(table.grid.support_levels) + "}; confidence in {" +
         joined(table.grid.confidence_levels) + "}; lift > " +
         format_threshold(table.grid.min_lift) +
         ". A dash marks a rule that met no cell's thresholds.\n";
  for (const auto& n : notes) out += n + '\n';
  return out;
}

}  // namespace lhmine
