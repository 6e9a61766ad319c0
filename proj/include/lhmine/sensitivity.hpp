#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lhmine/cohorts.hpp"
#include "lhmine/rules.hpp"
#include "lhmine/transactions.hpp"

namespace lhmine {

struct ThresholdGrid {
  std::vector<double> support_levels{0.15, 0.20, 0.25};
  std::vector<double> confidence_levels{0.50, 0.60, 0.70};
  double min_lift = 1.0;

  /// Levels must be non-empty, strictly increasing and within (0, 1].
  void validate() const;
};

struct GridCell {
  double min_support = 0.0;
  double min_confidence = 0.0;
  /// "s=0.20/c=0.60"
  std::string label() const;
};

struct CellOutcome {
  GridCell cell;
  bool present = false;
  double lift = 0.0;   // the rule's lift in the cohort; meaningful when present
  std::string detail;  // shortfall when absent: "support 0.231 < 0.25"
};

struct StabilityRow {
  std::string cohort;
  RuleKey rule;
  std::vector<CellOutcome> cells;  // grid order: support-major

  std::size_t cells_present() const;
  /// Lift of the first cell reporting the rule; nullopt if it is reported nowhere.
  std::optional<double> lift() const;
  /// True when every reporting cell carries the same lift (within 1e-12).
  bool lift_is_stable() const;
};

struct StabilityTable {
  ThresholdGrid grid;
  std::vector<GridCell> cells;
  std::vector<std::string> cohorts;
  std::vector<RuleKey> tracked;
  std::vector<StabilityRow> rows;  // cohort-major, tracked order within a cohort

  const StabilityRow* find(const std::string& cohort, const RuleKey& rule) const;
};

struct CohortSweep {
  CohortSpec spec;
  std::size_t record_count = 0;
  std::vector<std::vector<Rule>> cell_rules;  // ranked and truncated, one per grid cell
};

struct SweepResult {
  StabilityTable table;
  std::vector<CohortSweep> cohorts;
};

/// Support, confidence and lift thresholds of the four headline rules:
/// skip => unsolved, skip without hint => unsolved, mistake and skip =>
/// unsolved, no skip => solved.
std::vector<RuleKey> default_tracked_rules();

/// The grid cells in support-major order.
std::vector<GridCell> grid_cells(const ThresholdGrid& grid);

/// Mines each cohort once at the loosest cell and filters per cell, so every
/// cell's rule list equals a standalone run at that cell's thresholds.
/// A tracked rule is present in a cell when it meets that cell's thresholds.
/// Throws std::invalid_argument naming an empty cohort.
SweepResult sweep_grid(std::span<const SessionRecord> records,
                       std::span<const CohortSpec> cohorts, const ThresholdGrid& grid,
                       std::span<const RuleKey> tracked, std::size_t top_k = 30,
                       MiningOptions options = {});

/// `cohort,rule,lift,cells_present,cells_absent,absence_detail`
std::string stability_to_csv(const StabilityTable& table);

/// Aligned text table: cohorts down, tracked rules across, with footnotes
/// for rules that are reported in only part of the grid.
std::string render_stability_text(const StabilityTable& table);

}  // namespace lhmine
