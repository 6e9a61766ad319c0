#include "lhmine/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "lhmine/cohorts.hpp"
#include "lhmine/format.hpp"
#include "lhmine/manifest.hpp"
#include "lhmine/sensitivity.hpp"
#include "lhmine/synthgen.hpp"

namespace lhmine::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr std::size_t kMaxDiagnosticsShown = 20;

struct CommonOptions {
  std::string input;
  std::string out_dir = "lhmine_out";
  unsigned threads = 0;
};

const CLI::Validator kFraction(
    [](std::string& value) -> std::string {
      double v = 0;
      try {
        std::size_t used = 0;
        v = std::stod(value, &used);
        if (used != value.size()) return "not a number: " + value;
      } catch (const std::exception&) {
        return "not a number: " + value;
      }
      if (!(v > 0.0 && v <= 1.0)) return "value " + value + " outside (0, 1]";
      return {};
    },
    "FRACTION in (0,1]");

void add_common(CLI::App* sub, CommonOptions& opts, bool needs_input) {
  auto* in = sub->add_option("--input,-i", opts.input, "Session log CSV");
  if (needs_input) in->required()->check(CLI::ExistingFile);
  sub->add_option("--out-dir,-o", opts.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--threads", opts.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
}

void add_thresholds(CLI::App* sub, MiningConfig& cfg, bool with_support_confidence = true) {
  if (with_support_confidence) {
    sub->add_option("--min-support", cfg.min_support, "Minimum support (inclusive)")
        ->check(kFraction)
        ->capture_default_str();
    sub->add_option("--min-confidence", cfg.min_confidence, "Minimum confidence (inclusive)")
        ->check(kFraction)
        ->capture_default_str();
  }
  sub->add_option("--min-lift", cfg.min_lift, "Minimum lift (strict)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--top-k", cfg.top_k, "Rules kept per run, ranked by lift")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

ordered_json config_json(const MiningConfig& cfg) {
  ordered_json j;
  j["min_support"] = cfg.min_support;
  j["min_confidence"] = cfg.min_confidence;
  j["min_lift"] = cfg.min_lift;
  j["lift_comparison"] = "strict";
  j["top_k"] = cfg.top_k;
  return j;
}

// Reads the input, reports rejected rows, and records the inputs in the manifest.
std::vector<SessionRecord> load(const std::string& input, RunManifest& manifest,
                                std::ostream& err) {
  auto parsed = read_records_file(input);
  if (!parsed.rejected.empty()) {
    err << "warning: " << parsed.rejected.size() << " row(s) rejected from " << input << "\n";
    for (std::size_t i = 0; i < parsed.rejected.size() && i < kMaxDiagnosticsShown; ++i)
      err << "  " << parsed.rejected[i].message << "\n";
  }
  ordered_json in;
  in["path"] = input;
  in["records"] = parsed.records.size();
  in["rejected"] = parsed.rejected.size();
  ordered_json diagnostics = ordered_json::array();
  for (const auto& d : parsed.rejected) diagnostics.push_back(d.message);
  in["rejected_rows"] = std::move(diagnostics);
  manifest.meta()["inputs"] = ordered_json::array({in});
  if (parsed.records.empty()) throw InputError("no valid records in '" + input + "'");
  return std::move(parsed.records);
}

void print_stats(std::ostream& out, const std::vector<IndicatorRates>& rows) {
  out << std::left << std::setw(22) << "cohort" << std::right << std::setw(9) << "sessions"
      << std::setw(10) << "mistake" << std::setw(10) << "hint" << std::setw(10) << "skip"
      << std::setw(10) << "solved" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(22) << r.cohort << std::right << std::setw(9) << r.sessions
        << std::setw(10) << format_fixed(r.mistake_rate(), 3) << std::setw(10)
        << format_fixed(r.hint_rate(), 3) << std::setw(10) << format_fixed(r.skip_rate(), 3)
        << std::setw(10) << format_fixed(r.solve_rate(), 3) << "\n";
  }
}

int cmd_stats(const CommonOptions& opts, const std::string& cohort, std::ostream& out,
              std::ostream& err) {
  RunManifest manifest("stats", opts.out_dir);
  auto records = load(opts.input, manifest, err);
  auto spec = cohort_from_name(cohort);
  manifest.meta()["cohort"] = spec.name;

  std::vector<IndicatorRates> rows;
  if (spec == CohortSpec::overall()) {
    rows = descriptive_stats(records);
  } else {
    auto subset = filter_cohort(records, spec);
    if (subset.empty()) throw std::invalid_argument("cohort '" + spec.name + "' has no records");
    rows.push_back(indicator_rates(subset, spec.name));
  }
  manifest.emit("stats.csv", stats_to_csv(rows));
  manifest.finish();
  print_stats(out, rows);
  return 0;
}

int cmd_mine(const CommonOptions& opts, const MiningConfig& cfg, const std::string& cohort,
             std::ostream& out, std::ostream& err) {
  RunManifest manifest("mine", opts.out_dir);
  auto records = load(opts.input, manifest, err);
  auto spec = cohort_from_name(cohort);
  manifest.meta()["config"] = config_json(cfg);
  manifest.meta()["cohort"] = spec.name;

  auto result = mine_cohort(records, spec, cfg, {opts.threads});
  manifest.emit("itemsets.csv", itemsets_to_csv(result.itemsets));
  manifest.emit("rules.csv", rules_to_csv(result.rules));
  manifest.finish();
  out << spec.name << ": " << result.record_count << " sessions, " << result.itemsets.size()
      << " frequent itemsets, " << result.rules.size() << " rules -> " << opts.out_dir << "\n";
  return 0;
}

int cmd_cohorts(const CommonOptions& opts, const MiningConfig& cfg, std::ostream& out,
                std::ostream& err) {
  RunManifest manifest("cohorts", opts.out_dir);
  auto records = load(opts.input, manifest, err);
  manifest.meta()["config"] = config_json(cfg);

  std::vector<CohortSpec> specs{CohortSpec::overall()};
  for (auto& s : standard_cohorts()) specs.push_back(std::move(s));

  std::vector<std::optional<CohortResult>> results;
  ordered_json mined = ordered_json::array();
  std::vector<IndicatorRates> stats;
  for (const auto& spec : specs) {
    if (filter_cohort(records, spec).empty()) {
      err << "warning: cohort '" << spec.name << "' has no records; skipped\n";
      results.emplace_back();
      continue;
    }
    auto r = mine_cohort(records, spec, cfg, {opts.threads});
    stats.push_back(r.stats);
    manifest.emit("itemsets_" + spec.slug() + ".csv", itemsets_to_csv(r.itemsets));
    manifest.emit("rules_" + spec.slug() + ".csv", rules_to_csv(r.rules));
    manifest.emit("outcomes_" + spec.slug() + ".csv", outcomes_to_csv(outcome_rules(r)));
    ordered_json m;
    m["cohort"] = spec.name;
    m["sessions"] = r.record_count;
    m["rules"] = r.rules.size();
    mined.push_back(std::move(m));
    out << std::left << std::setw(22) << spec.name << r.record_count << " sessions, "
        << r.rules.size() << " rules\n";
    results.push_back(std::move(r));
  }
  manifest.meta()["cohorts"] = std::move(mined);
  manifest.emit("stats.csv", stats_to_csv(stats));

  auto compare = [&](std::size_t a, std::size_t b, const std::string& name) {
    if (!results[a] || !results[b]) {
      err << "warning: " << name << " comparison skipped (empty cohort)\n";
      return;
    }
    manifest.emit(name, comparison_to_csv(compare_cohorts(*results[a], *results[b])));
  };
  compare(1, 2, "comparison_lh.csv");
  compare(3, 4, "comparison_intervention.csv");
  manifest.finish();
  return 0;
}

struct SweepOptions {
  ThresholdGrid grid;
  std::vector<std::string> tracked;
  std::vector<std::string> cohorts;
  bool cell_rules = false;
};

int cmd_sweep(const CommonOptions& opts, SweepOptions sweep, const MiningConfig& cfg,
              std::ostream& out, std::ostream& err) {
  RunManifest manifest("sweep", opts.out_dir);
  auto records = load(opts.input, manifest, err);
  sweep.grid.min_lift = cfg.min_lift;
  sweep.grid.validate();

  std::vector<RuleKey> tracked;
  for (const auto& t : sweep.tracked) tracked.push_back(RuleKey::parse(t));
  if (tracked.empty()) tracked = default_tracked_rules();

  std::vector<CohortSpec> specs;
  if (sweep.cohorts.empty()) {
    specs.push_back(CohortSpec::overall());
    for (auto& s : standard_cohorts()) specs.push_back(std::move(s));
  } else {
    for (const auto& name : sweep.cohorts) specs.push_back(cohort_from_name(name));
  }
  std::vector<CohortSpec> usable;
  for (auto& s : specs) {
    if (filter_cohort(records, s).empty()) {
      err << "warning: cohort '" << s.name << "' has no records; skipped\n";
    } else {
      usable.push_back(std::move(s));
    }
  }
  if (usable.empty()) throw std::invalid_argument("every requested cohort is empty");

  ordered_json grid;
  grid["support_levels"] = sweep.grid.support_levels;
  grid["confidence_levels"] = sweep.grid.confidence_levels;
  grid["min_lift"] = sweep.grid.min_lift;
  grid["top_k"] = cfg.top_k;
  manifest.meta()["grid"] = std::move(grid);
  ordered_json tracked_json = ordered_json::array();
  for (const auto& t : tracked) tracked_json.push_back(t.to_string());
  manifest.meta()["tracked"] = std::move(tracked_json);
  ordered_json cohort_names = ordered_json::array();
  for (const auto& s : usable) cohort_names.push_back(s.name);
  manifest.meta()["cohorts"] = std::move(cohort_names);

  auto result = sweep_grid(records, usable, sweep.grid, tracked, cfg.top_k, {opts.threads});
  manifest.emit("stability.csv", stability_to_csv(result.table));
  auto text = render_stability_text(result.table);
  manifest.emit("stability.txt", text);
  if (sweep.cell_rules) {
    for (const auto& c : result.cohorts) {
      for (std::size_t i = 0; i < result.table.cells.size(); ++i) {
        const auto& cell = result.table.cells[i];
        manifest.emit("rules_" + c.spec.slug() + "_s" + format_threshold(cell.min_support) + "_c" +
                          format_threshold(cell.min_confidence) + ".csv",
                      rules_to_csv(c.cell_rules[i]));
      }
    }
  }
  manifest.finish();
  out << text;
  return 0;
}

struct SynthOptions {
  std::uint64_t seed = 2024;
  std::size_t students_per_cell = 62;
  std::size_t sessions_per_student = 15;
  std::string out_dir = "lhmine_out";
};

int cmd_synth(const SynthOptions& opts, std::ostream& out) {
  RunManifest manifest("synth", opts.out_dir);
  auto spec = GeneratorSpec::with_default_profiles(opts.seed, opts.students_per_cell,
                                                   opts.sessions_per_student);
  auto records = generate_sessions(spec);
  manifest.meta()["seed"] = opts.seed;
  manifest.emit("sessions.csv", records_to_csv(records));
  manifest.emit("sessions.manifest.json", generator_manifest_json(spec, records.size()));
  manifest.finish();
  out << "generated " << records.size() << " sessions (seed " << opts.seed << ") -> "
      << opts.out_dir << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Association-rule mining for tutoring-session logs", "lhmine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonOptions common;
  MiningConfig config;
  std::string cohort = "all";

  auto* stats = app.add_subcommand("stats", "Indicator rates per cohort");
  add_common(stats, common, true);
  stats->add_option("--cohort", cohort, "low|high|with|without|all")->capture_default_str();

  auto* mine = app.add_subcommand("mine", "Frequent itemsets and ranked rules");
  add_common(mine, common, true);
  add_thresholds(mine, config);
  mine->add_option("--cohort", cohort, "low|high|with|without|all")->capture_default_str();

  auto* cohorts = app.add_subcommand("cohorts", "Mine overall and the four standard cohorts");
  add_common(cohorts, common, true);
  add_thresholds(cohorts, config);

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Tracked-rule stability across a threshold grid");
  add_common(sweep, common, true);
  add_thresholds(sweep, config, false);
  sweep->add_option("--support-levels", sweep_opts.grid.support_levels)
      ->delimiter(',')
      ->check(kFraction)
      ->capture_default_str();
  sweep->add_option("--confidence-levels", sweep_opts.grid.confidence_levels)
      ->delimiter(',')
      ->check(kFraction)
      ->capture_default_str();
  sweep->add_option("--track", sweep_opts.tracked,
                    "Tracked rule, e.g. \"Skipped=YES => Status=UNSOLVED\" (repeatable)");
  sweep->add_option("--cohort", sweep_opts.cohorts, "Cohorts to sweep (repeatable)");
  sweep->add_flag("--cell-rules", sweep_opts.cell_rules, "Also write each cell's rule list");

  SynthOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "Seeded synthetic session log");
  synth->add_option("--seed", synth_opts.seed)->capture_default_str();
  synth->add_option("--students-per-cell", synth_opts.students_per_cell)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--sessions-per-student", synth_opts.sessions_per_student)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--out-dir,-o", synth_opts.out_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*stats) return cmd_stats(common, cohort, out, err);
    if (*mine) return cmd_mine(common, config, cohort, out, err);
    if (*cohorts) return cmd_cohorts(common, config, out, err);
    if (*sweep) return cmd_sweep(common, sweep_opts, config, out, err);
    if (*synth) return cmd_synth(synth_opts, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("lhmine");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lhmine::cli
