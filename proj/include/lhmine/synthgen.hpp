#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lhmine/transactions.hpp"

namespace lhmine {

/// Per-cohort indicator rates the default profiles are calibrated to.
namespace calibration {
inline constexpr double kWithHint = 0.141;
inline constexpr double kWithoutHint = 0.342;
inline constexpr double kWithSkip = 0.537;
inline constexpr double kWithoutSkip = 0.351;
inline constexpr double kWithSolve = 0.188;
inline constexpr double kWithoutSolve = 0.201;
inline constexpr double kLowHint = 0.283;
inline constexpr double kHighHint = 0.211;
inline constexpr double kLowMistake = 0.418;
inline constexpr double kHighMistake = 0.444;
inline constexpr double kLowSolve = 0.207;
inline constexpr double kHighSolve = 0.168;
}  // namespace calibration

struct CountRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

struct BehaviorProfile {
  double p_mistake = 0.0;
  double p_hint = 0.0;
  double p_skip = 0.0;
  double p_solve_given_skip = 0.0;
  double p_solve_given_noskip = 0.0;
  CountRange steps{0, 3};
  CountRange hints{1, 3};  // drawn only for sessions that used a hint
  CountRange attempts{0, 12};
  CountRange time_spent{0, 600};

  /// p_skip * p_solve_given_skip + (1 - p_skip) * p_solve_given_noskip
  double solve_rate() const;
  void validate() const;

  /// Solves for p_solve_given_noskip so the profile hits `p_solve` overall.
  static BehaviorProfile from_marginals(double p_mistake, double p_hint, double p_skip,
                                        double p_solve, double p_solve_given_skip);
};

struct CellKey {
  LhLevel lh = LhLevel::Low;
  Intervention intervention = Intervention::With;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct GeneratorSpec {
  std::uint64_t seed = 2024;
  std::size_t students_per_cell = 62;
  std::size_t sessions_per_student = 15;
  std::map<CellKey, BehaviorProfile> profiles;

  void validate() const;
  static GeneratorSpec with_default_profiles(std::uint64_t seed, std::size_t students_per_cell,
                                             std::size_t sessions_per_student = 15);
};

/// Profiles for the four label x intervention cells, combining the LH and
/// intervention rate families multiplicatively around their pooled mean.
std::map<CellKey, BehaviorProfile> default_profiles();

/// Deterministic in `spec`: cells in key order, students numbered S0001...,
/// one seeded stream drawn in a fixed order per session.
/// Throws std::invalid_argument on zero students, zero sessions or a bad profile.
std::vector<SessionRecord> generate_sessions(const GeneratorSpec& spec);

/// Sidecar manifest: seed, counts and every profile, as JSON text.
std::string generator_manifest_json(const GeneratorSpec& spec, std::size_t record_count);

}  // namespace lhmine
