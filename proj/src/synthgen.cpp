#include "lhmine/synthgen.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace lhmine {
namespace {

// mt19937_64 is specified bit-exactly by the standard, the std distributions
// are not, so sampling is done by hand to keep output identical across
// standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  bool bernoulli(double p) { return unit() < p; }

  std::uint64_t uniform(CountRange r) {
    const std::uint64_t span = r.hi - r.lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return engine_();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return r.lo + x % range;
  }

 private:
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
};

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must be within [0, 1]");
}

double combine(double lh_rate, double intervention_rate, double lh_mean,
               double intervention_mean) {
  return lh_rate * intervention_rate / ((lh_mean + intervention_mean) / 2.0);
}

const char* lh_name(LhLevel l) { return l == LhLevel::Low ? "Low" : "High"; }
const char* intervention_name(Intervention i) {
  return i == Intervention::With ? "With" : "Without";
}

std::string account_id(std::size_t index) {
  auto digits = std::to_string(index);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return "S" + digits;
}

}  // namespace

double BehaviorProfile::solve_rate() const {
  return p_skip * p_solve_given_skip + (1.0 - p_skip) * p_solve_given_noskip;
}

void BehaviorProfile::validate() const {
  check_probability(p_mistake, "p_mistake");
  check_probability(p_hint, "p_hint");
  check_probability(p_skip, "p_skip");
  check_probability(p_solve_given_skip, "p_solve_given_skip");
  check_probability(p_solve_given_noskip, "p_solve_given_noskip");
  for (const auto& r : {steps, hints, attempts, time_spent}) {
    if (r.lo > r.hi) throw std::invalid_argument("count range has lo > hi");
  }
}

BehaviorProfile BehaviorProfile::from_marginals(double p_mistake, double p_hint, double p_skip,
                                                double p_solve, double p_solve_given_skip) {
  BehaviorProfile p;
  p.p_mistake = p_mistake;
  p.p_hint = p_hint;
  p.p_skip = p_skip;
  p.p_solve_given_skip = p_solve_given_skip;
  if (p_skip >= 1.0) {
    p.p_solve_given_noskip = 0.0;
  } else {
    p.p_solve_given_noskip = (p_solve - p_skip * p_solve_given_skip) / (1.0 - p_skip);
  }
  p.validate();
  return p;
}

std::map<CellKey, BehaviorProfile> default_profiles() {
  using namespace calibration;
  const double hint_lh_mean = (kLowHint + kHighHint) / 2.0;
  const double hint_iv_mean = (kWithHint + kWithoutHint) / 2.0;
  const double solve_lh_mean = (kLowSolve + kHighSolve) / 2.0;
  const double solve_iv_mean = (kWithSolve + kWithoutSolve) / 2.0;

  std::map<CellKey, BehaviorProfile> out;
  for (auto lh : {LhLevel::Low, LhLevel::High}) {
    for (auto iv : {Intervention::With, Intervention::Without}) {
      const bool low = lh == LhLevel::Low;
      const bool with = iv == Intervention::With;
      const double mistake = low ? kLowMistake : kHighMistake;
      const double skip = with ? kWithSkip : kWithoutSkip;
      const double hint = combine(low ? kLowHint : kHighHint, with ? kWithHint : kWithoutHint,
                                  hint_lh_mean, hint_iv_mean);
      const double solve = combine(low ? kLowSolve : kHighSolve, with ? kWithSolve : kWithoutSolve,
                                   solve_lh_mean, solve_iv_mean);
      // Skipped sessions solve more often under intervention; this keeps the
      // no-skip => solved lift higher without intervention.
      const double solve_given_skip = with ? 0.12 : 0.02;
      out[{lh, iv}] = BehaviorProfile::from_marginals(mistake, hint, skip, solve, solve_given_skip);
    }
  }
  return out;
}

void GeneratorSpec::validate() const {
  if (students_per_cell == 0) throw std::invalid_argument("students_per_cell must be positive");
  if (sessions_per_student == 0)
    throw std::invalid_argument("sessions_per_student must be positive");
  if (profiles.empty()) throw std::invalid_argument("no behavior profiles");
  for (const auto& [key, profile] : profiles) profile.validate();
}

GeneratorSpec GeneratorSpec::with_default_profiles(std::uint64_t seed,
                                                   std::size_t students_per_cell,
                                                   std::size_t sessions_per_student) {
  return {seed, students_per_cell, sessions_per_student, default_profiles()};
}

std::vector<SessionRecord> generate_sessions(const GeneratorSpec& spec) {
  spec.validate();
  Sampler rng(spec.seed);
  std::vector<SessionRecord> out;
  out.reserve(spec.profiles.size() * spec.students_per_cell * spec.sessions_per_student);

  std::size_t student = 0;
  for (const auto& [cell, profile] : spec.profiles) {
    for (std::size_t s = 0; s < spec.students_per_cell; ++s) {
      auto account = account_id(++student);
      for (std::size_t k = 0; k < spec.sessions_per_student; ++k) {
        SessionRecord r;
        r.account = account;
        r.mistake_occurred = rng.bernoulli(profile.p_mistake);
        r.hint_used = rng.bernoulli(profile.p_hint);
        r.skipped = rng.bernoulli(profile.p_skip);
        const double p_solve =
            r.skipped ? profile.p_solve_given_skip : profile.p_solve_given_noskip;
        r.status = rng.bernoulli(p_solve) ? SessionStatus::Solved : SessionStatus::Unsolved;
        r.total_steps = rng.uniform(profile.steps);
        r.total_hints = r.hint_used ? rng.uniform(profile.hints) : 0;
        r.total_answer_attempts = rng.uniform(profile.attempts);
        r.time_spent = rng.uniform(profile.time_spent);
        r.with_intervention = cell.intervention == Intervention::With;
        r.lh_label = cell.lh;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::string generator_manifest_json(const GeneratorSpec& spec, std::size_t record_count) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["generator"] = "lhmine synth";
  j["seed"] = spec.seed;
  j["students_per_cell"] = spec.students_per_cell;
  j["sessions_per_student"] = spec.sessions_per_student;
  j["records"] = record_count;
  auto range = [](CountRange r) { return ordered_json::array({r.lo, r.hi}); };
  ordered_json cells = ordered_json::array();
  for (const auto& [key, p] : spec.profiles) {
    ordered_json c;
    c["label"] = lh_name(key.lh);
    c["intervention"] = intervention_name(key.intervention);
    c["p_mistake"] = p.p_mistake;
    c["p_hint"] = p.p_hint;
    c["p_skip"] = p.p_skip;
    c["p_solve_given_skip"] = p.p_solve_given_skip;
    c["p_solve_given_noskip"] = p.p_solve_given_noskip;
    c["p_solve"] = p.solve_rate();
    c["steps"] = range(p.steps);
    c["hints"] = range(p.hints);
    c["attempts"] = range(p.attempts);
    c["time_spent"] = range(p.time_spent);
    cells.push_back(std::move(c));
  }
  j["profiles"] = std::move(cells);
  return j.dump(2) + "\n";
}

}  // namespace lhmine
