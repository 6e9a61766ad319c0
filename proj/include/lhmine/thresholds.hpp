#pragma once

#include <cstdint>

namespace lhmine {

/// Exact rational threshold. Built from a decimal value on a 1e-9 grid so
/// that "support >= 0.20" at support = 1/5 compares exactly, with no
/// float-boundary misclassification.
class Threshold {
 public:
  static constexpr std::int64_t kScale = 1'000'000'000;

  Threshold() = default;
  explicit Threshold(double value);

  double value() const { return value_; }
  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  /// numer/denom >= threshold, computed exactly.
  bool met_by(std::uint64_t numer, std::uint64_t denom) const;
  /// (a*b)/(c*d) > threshold, computed exactly.
  bool exceeded_by_ratio_of_products(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                     std::uint64_t d) const;

  friend bool operator==(const Threshold& a, const Threshold& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  double value_ = 0.0;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// count/total >= min_support.
bool support_meets(std::uint64_t count, std::uint64_t total, const Threshold& min_support);

/// joint/antecedent >= min_confidence. A zero antecedent count never meets.
bool confidence_meets(std::uint64_t joint, std::uint64_t antecedent, const Threshold& min_confidence);

/// joint*total / (antecedent*consequent) > min_lift.
bool lift_exceeds(std::uint64_t joint, std::uint64_t antecedent, std::uint64_t consequent,
                  std::uint64_t total, const Threshold& min_lift);

}  // namespace lhmine
