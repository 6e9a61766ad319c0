#include "lhmine/thresholds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lhmine {

__extension__ typedef unsigned __int128 u128;

Threshold::Threshold(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0 || value > 1e9)
    throw std::invalid_argument("threshold out of range");
  num_ = std::llround(value * static_cast<double>(kScale));
  den_ = kScale;
  auto g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

bool Threshold::met_by(std::uint64_t numer, std::uint64_t denom) const {
  return u128(numer) * u128(den_) >= u128(num_) * u128(denom);
}

bool Threshold::exceeded_by_ratio_of_products(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                              std::uint64_t d) const {
  // No overflow for counts below 2^32: both sides stay under 2^126.
  return u128(a) * b * u128(den_) > u128(num_) * (u128(c) * d);
}

bool support_meets(std::uint64_t count, std::uint64_t total, const Threshold& min_support) {
  return total > 0 && min_support.met_by(count, total);
}

bool confidence_meets(std::uint64_t joint, std::uint64_t antecedent,
                      const Threshold& min_confidence) {
  return antecedent > 0 && min_confidence.met_by(joint, antecedent);
}

bool lift_exceeds(std::uint64_t joint, std::uint64_t antecedent, std::uint64_t consequent,
                  std::uint64_t total, const Threshold& min_lift) {
  if (antecedent == 0 || consequent == 0) return false;
  return min_lift.exceeded_by_ratio_of_products(joint, total, antecedent, consequent);
}

}  // namespace lhmine
