#include "lhmine/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace lhmine {

std::string format_fixed(double value, int decimals) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return "nan";
  std::string out(buf.data(), ptr);
  if (out.starts_with("-") && out.find_first_not_of("-0.") == std::string::npos)
    out.erase(0, 1);
  return out;
}

std::string format_decimal(double value) {
  if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
  if (value == 0.0) return "0.000000";
  int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(value))));
  int decimals = std::max(0, 5 - magnitude);
  return format_fixed(value, decimals);
}

std::string format_threshold(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  std::string out = ec == std::errc{} ? std::string(buf.data(), ptr) : "nan";
  auto dot = out.find('.');
  if (dot == std::string::npos) {
    out += ".00";
  } else if (out.size() - dot - 1 < 2) {
    out.append(2 - (out.size() - dot - 1), '0');
  }
  return out;
}

}  // namespace lhmine
