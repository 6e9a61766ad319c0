#pragma once

#include <string>

namespace lhmine {

// Locale-independent fixed-point formatting for CSV output.

/// Fixed notation carrying at least 6 significant digits ("0.352941", "1.30769").
std::string format_decimal(double value);

/// Fixed notation with exactly `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Threshold rendering: shortest exact form, at least 2 decimals ("0.50", "0.125").
std::string format_threshold(double value);

}  // namespace lhmine
