#include "lhmine/item.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace lhmine {
namespace {

constexpr std::array<std::string_view, items::kVocabularySize> kLabels = {
    "MistakeOccurred=YES", "MistakeOccurred=NO", "HintUsed=YES", "HintUsed=NO",
    "Skipped=YES",         "Skipped=NO",         "Status=SOLVED", "Status=UNSOLVED",
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) !=
        std::toupper(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

}  // namespace

std::optional<Attribute> attribute_of(ItemId id) {
  if (id >= items::kVocabularySize) return std::nullopt;
  return static_cast<Attribute>(id / 2);
}

std::string item_label(ItemId id) {
  if (id < items::kVocabularySize) return std::string(kLabels[id]);
  return "item" + std::to_string(id);
}

std::optional<ItemId> parse_item_label(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  for (ItemId id = 0; id < items::kVocabularySize; ++id) {
    if (iequals(text, kLabels[id])) return id;
  }
  if (text.size() > 4 && iequals(text.substr(0, 4), "item")) {
    ItemId id = 0;
    auto digits = text.substr(4);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec == std::errc{} && ptr == digits.data() + digits.size()) return id;
  }
  return std::nullopt;
}

}  // namespace lhmine
