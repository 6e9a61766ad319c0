#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lhmine {

using ItemId = std::uint32_t;

/// The four behavioral indicators that become transaction items.
enum class Attribute : std::uint8_t { Mistake, Hint, Skipped, Status };

// Canonical item order: attribute order, then value order (YES before NO,
// SOLVED before UNSOLVED). Ids follow that order, so sorting ids sorts items.
namespace items {
inline constexpr ItemId kMistakeYes = 0;
inline constexpr ItemId kMistakeNo = 1;
inline constexpr ItemId kHintYes = 2;
inline constexpr ItemId kHintNo = 3;
inline constexpr ItemId kSkippedYes = 4;
inline constexpr ItemId kSkippedNo = 5;
inline constexpr ItemId kStatusSolved = 6;
inline constexpr ItemId kStatusUnsolved = 7;
inline constexpr ItemId kVocabularySize = 8;
}  // namespace items

/// Attribute of a domain item; nullopt for ids outside the 8-item vocabulary.
std::optional<Attribute> attribute_of(ItemId id);

/// "Skipped=YES", "Status=UNSOLVED", ... Ids outside the domain vocabulary
/// render as "item<N>" so the mining engine can serialize arbitrary data.
std::string item_label(ItemId id);

/// Inverse of item_label. Case-insensitive on both sides of the '='.
std::optional<ItemId> parse_item_label(std::string_view text);

}  // namespace lhmine
