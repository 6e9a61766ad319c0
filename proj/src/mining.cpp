#include "lhmine/mining.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lhmine/format.hpp"

namespace lhmine {
namespace {

using Word = std::uint64_t;
using Bitmap = std::vector<Word>;

// Transaction-id bitmap per item (vertical layout).
struct VerticalIndex {
  std::vector<ItemId> items;  // sorted
  std::vector<Bitmap> bitmaps;
  std::size_t words = 0;

  explicit VerticalIndex(std::span<const Transaction> transactions) {
    words = (transactions.size() + 63) / 64;
    std::vector<ItemId> all;
    for (const auto& t : transactions) all.insert(all.end(), t.begin(), t.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    items = std::move(all);
    bitmaps.assign(items.size(), Bitmap(words, 0));
    for (std::size_t tid = 0; tid < transactions.size(); ++tid) {
      for (auto id : transactions[tid]) {
        auto slot = std::lower_bound(items.begin(), items.end(), id) - items.begin();
        bitmaps[slot][tid / 64] |= Word{1} << (tid % 64);
      }
    }
  }

  const Bitmap& of(ItemId id) const {
    return bitmaps[std::lower_bound(items.begin(), items.end(), id) - items.begin()];
  }
};

std::uint64_t popcount(const Bitmap& bits) {
  std::uint64_t n = 0;
  for (auto w : bits) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

// Runs body(i) for i in [0, n) over contiguous chunks. Each index writes only
// its own output slot, so the result does not depend on the thread count.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  threads = resolve_threads(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
}

}  // namespace

void validate_fraction(double value, const char* name) {
  if (!(value > 0.0 && value <= 1.0))
    throw std::invalid_argument(std::string(name) + " must be in (0, 1], got " +
                                format_threshold(value));
}

FrequentItemsetTable::FrequentItemsetTable(std::size_t transaction_count, double min_support)
    : transaction_count_(transaction_count), min_support_(min_support) {}

void FrequentItemsetTable::insert(const Itemset& itemset, std::uint64_t count) {
  entries_[itemset] = count;
}

std::optional<std::uint64_t> FrequentItemsetTable::count(const Itemset& itemset) const {
  auto it = entries_.find(itemset);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> FrequentItemsetTable::support(const Itemset& itemset) const {
  auto c = count(itemset);
  if (!c) return std::nullopt;
  return static_cast<double>(*c) / static_cast<double>(transaction_count_);
}

std::vector<Itemset> generate_candidates(std::span<const Itemset> frequent) {
  if (frequent.empty()) return {};
  const std::size_t width = frequent.front().size();
  if (width == 0) throw std::invalid_argument("generate_candidates: empty itemset in input");
  for (const auto& s : frequent) {
    if (s.size() != width)
      throw std::invalid_argument("generate_candidates: mixed itemset sizes " +
                                  std::to_string(width) + " and " + std::to_string(s.size()));
  }

  std::vector<Itemset> level(frequent.begin(), frequent.end());
  std::sort(level.begin(), level.end());
  level.erase(std::unique(level.begin(), level.end()), level.end());

  auto shares_prefix = [width](const Itemset& a, const Itemset& b) {
    return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(width - 1), b.begin());
  };
  auto all_subsets_frequent = [&](const Itemset& candidate) {
    // Dropping either of the last two items yields the join parents.
    for (std::size_t i = 0; i + 2 < candidate.size(); ++i) {
      if (!std::binary_search(level.begin(), level.end(), candidate.without_index(i)))
        return false;
    }
    return true;
  };

  std::vector<Itemset> out;
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size() && shares_prefix(level[i], level[j]); ++j) {
      Itemset candidate = level[i].with(level[j][width - 1]);
      if (all_subsets_frequent(candidate)) out.push_back(std::move(candidate));
    }
  }
  return out;
}

std::map<Itemset, std::uint64_t> count_support(std::span<const Itemset> candidates,
                                               std::span<const Transaction> transactions) {
  std::map<Itemset, std::uint64_t> counts;
  for (const auto& c : candidates) {
    std::uint64_t n = 0;
    for (const auto& t : transactions) n += c.is_subset_of(t);
    counts[c] = n;
  }
  return counts;
}

FrequentItemsetTable frequent_itemsets(std::span<const Transaction> transactions,
                                       double min_support, MiningOptions options) {
  if (transactions.empty()) throw std::invalid_argument("no transactions");
  validate_fraction(min_support, "min_support");

  FrequentItemsetTable table(transactions.size(), min_support);
  const auto& threshold = table.min_support_threshold();
  const std::uint64_t total = transactions.size();
  VerticalIndex index(transactions);

  std::vector<Itemset> level;
  std::vector<Bitmap> level_bits;
  for (std::size_t i = 0; i < index.items.size(); ++i) {
    auto n = popcount(index.bitmaps[i]);
    if (support_meets(n, total, threshold)) {
      level.push_back(Itemset{index.items[i]});
      level_bits.push_back(index.bitmaps[i]);
      table.insert(level.back(), n);
    }
  }

  while (!level.empty()) {
    auto candidates = generate_candidates(level);
    if (candidates.empty()) break;

    std::vector<std::uint64_t> counts(candidates.size());
    std::vector<Bitmap> bits(candidates.size());
    parallel_for(candidates.size(), options.threads, [&](std::size_t c) {
      const auto& cand = candidates[c];
      // The first k-1 items of a candidate are one of its join parents.
      auto parent = cand.without_index(cand.size() - 1);
      auto p = std::lower_bound(level.begin(), level.end(), parent) - level.begin();
      const auto& lhs = level_bits[p];
      const auto& rhs = index.of(cand[cand.size() - 1]);
      Bitmap joint(index.words);
      for (std::size_t w = 0; w < index.words; ++w) joint[w] = lhs[w] & rhs[w];
      counts[c] = popcount(joint);
      if (support_meets(counts[c], total, threshold)) bits[c] = std::move(joint);
    });

    std::vector<Itemset> next;
    std::vector<Bitmap> next_bits;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!support_meets(counts[c], total, threshold)) continue;
      table.insert(candidates[c], counts[c]);
      next.push_back(std::move(candidates[c]));
      next_bits.push_back(std::move(bits[c]));
    }
    level = std::move(next);
    level_bits = std::move(next_bits);
  }
  return table;
}

std::string itemsets_to_csv(const FrequentItemsetTable& table) {
  std::vector<std::pair<const Itemset*, std::uint64_t>> rows;
  for (const auto& [set, count] : table.entries()) rows.emplace_back(&set, count);
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.first->size() < b.first->size();
  });
  std::string out = "itemset,support\n";
  const auto n = static_cast<double>(table.transaction_count());
  for (const auto& [set, count] : rows) {
    out += set->to_string() + ',' + format_decimal(static_cast<double>(count) / n) + '\n';
  }
  return out;
}

}  // namespace lhmine
