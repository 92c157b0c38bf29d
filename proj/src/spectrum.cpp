#include "eonsim/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "eonsim/types.hpp"

namespace eonsim {

namespace {

using Word = SpectrumGrid::Word;
constexpr int kBits = SpectrumGrid::kWordBits;

// Mask selecting bits [lo, hi) of one word, 0 <= lo < hi <= 64.
Word range_mask(int lo, int hi) {
  const Word upper = hi == kBits ? ~Word{0} : ((Word{1} << hi) - 1);
  return upper & ~((Word{1} << lo) - 1);
}

template <typename Fn>
void for_each_word(int start, int length, Fn&& fn) {
  const int end = start + length;
  for (int pos = start; pos < end;) {
    const int w = pos / kBits;
    const int lo = pos % kBits;
    const int hi = std::min(kBits, lo + (end - pos));
    fn(static_cast<std::size_t>(w), range_mask(lo, hi));
    pos += hi - lo;
  }
}

// First index >= from whose bit equals `want`, scanning `bits` up to `limit`; returns limit if none.
int find_next(std::span<const Word> bits, int from, int limit, bool want) {
  int pos = from;
  while (pos < limit) {
    const int w = pos / kBits;
    Word word = want ? bits[w] : ~bits[w];
    word &= ~Word{0} << (pos % kBits);
    if (word != 0) {
      return std::min(limit, w * kBits + std::countr_zero(word));
    }
    pos = (w + 1) * kBits;
  }
  return limit;
}

}  // namespace

SpectrumGrid::SpectrumGrid(int slot_count, double slot_width_ghz)
    : slot_count_(slot_count), slot_width_ghz_(slot_width_ghz) {
  if (slot_count <= 0) throw ValidationError("slot_count must be positive");
  if (!(slot_width_ghz > 0.0)) throw ValidationError("slot_width_ghz must be positive");
  words_.assign(static_cast<std::size_t>((slot_count + kBits - 1) / kBits), 0);
}

bool SpectrumGrid::occupied(int slot) const {
  return (words_[static_cast<std::size_t>(slot / kBits)] >> (slot % kBits)) & 1U;
}

int SpectrumGrid::occupied_count() const {
  int n = 0;
  for (Word w : words_) n += std::popcount(w);
  return n;
}

bool SpectrumGrid::is_free(int start, int length) const {
  if (start < 0 || length <= 0 || start + length > slot_count_) return false;
  bool free = true;
  for_each_word(start, length, [&](std::size_t w, Word mask) { free = free && (words_[w] & mask) == 0; });
  return free;
}

void SpectrumGrid::occupy(int start, int length) {
  if (!is_free(start, length)) {
    throw AllocationConflict("slots [" + std::to_string(start) + ", " + std::to_string(start + length) +
                             ") not free");
  }
  for_each_word(start, length, [&](std::size_t w, Word mask) { words_[w] |= mask; });
}

void SpectrumGrid::release(int start, int length) {
  if (start < 0 || length <= 0 || start + length > slot_count_) {
    throw AllocationConflict("release outside grid");
  }
  bool all_set = true;
  for_each_word(start, length, [&](std::size_t w, Word mask) { all_set = all_set && (words_[w] & mask) == mask; });
  if (!all_set) {
    throw AllocationConflict("release of free slots in [" + std::to_string(start) + ", " +
                             std::to_string(start + length) + ")");
  }
  for_each_word(start, length, [&](std::size_t w, Word mask) { words_[w] &= ~mask; });
}

std::optional<int> first_fit(std::span<const SpectrumGrid* const> grids, int length) {
  if (grids.empty() || length <= 0) return std::nullopt;
  const int slots = grids.front()->slot_count();
  if (length > slots) return std::nullopt;

  // Union of occupancy along the path: a slot is usable only if free on every fiber.
  std::vector<Word> merged(grids.front()->words().begin(), grids.front()->words().end());
  for (const SpectrumGrid* g : grids.subspan(1)) {
    if (g->slot_count() != slots) throw ValidationError("first_fit over grids of different sizes");
    const auto w = g->words();
    for (std::size_t i = 0; i < merged.size(); ++i) merged[i] |= w[i];
  }

  int pos = 0;
  while (pos + length <= slots) {
    const int start = find_next(merged, pos, slots, false);
    if (start + length > slots) break;
    const int stop = find_next(merged, start, start + length, true);
    if (stop == start + length) return start;
    pos = stop;
  }
  return std::nullopt;
}

}  // namespace eonsim
