#ifndef EONSIM_SPECTRUM_HPP
#define EONSIM_SPECTRUM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace eonsim {

inline constexpr int kDefaultSlotCount = 320;
inline constexpr double kDefaultSlotWidthGhz = 12.5;

/// Occupancy of the fixed-width slots of one directed fiber, packed 64 slots per word.
class SpectrumGrid {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  explicit SpectrumGrid(int slot_count = kDefaultSlotCount, double slot_width_ghz = kDefaultSlotWidthGhz);

  [[nodiscard]] int slot_count() const { return slot_count_; }
  [[nodiscard]] double slot_width_ghz() const { return slot_width_ghz_; }

  [[nodiscard]] bool occupied(int slot) const;
  [[nodiscard]] int occupied_count() const;
  [[nodiscard]] bool empty() const { return occupied_count() == 0; }

  /// True when every slot of [start, start + length) is free and inside the grid.
  [[nodiscard]] bool is_free(int start, int length) const;

  /// Marks [start, start + length) occupied. Throws AllocationConflict if any slot is taken.
  void occupy(int start, int length);
  /// Clears [start, start + length). Throws AllocationConflict if any slot was already free.
  void release(int start, int length);

  [[nodiscard]] std::span<const Word> words() const { return words_; }

  friend bool operator==(const SpectrumGrid&, const SpectrumGrid&) = default;

 private:
  int slot_count_;
  double slot_width_ghz_;
  std::vector<Word> words_;
};

/// Lowest start index such that [start, start + length) is free on every grid,
/// or nullopt. All grids must share one slot_count.
[[nodiscard]] std::optional<int> first_fit(std::span<const SpectrumGrid* const> grids, int length);

}  // namespace eonsim

#endif  // EONSIM_SPECTRUM_HPP
