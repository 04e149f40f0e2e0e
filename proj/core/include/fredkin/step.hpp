#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fredkin {

// One letter of the six-letter local alphabet: an ordered pair of distinct
// arrow indices (a, b) with a, b in {1, 2, 3}.  The letter is an up step when
// a < b and a down step when a > b.
//
// Letters carry a fixed code in 0..5 used for basis indexing everywhere:
//   0: (1,2)  1: (1,3)  2: (2,3)   <- up steps
//   3: (2,1)  4: (3,1)  5: (3,2)   <- down steps
struct Step {
  std::uint8_t a = 1;
  std::uint8_t b = 2;

  constexpr Step() = default;
  constexpr Step(int a_, int b_)
      : a(static_cast<std::uint8_t>(a_)), b(static_cast<std::uint8_t>(b_)) {
    if (a_ < 1 || a_ > 3 || b_ < 1 || b_ > 3 || a_ == b_)
      throw std::invalid_argument("step indices must be distinct and in 1..3");
  }

  constexpr bool is_up() const { return a < b; }
  constexpr int height_delta() const { return is_up() ? +1 : -1; }

  // Fixed 0..5 code (ups first, then downs; lexicographic within each group).
  constexpr int code() const {
    constexpr int table[4][4] = {
        {-1, -1, -1, -1}, {-1, -1, 0, 1}, {-1, 3, -1, 2}, {-1, 4, 5, -1}};
    return table[a][b];
  }

  static constexpr Step from_code(int c) {
    constexpr std::array<std::array<int, 2>, 6> pairs = {
        {{1, 2}, {1, 3}, {2, 3}, {2, 1}, {3, 1}, {3, 2}}};
    if (c < 0 || c > 5) throw std::invalid_argument("step code out of range");
    return Step(pairs[static_cast<std::size_t>(c)][0],
                pairs[static_cast<std::size_t>(c)][1]);
  }

  std::string text() const {
    return std::to_string(a) + "," + std::to_string(b);
  }

  friend constexpr auto operator<=>(const Step&, const Step&) = default;
};

inline constexpr int kAlphabetSize = 6;

}  // namespace fredkin
