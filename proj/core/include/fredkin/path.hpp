#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "fredkin/step.hpp"

namespace fredkin {

// Connectivity classification of a walk: connected (no broken junction),
// totally disconnected (every junction broken), or in between.
enum class WalkKind { kConnected, kPartiallyDisconnected, kTotallyDisconnected };

struct Classification {
  WalkKind kind = WalkKind::kConnected;
  // 1-based junction labels k (junction between sites k and k+1) at which the
  // outgoing index of site k differs from the incoming index of site k+1.
  std::vector<int> sites;
};

// A word in the six-letter alphabet; site s holds steps[s-1].  The same type
// serves as a walk (the height profile of its up/down pattern) and as a basis
// label of the length-n chain.
struct Path {
  std::vector<Step> steps;

  Path() = default;
  explicit Path(std::vector<Step> s) : steps(std::move(s)) {}

  int size() const { return static_cast<int>(steps.size()); }
  bool empty() const { return steps.empty(); }

  int first_index() const { return steps.front().a; }
  int last_index() const { return steps.back().b; }

  // Heights visited, length size()+1, starting from start_height.
  std::vector<int> heights(int start_height = 0) const;
  int end_height(int start_height = 0) const;
  int min_height(int start_height = 0) const;
  int max_height_reached(int start_height = 0) const;

  // True when every prefix height stays >= 0 (with the given start height).
  bool stays_nonnegative(int start_height = 0) const;

  // Junction labels k (1-based, k in 1..size()-1) where steps[k-1].b differs
  // from steps[k].a.  Empty means connected.
  std::vector<int> disconnection_sites() const;
  Classification classify() const;
  bool is_connected() const { return disconnection_sites().empty(); }

  // Basis index of this word: big-endian base 6 in site order, i.e. site 1 is
  // the most significant digit.  Requires size() <= 24 (fits in 64 bits).
  std::uint64_t encode() const;
  static Path decode(std::uint64_t index, int n);

  // Text form: whitespace-separated "a,b" tokens; with mark_disconnections,
  // a "|" token is inserted at every broken junction.
  std::string text(bool mark_disconnections = false) const;

  // Parses the text form.  "|" tokens are optional but each one must sit at a
  // junction that really is disconnected; otherwise the parse is rejected.
  static Path parse(const std::string& text);

  friend bool operator==(const Path&, const Path&) = default;
  // Order: lexicographic in letter codes, i.e. increasing basis index for
  // words of equal length (the canonical output order everywhere).
  friend std::strong_ordering operator<=>(const Path& x, const Path& y) {
    const std::size_t m = std::min(x.steps.size(), y.steps.size());
    for (std::size_t i = 0; i < m; ++i) {
      const int cx = x.steps[i].code(), cy = y.steps[i].code();
      if (cx != cy) return cx <=> cy;
    }
    return x.steps.size() <=> y.steps.size();
  }
};

// Number of length-n words (6^n) as a 64-bit value; throws CapacityError for
// n > 24.
std::uint64_t word_space_size(int n);

}  // namespace fredkin
