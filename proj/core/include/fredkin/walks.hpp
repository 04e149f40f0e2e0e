#pragma once

#include <cstdint>
#include <vector>

#include "fredkin/path.hpp"

namespace fredkin {

// Largest height a length-n connected walk confined to the nonnegative
// half-line can reach: climbing costs three letters per unit of height after
// the first step (the arrow indices must cycle 1 -> 2 -> 3 before the walk can
// climb again from the same residue).  n = 0 is a domain error.
int max_height(int n);

// A family of connected, floor-respecting walks: length is supplied per call;
// (a, b) are the first arrow index and the last arrow index; h is the final
// height (the walk starts at height 0 and stays >= 0 throughout).
struct WalkClass {
  int a = 1;
  int b = 1;
  int h = 0;

  friend bool operator==(const WalkClass&, const WalkClass&) = default;
};

struct EnumerateOptions {
  // Start height; prefix heights must stay >= 0 when restricted.
  int start_height = 0;
  // When false, the floor constraint is dropped and only the net height
  // change (h - start_height) matters.
  bool restricted = true;
  // Hard cap on the number of returned walks (CapacityError beyond it).
  std::uint64_t max_results = 1u << 22;
};

// All connected length-n walks of class cls, in increasing basis-code order.
// Counts from this enumeration are the ground truth the tabulated counts are
// tested against.
std::vector<Path> enumerate_walks(int n, const WalkClass& cls,
                                  const EnumerateOptions& opts = {});

// Convenience: the number of walks enumerate_walks would return, computed by
// the same backtracking without storing the paths (still exponential; intended
// for oracle cross-checks at small n).
std::uint64_t enumerate_count(int n, const WalkClass& cls,
                              const EnumerateOptions& opts = {});

}  // namespace fredkin
