#pragma once

#include <gmpxx.h>

#include <vector>

#include "fredkin/walks.hpp"

namespace fredkin {

// Coupling regime a counting table refers to.
//   kFull:          both movesets active - counts whole (a, b, h) families.
//   kMountainsOnly: valley recoloring off - counts single move classes
//                   (closures of the canonical seeds); Fibonacci-type tables.
//   kPairPenalty:   valley recoloring off and pair penalty on - counts
//                   families of walks avoiding the factors x13 x32 / x23 x31.
enum class Phase { kFull = 1, kMountainsOnly = 2, kPairPenalty = 3 };

// Exact walk counts, built from the family recursions and memoized per n.
//
// Phase kFull entries N^(h)_{n, a->b} count connected length-n walks that
// start at height 0 with arrow index a, stay at heights >= 0, and end at
// height h with arrow index b.  They obey (all counts 0 for negative n,
// N_{0,a->b} = delta_{ab} at h = 0, zero at h >= 1, and N_{n,3->b} = 0 for
// n >= 1):
//
//   height 0:
//     N_{n,1->1} = sum_i N_{i,2->2} N_{n-2-i,1->1} + N_{n-2,1->1} + N_{n-2,2->1}
//     N_{n,2->2} = N_{n-2,2->2} + N_{n-2,2->1}
//     N_{n,2->1} = N_{n-2,2->1} + N_{n-2,1->1}
//     N_{n,a->b} = N_{n,b->a};  N_{n,a->3} = 0
//   height h >= 1:
//     N^(h)_{n,1->b} = N^(h-1)_{n-1,2->b} + d_{b,3} d_{h,1} d_{n,1}
//                      + sum_i N_{i,2->2} N^(h)_{n-2-i,1->b}
//                      + N^(h)_{n-2,1->b} + N^(h)_{n-2,2->b}
//     N^(h)_{n,2->b} = d_{b,3} d_{h,1} d_{n,1} + N^(h)_{n-2,1->b} + N^(h)_{n-2,2->b}
//
// Phase kPairPenalty entries are computed by a transfer DP over (height,
// last letter) that forbids the two penalized two-letter factors.
//
// Phase kMountainsOnly tabulates the move-class sizes M with the linear
// recurrence M_n = 3 M_{n-2} - M_{n-4} (M_0 = 1, M_2 = 2) and the derived
// climbing tables; see count() for the supported (h, a, b) combinations.
class CountTable {
 public:
  explicit CountTable(Phase phase, int capacity = kDefaultCapacity);

  Phase phase() const { return phase_; }

  // Exact count for length n, end height h, indices a -> b.  Extends the
  // table as needed; throws CapacityError beyond the capacity and
  // std::invalid_argument for a kMountainsOnly combination with no tabulated
  // move class.
  const mpz_class& count(int n, int h, int a, int b);

  // Largest length currently tabulated.
  int built() const { return built_; }
  int capacity() const { return capacity_; }

  static constexpr int kDefaultCapacity = 4096;

 private:
  void extend(int n);
  void extend_full(int n);
  void extend_pair_penalty(int n);
  void extend_mountains(int n);
  mpz_class& at(int n, int h, int a, int b);

  Phase phase_;
  int capacity_;
  int built_ = -1;
  // entries_[n][h * 9 + (a-1) * 3 + (b-1)]; h up to max_height(n).
  std::vector<std::vector<mpz_class>> entries_;
  // kPairPenalty DP layers: layer_[a-1][h * 6 + last_code] after built_ letters.
  std::vector<std::vector<mpz_class>> layer_;
  static const mpz_class kZero;
};

// Shared process-wide tables (single-threaded access).
CountTable& count_table(Phase phase);

// Convenience lookups into the shared tables.
const mpz_class& count_phase1(int n, int h, int a, int b);
const mpz_class& count_phase2(int n, int h, int a, int b);
const mpz_class& count_phase3(int n, int h, int a, int b);

// Descending-walk counts: walks running from height h (index b) down to
// height 0 (index c) with the floor constraint, obtained from the ascending
// tables by reading the word backwards with arrow roles exchanged.
const mpz_class& count_descending(int n, int h, int b, int c);

// Number of height-profile walks (no arrow indices) of length n from 0 to h
// staying >= 0: (h+1)/((n+h)/2+1) * binom(n, (n+h)/2) for n + h even.
// The division is checked to be exact.
mpz_class dyck_catalan(int n, int h);

}  // namespace fredkin
