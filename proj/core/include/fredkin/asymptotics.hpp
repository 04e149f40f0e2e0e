#pragma once

#include "fredkin/counts.hpp"

namespace fredkin {

// Which large-n law a family follows.
enum class AsymptoticKind {
  kSquareRootSingularity,  // full regime: c * 2^n / n^{3/2}, Gaussian height factor
  kGoldenRatio,            // move-class / pair-penalty tables: ~ phi^n / sqrt(5)
  kConstant,               // families that saturate at a single walk
};

AsymptoticKind asymptotic_kind(Phase phase, int h, int a, int b);

// Natural log of the leading asymptotic prediction for the exact count of
// the (n, h, a, b) family in the given regime; -infinity where the count
// vanishes identically (parity, unreachable classes).  Throws
// std::invalid_argument for kMountainsOnly combinations with no tabulated
// class.
double asymptotic_log_count(Phase phase, int n, int h, int a, int b);

// The prediction itself (overflows to +infinity for large n; prefer the log).
double asymptotic_count(Phase phase, int n, int h, int a, int b);

// Natural log of the large-n prediction for the profile counts
// dyck_catalan(n, h).
double asymptotic_log_dyck(int n, int h);

}  // namespace fredkin
