#pragma once

#include <gmpxx.h>

#include "fredkin/counts.hpp"

namespace fredkin {

// Exact single-point counts that avoid the length-by-length tables, built on
// the closed binomial sum for the height-h return counts
//
//   N^(h)_{p, 2->1} = sum_n  D^(h)_n * binom((p-n)/2 - 1, n) * 3^((p-3n)/2 - 1)
//
// over profile lengths n with p - n even and p - 3n >= 2, where D^(h)_n is
// the profile count dyck_catalan(n, h).  All other (a, b) pairs reduce to
// this kernel through exact single-point relations (verified against the
// tables in the tests).  Cost is O(p) big-integer terms for a = 1 and O(p^2)
// for a = 2; no storage grows with p.
mpz_class tall_walk_count(int p, int h);
mpz_class count_phase1_pointwise(int n, int h, int a, int b);

// Natural logarithms of the counts (-infinity when the count is zero),
// evaluated without big integers via lgamma and log-sum-exp; relative error
// is a few ulps and independent of n.  Phase kMountainsOnly / kPairPenalty
// values are Fibonacci numbers, evaluated by the closed golden-ratio form.
double log_count(Phase phase, int n, int h, int a, int b);
double log_dyck_catalan(int n, int h);

// Exact factorization check: cutting every length-2p walk of the full regime
// at distance r from the middle must reproduce the total,
//   sum_{h, b} N^(h)_{p+r, a->b} * N^(h)_{p-r, c->b} = N_{2p, a->c}.
// Returns true; throws IdentityViolationError with the failing values.
bool composition_check(int p, int r, int a, int c);

// The analogous exact factorization of the move-class tables
// (kMountainsOnly), in the parity-dependent two-term form.  2n is the total
// length, r the cut offset.
bool composition_check_mountains(int n, int r);

}  // namespace fredkin
