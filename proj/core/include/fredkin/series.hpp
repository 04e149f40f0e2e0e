#pragma once

#include <gmpxx.h>

#include <vector>

#include "fredkin/counts.hpp"

namespace fredkin {

// Dense integer power series truncated at a fixed order: s[k] is the exact
// coefficient of x^k, size = order + 1.
using Series = std::vector<mpz_class>;

Series series_add(const Series& x, const Series& y);
Series series_sub(const Series& x, const Series& y);
Series series_mul(const Series& x, const Series& y, int order);
// Quotient of power series with den[0] == 1 (exact over the integers).
Series series_div_unit(const Series& num, const Series& den, int order);
// Division by x^k; throws IdentityViolationError if a low coefficient is
// nonzero (the closed forms must have the claimed valuation).
Series series_shift_down(const Series& s, int k);

// The profile-walk generating function in the auxiliary variable:
// sum_m dyck_catalan(2m, 0) X^{2m}, truncated at X^order.
Series catalan_series(int order);

// Coefficient lists of the closed-form family generating functions, one per
// coupling regime.  All three return exact integers; combinations whose count
// vanishes identically give the zero series; kMountainsOnly combinations with
// no tabulated class throw std::invalid_argument.
Series series_genfunc(Phase phase, int h, int a, int b, int order);

// Verifies that X^h * Catalan(X)^(h+1) reproduces the height-h profile counts
// coefficient by coefficient, for every h <= h_max and n <= n_max.  Throws
// IdentityViolationError at the first mismatch, returns true otherwise.
bool verify_identity_catalan_power(int n_max, int h_max);

}  // namespace fredkin
