#include "fredkin/pointwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fredkin/errors.hpp"
#include "fredkin/walks.hpp"

namespace fredkin {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_class(int n, int h, int a, int b) {
  if (n < 0) throw std::invalid_argument("count: negative length");
  if (h < 0) throw std::invalid_argument("count: negative height");
  if (a < 1 || a > 3 || b < 1 || b > 3)
    throw std::invalid_argument("count: arrow indices must be in 1..3");
}

mpz_class power_of_3(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 3, e);
  return p;
}

}  // namespace

mpz_class tall_walk_count(int p, int h) {
  if (p < 0 || h < 0) throw std::invalid_argument("tall_walk_count: negative argument");
  mpz_class sum(0);
  if ((p + h) % 2 != 0) return sum;
  // Profile length n: same parity as p (and as h), at most (p - 2) / 3.
  for (int n = p % 2; 3 * n <= p - 2; n += 2) {
    const mpz_class profile = dyck_catalan(n, h);
    if (profile == 0) continue;
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>((p - n) / 2 - 1),
                 static_cast<unsigned long>(n));
    sum += profile * binom * power_of_3(static_cast<unsigned long>((p - 3 * n) / 2 - 1));
  }
  return sum;
}

mpz_class count_phase1_pointwise(int n, int h, int a, int b) {
  check_class(n, h, a, b);
  if (n == 0) return (h == 0 && a == b) ? 1 : 0;
  if (a == 3) return 0;
  if ((n + h) % 2 != 0) return 0;

  if (h == 0) {
    if (b == 3) return 0;
    if (b == 2 && a == 1) return tall_walk_count(n, 0);  // reversal symmetry
    if (b == 1 && a == 2) return tall_walk_count(n, 0);
    if (a == 1 && b == 1) return tall_walk_count(n + 2, 0) - tall_walk_count(n, 0);
    // (2,2): unrolled two-step recursion ending in the empty walk.
    mpz_class sum(n % 2 == 0 ? 1 : 0);
    for (int m = n - 2; m >= 0; m -= 2) sum += tall_walk_count(m, 0);
    return sum;
  }

  // h >= 1
  if (b == 1) {
    if (a == 2) return tall_walk_count(n, h);
    return tall_walk_count(n + 2, h) - tall_walk_count(n, h);
  }
  if (b == 2) {
    if (a == 1) return tall_walk_count(n, h) + tall_walk_count(n + 1, h - 1);
    mpz_class sum(0);
    for (int m = n - 2; m >= 0; m -= 2)
      sum += tall_walk_count(m, h) + tall_walk_count(m + 1, h - 1);
    return sum;
  }
  // b == 3
  const auto one_to_three = [](int m, int hh) -> mpz_class {
    if (m <= 0) return 0;
    if (hh == 1) return tall_walk_count(m + 1, 0);
    return tall_walk_count(m + 1, hh - 1) + tall_walk_count(m, hh - 2);
  };
  if (a == 1) return one_to_three(n, h);
  mpz_class sum((h == 1 && n % 2 == 1) ? 1 : 0);
  for (int m = n - 2; m >= 0; m -= 2) sum += one_to_three(m, h);
  return sum;
}

namespace {

double log_sum_exp(const std::vector<double>& xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double acc = 0;
  for (double x : xs)
    if (x != kNegInf) acc += std::exp(x - m);
  return m + std::log(acc);
}

// log(e^x - e^y) for x > y; tolerates y = -inf.
double log_diff_exp(double x, double y) {
  if (y == kNegInf) return x;
  if (x == kNegInf || x <= y)
    throw IdentityViolationError("log-domain count went nonpositive");
  return x + std::log1p(-std::exp(y - x));
}

double log_binom(long n, long k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(static_cast<double>(n) + 1) -
         std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

double log_tall(int p, int h) {
  if (p < 0 || h < 0 || (p + h) % 2 != 0) return kNegInf;
  static const double kLog3 = std::log(3.0);
  std::vector<double> terms;
  for (int n = p % 2; 3 * n <= p - 2; n += 2) {
    const double profile = log_dyck_catalan(n, h);
    if (profile == kNegInf) continue;
    terms.push_back(profile + log_binom((p - n) / 2 - 1, n) +
                    ((p - 3 * n) / 2 - 1) * kLog3);
  }
  return log_sum_exp(terms);
}

// log of the Fibonacci number F_m (F_1 = F_2 = 1) by the golden-ratio form.
double log_fibonacci(long m) {
  if (m <= 0) return kNegInf;
  static const double kPhi = (1 + std::sqrt(5.0)) / 2;
  static const double kLogPhi = std::log(kPhi);
  static const double kHalfLog5 = 0.5 * std::log(5.0);
  const double md = static_cast<double>(m);
  // F_m = (phi^m - (-phi)^{-m}) / sqrt(5)
  const double corr = (m % 2 == 0 ? -1.0 : 1.0) * std::exp(-2 * md * kLogPhi);
  return md * kLogPhi - kHalfLog5 + std::log1p(corr);
}

double log_count_mountains(int n, int h, int a, int b) {
  if (n == 0 && h == 0 && a == b) return 0.0;
  const bool supported = a == 1 && ((h == 0 && b == 1) || (h == 1 && b == 2) ||
                                    (h == 1 && b == 3) || (h == 2 && b == 3));
  if (!supported)
    throw std::invalid_argument("log_count: no tabulated move class for h=" +
                                std::to_string(h) + ", " + std::to_string(a) +
                                "->" + std::to_string(b));
  if ((n + h) % 2 != 0) return kNegInf;
  // The tabulated classes are Fibonacci numbers.
  if (h == 0) return log_fibonacci(n + 1);
  if (h == 1 && b == 2) return log_fibonacci(n + 1);
  return log_fibonacci(n);  // (1,1,3) odd n and (2,1,3) even n
}

double log_count_pair_penalty(int n, int h, int a, int b) {
  if (n == 0) return (h == 0 && a == b) ? 0.0 : kNegInf;
  if ((n + h) % 2 != 0) return kNegInf;
  if (h == 0) {
    if (a == 1 && b == 1) return log_fibonacci(n + 1);
    if (a == 2 && b == 2) return 0.0;
    return kNegInf;
  }
  if (h == 1 && a == 1 && b == 2) return log_fibonacci(n + 1);
  if (h == 1 && a == 1 && b == 3) return log_fibonacci(n);
  if (h == 2 && a == 1 && b == 3) return log_fibonacci(n);
  if (h == 1 && a == 2 && b == 3) return 0.0;
  return kNegInf;
}

double log_count_full(int n, int h, int a, int b) {
  if (n == 0) return (h == 0 && a == b) ? 0.0 : kNegInf;
  if (a == 3 || (n + h) % 2 != 0) return kNegInf;
  if (h == 0) {
    if (b == 3) return kNegInf;
    if (a != b) return log_tall(n, 0);
    if (a == 1) return log_diff_exp(log_tall(n + 2, 0), log_tall(n, 0));
    std::vector<double> terms;
    if (n % 2 == 0) terms.push_back(0.0);
    for (int m = n - 2; m >= 0; m -= 2) terms.push_back(log_tall(m, 0));
    return log_sum_exp(terms);
  }
  if (b == 1) {
    if (a == 2) return log_tall(n, h);
    return log_diff_exp(log_tall(n + 2, h), log_tall(n, h));
  }
  if (b == 2) {
    if (a == 1)
      return log_sum_exp({log_tall(n, h), log_tall(n + 1, h - 1)});
    std::vector<double> terms;
    for (int m = n - 2; m >= 0; m -= 2) {
      terms.push_back(log_tall(m, h));
      terms.push_back(log_tall(m + 1, h - 1));
    }
    return log_sum_exp(terms);
  }
  const auto log_one_to_three = [](int m, int hh) -> double {
    if (m <= 0) return kNegInf;
    if (hh == 1) return log_tall(m + 1, 0);
    return log_sum_exp({log_tall(m + 1, hh - 1), log_tall(m, hh - 2)});
  };
  if (a == 1) return log_one_to_three(n, h);
  std::vector<double> terms;
  if (h == 1 && n % 2 == 1) terms.push_back(0.0);
  for (int m = n - 2; m >= 0; m -= 2) terms.push_back(log_one_to_three(m, h));
  return log_sum_exp(terms);
}

}  // namespace

double log_dyck_catalan(int n, int h) {
  if (n < 0 || h < 0) throw std::invalid_argument("log_dyck_catalan: negative argument");
  if ((n + h) % 2 != 0 || h > n) return kNegInf;
  const long m = (n + h) / 2;
  return std::log(static_cast<double>(h + 1)) -
         std::log(static_cast<double>(m + 1)) + log_binom(n, m);
}

double log_count(Phase phase, int n, int h, int a, int b) {
  check_class(n, h, a, b);
  switch (phase) {
    case Phase::kFull: return log_count_full(n, h, a, b);
    case Phase::kMountainsOnly: return log_count_mountains(n, h, a, b);
    case Phase::kPairPenalty: return log_count_pair_penalty(n, h, a, b);
  }
  throw std::invalid_argument("log_count: unknown phase");
}

bool composition_check(int p, int r, int a, int c) {
  if (p < 0 || r < 0 || r > p)
    throw std::invalid_argument("composition_check: need 0 <= r <= p");
  const mpz_class total = count_phase1(2 * p, 0, a, c);
  mpz_class sum(0);
  const int hmax = p - r >= 1 ? max_height(p - r) : 0;
  for (int h = 0; h <= hmax; ++h)
    for (int b = 1; b <= 3; ++b)
      sum += count_phase1(p + r, h, a, b) * count_phase1(p - r, h, c, b);
  if (sum != total)
    throw IdentityViolationError(
        "walk factorization fails at p=" + std::to_string(p) +
        ", r=" + std::to_string(r) + ", a=" + std::to_string(a) +
        ", c=" + std::to_string(c) + ": " + sum.get_str() + " vs " +
        total.get_str());
  return true;
}

bool composition_check_mountains(int n, int r) {
  if (n < 0 || r < 0 || r > n)
    throw std::invalid_argument("composition_check_mountains: need 0 <= r <= n");
  const mpz_class total = count_phase2(2 * n, 0, 1, 1);
  mpz_class sum(0);
  if ((n + r) % 2 == 0) {
    sum = count_phase2(n + r, 0, 1, 1) * count_phase2(n - r, 0, 1, 1) +
          count_phase2(n + r, 2, 1, 3) * count_phase2(n - r, 2, 1, 3);
  } else {
    sum = count_phase2(n + r, 1, 1, 2) * count_phase2(n - r, 1, 1, 2) +
          count_phase2(n + r, 1, 1, 3) * count_phase2(n - r, 1, 1, 3);
  }
  if (sum != total)
    throw IdentityViolationError(
        "move-class factorization fails at n=" + std::to_string(n) +
        ", r=" + std::to_string(r) + ": " + sum.get_str() + " vs " +
        total.get_str());
  return true;
}

}  // namespace fredkin
