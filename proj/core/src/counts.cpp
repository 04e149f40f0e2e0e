#include "fredkin/counts.hpp"

#include <stdexcept>
#include <string>

#include "fredkin/errors.hpp"

namespace fredkin {

const mpz_class CountTable::kZero{0};

namespace {

int table_height(int n) { return n >= 1 ? max_height(n) : 0; }

bool mountains_supported(int h, int a, int b) {
  if (a != 1) return false;
  return (h == 0 && b == 1) || (h == 1 && b == 2) || (h == 1 && b == 3) ||
         (h == 2 && b == 3);
}

// Letter codes: 0..2 ups (x12, x13, x23), 3..5 downs (x21, x31, x32).
constexpr int kOut[6] = {2, 3, 3, 1, 1, 2};  // .b of each code
constexpr int kIn[6] = {1, 1, 2, 2, 3, 3};   // .a of each code
constexpr int kDelta[6] = {1, 1, 1, -1, -1, -1};

bool pair_forbidden(int c0, int c1) {
  return (c0 == 1 && c1 == 5) || (c0 == 2 && c1 == 4);
}

}  // namespace

CountTable::CountTable(Phase phase, int capacity)
    : phase_(phase), capacity_(capacity) {
  if (phase == Phase::kPairPenalty) layer_.assign(3, {});
  extend(0);
}

mpz_class& CountTable::at(int n, int h, int a, int b) {
  return entries_[static_cast<std::size_t>(n)]
                 [static_cast<std::size_t>(h * 9 + (a - 1) * 3 + (b - 1))];
}

const mpz_class& CountTable::count(int n, int h, int a, int b) {
  if (n < 0) throw std::invalid_argument("count: negative length");
  if (h < 0) throw std::invalid_argument("count: negative height");
  if (a < 1 || a > 3 || b < 1 || b > 3)
    throw std::invalid_argument("count: arrow indices must be in 1..3");
  if (phase_ == Phase::kMountainsOnly && !(n == 0 && h == 0 && a == b) &&
      !mountains_supported(h, a, b))
    throw std::invalid_argument(
        "count: no tabulated move class for h=" + std::to_string(h) + ", " +
        std::to_string(a) + "->" + std::to_string(b));
  if (h > table_height(n)) return kZero;
  if (n > built_) extend(n);
  return at(n, h, a, b);
}

void CountTable::extend(int n) {
  if (n > capacity_)
    throw CapacityError("count table capacity " + std::to_string(capacity_) +
                        " exceeded (requested n=" + std::to_string(n) +
                        "); use the pointwise or log-domain routes");
  entries_.resize(static_cast<std::size_t>(n) + 1);
  for (int m = built_ + 1; m <= n; ++m) {
    entries_[static_cast<std::size_t>(m)].assign(
        static_cast<std::size_t>((table_height(m) + 1) * 9), mpz_class(0));
    if (m == 0) {
      for (int a = 1; a <= 3; ++a) at(0, 0, a, a) = 1;
    } else {
      switch (phase_) {
        case Phase::kFull: extend_full(m); break;
        case Phase::kPairPenalty: extend_pair_penalty(m); break;
        case Phase::kMountainsOnly: extend_mountains(m); break;
      }
    }
    built_ = m;
  }
}

void CountTable::extend_full(int n) {
  // get(): zero outside the stored (n, h) range.
  const auto get = [&](int m, int h, int a, int b) -> const mpz_class& {
    if (m < 0 || h < 0 || h > table_height(m)) return kZero;
    return at(m, h, a, b);
  };

  // Height 0.
  {
    mpz_class conv(0);
    for (int i = 0; i <= n - 2; ++i)
      conv += get(i, 0, 2, 2) * get(n - 2 - i, 0, 1, 1);
    at(n, 0, 1, 1) = conv + get(n - 2, 0, 1, 1) + get(n - 2, 0, 2, 1);
    at(n, 0, 2, 2) = get(n - 2, 0, 2, 2) + get(n - 2, 0, 2, 1);
    at(n, 0, 2, 1) = get(n - 2, 0, 2, 1) + get(n - 2, 0, 1, 1);
    at(n, 0, 1, 2) = at(n, 0, 2, 1);
    // a = 3 or b = 3 stays zero at height 0.
  }

  // Heights 1..max_height(n).
  for (int h = 1; h <= table_height(n); ++h) {
    for (int b = 1; b <= 3; ++b) {
      const bool corner = (b == 3 && h == 1 && n == 1);
      mpz_class conv(0);
      for (int i = 0; i <= n - 2; ++i)
        conv += get(i, 0, 2, 2) * get(n - 2 - i, h, 1, b);
      at(n, h, 1, b) = get(n - 1, h - 1, 2, b) + (corner ? 1 : 0) + conv +
                       get(n - 2, h, 1, b) + get(n - 2, h, 2, b);
      at(n, h, 2, b) =
          (corner ? 1 : 0) + get(n - 2, h, 1, b) + get(n - 2, h, 2, b);
    }
  }
}

void CountTable::extend_pair_penalty(int n) {
  // One DP layer per start index: layer[h * 6 + last_code] counts admissible
  // prefixes of length n (connected, floor-respecting, no forbidden factor).
  const int hmax = table_height(n);
  for (int a = 1; a <= 3; ++a) {
    std::vector<mpz_class>& prev = layer_[static_cast<std::size_t>(a - 1)];
    std::vector<mpz_class> next(static_cast<std::size_t>((hmax + 1) * 6));
    if (n == 1) {
      for (int c = 0; c < 6; ++c)
        if (kIn[c] == a && kDelta[c] > 0) next[static_cast<std::size_t>(6 + c)] = 1;
    } else {
      const int prev_hmax = table_height(n - 1);
      for (int h = 0; h <= prev_hmax; ++h) {
        for (int c = 0; c < 6; ++c) {
          const mpz_class& v = prev[static_cast<std::size_t>(h * 6 + c)];
          if (v == 0) continue;
          for (int c2 = 0; c2 < 6; ++c2) {
            if (kIn[c2] != kOut[c]) continue;
            if (pair_forbidden(c, c2)) continue;
            const int h2 = h + kDelta[c2];
            if (h2 < 0 || h2 > hmax) continue;
            next[static_cast<std::size_t>(h2 * 6 + c2)] += v;
          }
        }
      }
    }
    for (int h = 0; h <= hmax; ++h)
      for (int c = 0; c < 6; ++c) {
        const mpz_class& v = next[static_cast<std::size_t>(h * 6 + c)];
        if (v != 0) at(n, h, a, kOut[c]) += v;
      }
    prev = std::move(next);
  }
}

void CountTable::extend_mountains(int n) {
  const auto get = [&](int m, int h, int a, int b) -> const mpz_class& {
    if (m < 0 || h < 0 || h > table_height(m)) return kZero;
    if (m == 0) return (h == 0 && a == b) ? at(0, 0, a, b) : kZero;
    return at(m, h, a, b);
  };
  if (n % 2 == 0) {
    // M_n = 3 M_{n-2} - M_{n-4}; class of the n/2-fold mountain seed.
    if (n == 2)
      at(n, 0, 1, 1) = 2;
    else
      at(n, 0, 1, 1) = 3 * get(n - 2, 0, 1, 1) - get(n - 4, 0, 1, 1);
    // Climb by two: inherits the one-step climbing table.
    at(n, 2, 1, 3) = get(n - 1, 1, 1, 2);
  } else {
    // Prefix sums of M: class of the seed ending in a dangling up letter.
    at(n, 1, 1, 2) = get(n - 2, 1, 1, 2) + get(n - 1, 0, 1, 1);
    at(n, 1, 1, 3) = get(n - 1, 0, 1, 1);
  }
}

CountTable& count_table(Phase phase) {
  static CountTable full(Phase::kFull);
  static CountTable mountains(Phase::kMountainsOnly);
  static CountTable pair(Phase::kPairPenalty);
  switch (phase) {
    case Phase::kFull: return full;
    case Phase::kMountainsOnly: return mountains;
    case Phase::kPairPenalty: return pair;
  }
  throw std::invalid_argument("count_table: unknown phase");
}

const mpz_class& count_phase1(int n, int h, int a, int b) {
  return count_table(Phase::kFull).count(n, h, a, b);
}
const mpz_class& count_phase2(int n, int h, int a, int b) {
  return count_table(Phase::kMountainsOnly).count(n, h, a, b);
}
const mpz_class& count_phase3(int n, int h, int a, int b) {
  return count_table(Phase::kPairPenalty).count(n, h, a, b);
}

const mpz_class& count_descending(int n, int h, int b, int c) {
  return count_phase1(n, h, c, b);
}

mpz_class dyck_catalan(int n, int h) {
  if (n < 0 || h < 0) throw std::invalid_argument("dyck_catalan: negative argument");
  if ((n + h) % 2 != 0 || h > n) return 0;
  const unsigned long m = static_cast<unsigned long>((n + h) / 2);
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), m);
  mpz_class num = (h + 1) * binom;
  mpz_class q, r;
  mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), m + 1);
  if (r != 0)
    throw IdentityViolationError("dyck_catalan: (h+1)*binom(n,(n+h)/2) not "
                                 "divisible by (n+h)/2+1 at n=" +
                                 std::to_string(n) + ", h=" + std::to_string(h));
  return q;
}

}  // namespace fredkin
