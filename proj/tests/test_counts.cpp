#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "fredkin/asymptotics.hpp"
#include "fredkin/closure.hpp"
#include "fredkin/counts.hpp"
#include "fredkin/errors.hpp"
#include "fredkin/pointwise.hpp"
#include "fredkin/series.hpp"
#include "fredkin/walks.hpp"

using namespace fredkin;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Path P(const std::string& text) { return Path::parse(text); }

mpz_class fib(unsigned long m) {
  mpz_class r;
  mpz_fib_ui(r.get_mpz_t(), m);
  return r;
}

// Natural log of an exact integer without overflow.
double log_mpz(const mpz_class& v) {
  if (v == 0) return -kInf;
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

// Brute-force profile count: +-1 paths from 0 to h staying >= 0.
long brute_profiles(int n, int h) {
  std::vector<long> layer(n + 2, 0);
  layer[0] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<long> next(n + 2, 0);
    for (int y = 0; y <= step; ++y) {
      if (layer[y] == 0) continue;
      next[y + 1] += layer[y];
      if (y > 0) next[y - 1] += layer[y];
    }
    layer = next;
  }
  return (h <= n + 1) ? layer[h] : 0;
}

bool avoids_penalized_factors(const Path& w) {
  for (std::size_t i = 0; i + 1 < w.steps.size(); ++i) {
    const int c0 = w.steps[i].code();
    const int c1 = w.steps[i + 1].code();
    if ((c0 == 1 && c1 == 5) || (c0 == 2 && c1 == 4)) return false;
  }
  return true;
}

long filtered_enum_count(int n, int h, int a, int b) {
  long total = 0;
  for (const Path& w : enumerate_walks(n, {a, b, h}))
    if (avoids_penalized_factors(w)) ++total;
  return total;
}

// Relative deviation of the asymptotic prediction from the exact count,
// evaluated in the log domain.
double rel_error(Phase phase, int n, int h, int a, int b) {
  const double exact = log_count(phase, n, h, a, b);
  const double pred = asymptotic_log_count(phase, n, h, a, b);
  REQUIRE(std::isfinite(exact));
  REQUIRE(std::isfinite(pred));
  return std::fabs(std::expm1(pred - exact));
}

}  // namespace

TEST_CASE("profile counts: closed form, parity, brute force") {
  CHECK(dyck_catalan(0, 0) == 1);
  CHECK(dyck_catalan(2, 0) == 1);
  CHECK(dyck_catalan(4, 0) == 2);
  CHECK(dyck_catalan(6, 0) == 5);
  CHECK(dyck_catalan(8, 0) == 14);
  CHECK(dyck_catalan(10, 0) == 42);
  CHECK(dyck_catalan(1, 1) == 1);
  CHECK(dyck_catalan(3, 1) == 2);
  CHECK(dyck_catalan(5, 1) == 5);
  CHECK(dyck_catalan(2, 2) == 1);
  CHECK(dyck_catalan(4, 2) == 3);
  CHECK(dyck_catalan(3, 0) == 0);   // parity
  CHECK(dyck_catalan(4, 1) == 0);   // parity
  CHECK(dyck_catalan(2, 4) == 0);   // cannot outclimb the length
  CHECK(dyck_catalan(5, 5) == 1);
  for (int n = 0; n <= 14; ++n)
    for (int h = 0; h <= n + 1; ++h)
      CHECK(dyck_catalan(n, h) == brute_profiles(n, h));
}

TEST_CASE("full tables match exhaustive enumeration") {
  for (int n = 1; n <= 9; ++n)
    for (int h = 0; h <= max_height(n); ++h)
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
          CAPTURE(n);
          CAPTURE(h);
          CAPTURE(a);
          CAPTURE(b);
          CHECK(count_phase1(n, h, a, b) == enumerate_count(n, {a, b, h}));
        }
}

TEST_CASE("full tables: pinned values") {
  // Length 0: only the empty walk, which starts and ends with the same index.
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      CHECK(count_phase1(0, 0, a, b) == (a == b ? 1 : 0));

  CHECK(count_phase1(2, 0, 1, 1) == 2);
  CHECK(count_phase1(4, 0, 1, 1) == 6);
  CHECK(count_phase1(6, 0, 1, 1) == 19);
  CHECK(count_phase1(2, 0, 2, 2) == 1);
  CHECK(count_phase1(4, 0, 2, 2) == 2);
  CHECK(count_phase1(6, 0, 2, 2) == 5);
  CHECK(count_phase1(2, 0, 2, 1) == 1);
  CHECK(count_phase1(4, 0, 2, 1) == 3);
  CHECK(count_phase1(6, 0, 2, 1) == 9);
  CHECK(count_phase1(6, 2, 1, 2) == 6);
  CHECK(count_phase1(1, 1, 1, 2) == 1);
  CHECK(count_phase1(1, 1, 1, 3) == 1);
  CHECK(count_phase1(1, 1, 2, 3) == 1);
  CHECK(count_phase1(1, 1, 2, 2) == 0);
  CHECK(count_phase1(3, 1, 2, 3) == 2);
  CHECK(count_phase1(2, 2, 1, 3) == 1);
  CHECK(count_phase1(4, 2, 1, 3) == 4);

  // No walk of positive length starts with first index 3 (both letters with
  // first index 3 step down, which would dip below the floor).
  for (int n = 1; n <= 10; ++n)
    for (int h = 0; h <= max_height(n); ++h)
      for (int b = 1; b <= 3; ++b) CHECK(count_phase1(n, h, 3, b) == 0);
}

TEST_CASE("full tables: symmetry and parity") {
  for (int n = 0; n <= 40; ++n) {
    CHECK(count_phase1(n, 0, 1, 2) == count_phase1(n, 0, 2, 1));
    for (int h = 0; h <= std::min(8, max_height(std::max(n, 1))); ++h)
      if ((n + h) % 2 != 0)
        for (int a = 1; a <= 3; ++a)
          for (int b = 1; b <= 3; ++b) CHECK(count_phase1(n, h, a, b) == 0);
  }
}

TEST_CASE("descending tables read the ascending ones backwards") {
  // One step down from height 1 with start index 2 and floor index 1: x21.
  CHECK(count_descending(1, 1, 2, 1) == 1);
  // Two steps down from height 2 starting with index 3: x32 x21 only.
  CHECK(count_descending(2, 2, 3, 1) == 1);
  for (int n = 0; n <= 12; ++n)
    for (int h = 0; h <= max_height(std::max(n, 1)); ++h)
      for (int b = 1; b <= 3; ++b)
        for (int c = 1; c <= 3; ++c)
          CHECK(count_descending(n, h, b, c) == count_phase1(n, h, c, b));
}

TEST_CASE("family generating functions reproduce the tables") {
  constexpr int kOrder = 40;
  SUBCASE("full regime, heights through 8") {
    for (int h = 0; h <= 8; ++h)
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
          const Series s = series_genfunc(Phase::kFull, h, a, b, kOrder);
          REQUIRE(s.size() == kOrder + 1);
          for (int n = 0; n <= kOrder; ++n) {
            CAPTURE(h);
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(n);
            CHECK(s[n] == count_phase1(n, h, a, b));
          }
        }
  }
  SUBCASE("move-class tables") {
    const int combos[4][3] = {{0, 1, 1}, {1, 1, 2}, {1, 1, 3}, {2, 1, 3}};
    for (const auto& c : combos) {
      const Series s = series_genfunc(Phase::kMountainsOnly, c[0], c[1], c[2], kOrder);
      for (int n = 0; n <= kOrder; ++n)
        CHECK(s[n] == count_phase2(n, c[0], c[1], c[2]));
    }
    CHECK_THROWS_AS(series_genfunc(Phase::kMountainsOnly, 0, 2, 2, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(count_phase2(4, 0, 2, 2), std::invalid_argument);
  }
  SUBCASE("pair-penalty tables") {
    for (int h = 0; h <= 4; ++h)
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
          const Series s = series_genfunc(Phase::kPairPenalty, h, a, b, kOrder);
          for (int n = 0; n <= kOrder; ++n) {
            CAPTURE(h);
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(n);
            CHECK(s[n] == count_phase3(n, h, a, b));
          }
        }
  }
}

TEST_CASE("profile-power identity holds through length 40, height 8") {
  CHECK(verify_identity_catalan_power(40, 8));
}

TEST_CASE("binomial point formulas match the tables") {
  CHECK(tall_walk_count(2, 0) == 1);
  CHECK(tall_walk_count(4, 0) == 3);
  CHECK(tall_walk_count(6, 0) == 9);
  CHECK(tall_walk_count(3, 1) == 0);
  CHECK(tall_walk_count(5, 1) == 1);
  CHECK(tall_walk_count(7, 1) == 6);
  for (int p = 1; p <= 50; ++p)
    for (int h = 0; h <= 8; ++h) CHECK(tall_walk_count(p, h) == count_phase1(p, h, 2, 1));
  for (int n = 1; n <= 36; ++n)
    for (int h = 0; h <= 8; ++h)
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
          CAPTURE(n);
          CAPTURE(h);
          CAPTURE(a);
          CAPTURE(b);
          CHECK(count_phase1_pointwise(n, h, a, b) == count_phase1(n, h, a, b));
        }
}

TEST_CASE("log-domain counts agree with the exact integers") {
  const auto check_log = [](Phase phase, int n, int h, int a, int b,
                            const mpz_class& exact) {
    const double lhs = log_count(phase, n, h, a, b);
    if (exact == 0) {
      CHECK(lhs == -kInf);
      return;
    }
    const double rhs = log_mpz(exact);
    CAPTURE(n);
    CAPTURE(h);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs)));
  };
  for (int n : {37, 80, 121, 200})
    for (int h = 0; h <= 6; ++h)
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 3; ++b)
          check_log(Phase::kFull, n, h, a, b, count_phase1(n, h, a, b));
  const int combos[4][3] = {{0, 1, 1}, {1, 1, 2}, {1, 1, 3}, {2, 1, 3}};
  for (int n : {100, 201, 400})
    for (const auto& c : combos) {
      if ((n + c[0]) % 2 != 0) continue;
      check_log(Phase::kMountainsOnly, n, c[0], c[1], c[2],
                count_phase2(n, c[0], c[1], c[2]));
      check_log(Phase::kPairPenalty, n, c[0], c[1], c[2],
                count_phase3(n, c[0], c[1], c[2]));
    }
  CHECK(log_count(Phase::kPairPenalty, 200, 0, 2, 2) == 0.0);
  CHECK(log_count(Phase::kPairPenalty, 201, 1, 2, 3) == 0.0);
  CHECK(log_count(Phase::kPairPenalty, 201, 0, 2, 2) == -kInf);
  for (int n : {64, 121, 300})
    for (int h = 0; h <= 8; ++h) {
      const double lhs = log_dyck_catalan(n, h);
      const mpz_class exact = dyck_catalan(n, h);
      if (exact == 0)
        CHECK(lhs == -kInf);
      else
        CHECK(std::fabs(lhs - log_mpz(exact)) <= 1e-9 * std::fabs(log_mpz(exact)));
    }
}

TEST_CASE("cut-and-glue factorization of the walk families") {
  // Independent re-derivation at one point, not trusting the checker.
  {
    const int p = 6, r = 2, a = 1, c = 2;
    mpz_class total = 0;
    for (int h = 0; h <= max_height(p - r); ++h)
      for (int b = 1; b <= 3; ++b)
        total += count_phase1(p + r, h, a, b) * count_phase1(p - r, h, c, b);
    CHECK(total == count_phase1(2 * p, 0, a, c));
  }
  for (int p = 1; p <= 14; ++p)
    for (int r = 0; r < p; ++r)
      for (int a = 1; a <= 2; ++a)
        for (int c = 1; c <= 2; ++c) CHECK(composition_check(p, r, a, c));
  for (int n = 1; n <= 14; ++n)
    for (int r = 0; r < n; ++r) CHECK(composition_check_mountains(n, r));
}

TEST_CASE("move-class tables: Fibonacci structure and closure sizes") {
  const long first[5] = {1, 2, 5, 13, 34};
  for (int k = 0; k <= 4; ++k) CHECK(count_phase2(2 * k, 0, 1, 1) == first[k]);
  for (int n = 0; n <= 60; n += 2) CHECK(count_phase2(n, 0, 1, 1) == fib(n + 1));
  for (int n = 1; n <= 61; n += 2) {
    CHECK(count_phase2(n, 1, 1, 2) == fib(n + 1));
    CHECK(count_phase2(n, 1, 1, 3) == fib(n));
  }
  for (int n = 2; n <= 60; n += 2) CHECK(count_phase2(n, 2, 1, 3) == fib(n));

  SUBCASE("class sizes equal closures of the canonical seeds") {
    const MoveSet moves = MoveSet::mountains_only();
    for (int k = 1; k <= 4; ++k) {
      std::string seed;
      for (int i = 0; i < k; ++i) seed += "1,2 2,1 ";
      CHECK(equivalence_closure(P(seed), moves).size() ==
            count_phase2(2 * k, 0, 1, 1).get_ui());
      CHECK(equivalence_closure(P(seed + "1,2"), moves).size() ==
            count_phase2(2 * k + 1, 1, 1, 2).get_ui());
      CHECK(equivalence_closure(P(seed + "1,3"), moves).size() ==
            count_phase2(2 * k + 1, 1, 1, 3).get_ui());
      std::string climb;
      for (int i = 0; i + 1 < k; ++i) climb += "1,2 2,1 ";
      climb += "1,2 2,3";
      CHECK(equivalence_closure(P(climb), moves).size() ==
            count_phase2(2 * k, 2, 1, 3).get_ui());
    }
  }
}

TEST_CASE("pair-penalty tables: filtered enumeration and closed forms") {
  for (int n = 1; n <= 8; ++n)
    for (int h = 0; h <= max_height(n); ++h)
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
          CAPTURE(n);
          CAPTURE(h);
          CAPTURE(a);
          CAPTURE(b);
          CHECK(count_phase3(n, h, a, b) == filtered_enum_count(n, h, a, b));
        }
  for (int n = 0; n <= 60; n += 2) {
    CHECK(count_phase3(n, 0, 1, 1) == fib(n + 1));
    CHECK(count_phase3(n, 0, 2, 2) == 1);
    if (n >= 2) CHECK(count_phase3(n, 2, 1, 3) == fib(n));
  }
  for (int n = 1; n <= 61; n += 2) {
    CHECK(count_phase3(n, 1, 1, 2) == fib(n + 1));
    CHECK(count_phase3(n, 1, 1, 3) == fib(n));
    CHECK(count_phase3(n, 1, 2, 3) == 1);
  }
  // The pair penalty caps the reachable height at 2; everything else is empty.
  for (int n = 1; n <= 20; ++n)
    for (int h = 3; h <= max_height(n); ++h)
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) CHECK(count_phase3(n, h, a, b) == 0);
  for (int n = 2; n <= 20; n += 2) {
    CHECK(count_phase3(n, 0, 1, 2) == 0);
    CHECK(count_phase3(n, 0, 2, 1) == 0);
    CHECK(count_phase3(n, 2, 2, 3) == 0);
  }
}

TEST_CASE("table capacity and shared instances") {
  CountTable small(Phase::kFull, 16);
  CHECK(small.capacity() == 16);
  CHECK(small.count(16, 0, 1, 1) > 0);
  CHECK_THROWS_AS(small.count(17, 1, 1, 2), CapacityError);
  CHECK(&count_table(Phase::kFull).count(4, 0, 1, 1) ==
        &count_table(Phase::kFull).count(4, 0, 1, 1));
}

TEST_CASE("asymptotic predictions converge to the exact counts") {
  SUBCASE("regime kinds") {
    CHECK(asymptotic_kind(Phase::kFull, 0, 1, 1) ==
          AsymptoticKind::kSquareRootSingularity);
    CHECK(asymptotic_kind(Phase::kFull, 3, 2, 3) ==
          AsymptoticKind::kSquareRootSingularity);
    CHECK(asymptotic_kind(Phase::kMountainsOnly, 0, 1, 1) ==
          AsymptoticKind::kGoldenRatio);
    CHECK(asymptotic_kind(Phase::kPairPenalty, 0, 1, 1) ==
          AsymptoticKind::kGoldenRatio);
    CHECK(asymptotic_kind(Phase::kPairPenalty, 0, 2, 2) ==
          AsymptoticKind::kConstant);
    CHECK(asymptotic_kind(Phase::kPairPenalty, 1, 2, 3) ==
          AsymptoticKind::kConstant);
  }
  SUBCASE("square-root-singularity families, height zero") {
    const int pairs[4][2] = {{1, 1}, {2, 2}, {2, 1}, {1, 2}};
    for (const auto& ab : pairs) {
      double prev = kInf;
      for (int n : {100, 400, 1000}) {
        const double err = rel_error(Phase::kFull, n, 0, ab[0], ab[1]);
        CHECK(err < prev);
        prev = err;
      }
      CHECK(prev < 0.05);
    }
  }
  SUBCASE("square-root-singularity families, positive height") {
    const int combos[9][3] = {{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2},
                              {2, 2, 2}, {3, 2, 2}, {1, 1, 3}, {2, 1, 3},
                              {3, 2, 3}};
    for (const auto& c : combos) {
      const int h = c[0], a = c[1], b = c[2];
      const auto pick = [&](int target) { return (target + h) % 2 == 0 ? target : target + 1; };
      const double coarse = rel_error(Phase::kFull, pick(500), h, a, b);
      const double fine = rel_error(Phase::kFull, pick(2000), h, a, b);
      CAPTURE(h);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(fine < coarse);
      CHECK(fine < 0.05);
    }
    // The climbs ending at index 3 keep both Gaussian terms additive; the
    // h = 2 family would sit 40% below the exact count otherwise.
    const double ratio = std::exp(asymptotic_log_count(Phase::kFull, 4000, 2, 1, 3) -
                                  log_count(Phase::kFull, 4000, 2, 1, 3));
    CHECK(ratio > 0.97);
    CHECK(ratio < 1.03);
  }
  SUBCASE("profile counts") {
    for (int h : {0, 1, 2, 6}) {
      const int n = (2000 + h) % 2 == 0 ? 2000 : 2001;
      const double err =
          std::fabs(std::expm1(asymptotic_log_dyck(n, h) - log_dyck_catalan(n, h)));
      CHECK(err < 0.05);
    }
  }
  SUBCASE("golden-ratio families") {
    CHECK(rel_error(Phase::kMountainsOnly, 500, 0, 1, 1) < 1e-12);
    CHECK(rel_error(Phase::kMountainsOnly, 501, 1, 1, 3) < 1e-12);
    CHECK(rel_error(Phase::kPairPenalty, 500, 2, 1, 3) < 1e-12);
    // Growth-rate base, four significant digits at half-length 500.
    const double base = std::exp(log_count(Phase::kMountainsOnly, 1002, 0, 1, 1) -
                                 log_count(Phase::kMountainsOnly, 1000, 0, 1, 1));
    const double phi2 = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(std::fabs(base / phi2 - 1.0) < 5e-5);
    CHECK(asymptotic_log_count(Phase::kPairPenalty, 200, 0, 2, 2) == 0.0);
    CHECK(asymptotic_log_count(Phase::kPairPenalty, 201, 1, 2, 3) == 0.0);
    CHECK(asymptotic_log_count(Phase::kPairPenalty, 201, 0, 2, 2) == -kInf);
    CHECK_THROWS_AS(asymptotic_log_count(Phase::kMountainsOnly, 10, 0, 2, 2),
                    std::invalid_argument);
  }
  SUBCASE("parity: prediction vanishes exactly where the count does") {
    for (int n : {99, 100})
      for (int h = 0; h <= 3; ++h)
        if ((n + h) % 2 != 0) {
          CHECK(asymptotic_log_count(Phase::kFull, n, h, 1, 1) == -kInf);
          CHECK(log_count(Phase::kFull, n, h, 1, 1) == -kInf);
        }
  }
}
