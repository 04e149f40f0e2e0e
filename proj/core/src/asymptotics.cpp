#include "fredkin/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fredkin {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLog2 = std::log(2.0);
const double kLogPhi = std::log((1 + std::sqrt(5.0)) / 2);
const double kHalfLog5 = 0.5 * std::log(5.0);

// Family prefactors c_{a->b} in c * sqrt(2/pi) * 2^n / n^{3/2}.
double full_prefactor(int a, int b) {
  if (a == 1 && b == 1) return 18;
  if (a == 2 && b == 2) return 2;
  if ((a == 1 && b == 2) || (a == 2 && b == 1)) return 6;
  if (a == 1 && b == 3) return 6;
  if (a == 2 && b == 3) return 2;
  return 0;
}

double full_log(int n, int h, int a, int b) {
  if ((n + h) % 2 != 0) return kNegInf;
  if (a == 3 || (h == 0 && b == 3)) return kNegInf;  // empty families
  const double c = full_prefactor(a, b);
  const double nd = n;
  // Height-dependent Gaussian bracket.  A unit of height consumes three
  // letters of the walk budget, hence the 9 = 3^2 in the decay rate.
  const auto gauss = [&](int k) { return k * std::exp(-9.0 * k * k / (2 * nd)); };
  double bracket = 1.0;  // the h = 0 families carry no Gaussian factor
  if (h >= 1) {
    if (b == 1) {
      bracket = gauss(h + 1);
    } else if (b == 2) {
      bracket = 2 * gauss(h) + gauss(h + 1);
    } else {
      // Families ending at index 3 decompose exactly as
      //   N^{(h)}_{n,1->3} = N^{(h-1)}_{n+1,2->1} + N^{(h-2)}_{n,2->1},
      // so both Gaussian terms enter with positive weight.
      bracket = 2 * gauss(h) + gauss(h - 1);
    }
  }
  return std::log(c * bracket) + 0.5 * (kLog2 - std::log(M_PI)) + nd * kLog2 -
         1.5 * std::log(nd);
}

double golden_log(int n, int h, int a, int b, bool pair_penalty) {
  const bool diag22 = pair_penalty && h == 0 && a == 2 && b == 2;
  const bool diag23 = pair_penalty && h == 1 && a == 2 && b == 3;
  if ((n + h) % 2 != 0) return kNegInf;
  if (diag22 || diag23) return 0.0;  // exactly one walk
  // Tabulated classes are Fibonacci numbers F_m with
  // m = n + 1 for (0,1->1) and (1,1->2), m = n for (1,1->3) and (2,1->3).
  long m;
  if ((h == 0 && a == 1 && b == 1) || (h == 1 && a == 1 && b == 2))
    m = n + 1;
  else if ((h == 1 && a == 1 && b == 3) || (h == 2 && a == 1 && b == 3))
    m = n;
  else if (pair_penalty)
    return kNegInf;
  else
    throw std::invalid_argument(
        "asymptotic_log_count: no tabulated move class for h=" +
        std::to_string(h) + ", " + std::to_string(a) + "->" + std::to_string(b));
  return m * kLogPhi - kHalfLog5;
}

}  // namespace

AsymptoticKind asymptotic_kind(Phase phase, int h, int a, int b) {
  if (phase == Phase::kFull) return AsymptoticKind::kSquareRootSingularity;
  if (phase == Phase::kPairPenalty &&
      ((h == 0 && a == 2 && b == 2) || (h == 1 && a == 2 && b == 3)))
    return AsymptoticKind::kConstant;
  return AsymptoticKind::kGoldenRatio;
}

double asymptotic_log_count(Phase phase, int n, int h, int a, int b) {
  if (n < 1 || h < 0 || a < 1 || a > 3 || b < 1 || b > 3)
    throw std::invalid_argument("asymptotic_log_count: bad class");
  switch (phase) {
    case Phase::kFull: return full_log(n, h, a, b);
    case Phase::kMountainsOnly: return golden_log(n, h, a, b, false);
    case Phase::kPairPenalty: return golden_log(n, h, a, b, true);
  }
  throw std::invalid_argument("asymptotic_log_count: unknown phase");
}

double asymptotic_count(Phase phase, int n, int h, int a, int b) {
  return std::exp(asymptotic_log_count(phase, n, h, a, b));
}

double asymptotic_log_dyck(int n, int h) {
  if (n < 1 || h < 0) throw std::invalid_argument("asymptotic_log_dyck: bad class");
  if ((n + h) % 2 != 0) return kNegInf;
  const double nd = n;
  return std::log(h + 1.0) - (h + 1.0) * (h + 1.0) / (2 * nd) + 1.5 * kLog2 -
         0.5 * std::log(M_PI) + nd * kLog2 - 1.5 * std::log(nd);
}

}  // namespace fredkin
