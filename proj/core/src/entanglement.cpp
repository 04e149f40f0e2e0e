#include "fredkin/entanglement.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/SVD>

#include "fredkin/errors.hpp"
#include "fredkin/pointwise.hpp"
#include "fredkin/walks.hpp"

namespace fredkin {

namespace {

const mpz_class& ascending_count(Phase phase, int n, int h, int a, int b) {
  switch (phase) {
    case Phase::kFull:
      return count_phase1(n, h, a, b);
    case Phase::kMountainsOnly:
      return count_phase2(n, h, a, b);
    case Phase::kPairPenalty:
      return count_phase3(n, h, a, b);
  }
  throw std::invalid_argument("ascending_count: unknown phase");
}

// Walks of length n running from height h (first in-index j) down to height 0
// (last out-index d): reading the word backwards with arrow roles exchanged
// turns them into ascending d -> j walks of the same regime, so every phase
// reuses its ascending table.
const mpz_class& descending_count(Phase phase, int n, int h, int j, int d) {
  if (phase == Phase::kFull) return count_descending(n, h, j, d);
  return ascending_count(phase, n, h, d, j);
}

void check_class(Phase phase, int c, int d) {
  const bool ok = [&] {
    switch (phase) {
      case Phase::kFull:
        return (c == 1 || c == 2) && (d == 1 || d == 2);
      case Phase::kMountainsOnly:
        return c == 1 && d == 1;
      case Phase::kPairPenalty:
        return (c == 1 && d == 1) || (c == 2 && d == 2);
    }
    return false;
  }();
  if (!ok) {
    std::ostringstream msg;
    msg << "schmidt_distribution: class (" << c << ", " << d
        << ") is not a ground class of phase " << static_cast<int>(phase);
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

SchmidtDistribution schmidt_distribution(int two_n, int r, Phase phase, int c,
                                         int d) {
  if (two_n < 2 || two_n % 2 != 0) {
    throw std::invalid_argument("schmidt_distribution: length must be even and >= 2");
  }
  const int n = two_n / 2;
  if (r < 0 || r >= n) {
    throw std::invalid_argument("schmidt_distribution: need 0 <= r < length/2");
  }
  check_class(phase, c, d);

  const int left = n + r;
  const int right = n - r;

  // The climbing tables of the recoloring-off regime only cover the cut data
  // its ground class can reach; the other regimes are scanned over every
  // height both blocks admit (absent combinations contribute zero).
  std::vector<std::pair<int, int>> cut_data;
  if (phase == Phase::kMountainsOnly) {
    cut_data = {{0, 1}, {1, 2}, {1, 3}, {2, 3}};
  } else {
    const int hmax = std::min(max_height(left), max_height(right));
    for (int h = 0; h <= hmax; ++h) {
      for (int a = 1; a <= 3; ++a) cut_data.emplace_back(h, a);
    }
  }

  const mpz_class& denom = ascending_count(phase, two_n, 0, c, d);
  if (denom == 0) {
    std::ostringstream msg;
    msg << "schmidt_distribution: class (" << c << ", " << d
        << ") of phase " << static_cast<int>(phase) << " is empty at length "
        << two_n;
    throw IdentityViolationError(msg.str());
  }

  std::vector<std::pair<std::pair<int, int>, mpz_class>> numerators;
  mpz_class total = 0;
  for (const auto& [h, a] : cut_data) {
    mpz_class num = ascending_count(phase, left, h, c, a) *
                    descending_count(phase, right, h, a, d);
    if (num == 0) continue;
    total += num;
    numerators.emplace_back(std::make_pair(h, a), std::move(num));
  }

  if (total != denom) {
    std::ostringstream msg;
    msg << "schmidt_distribution: cut numerators sum to " << total
        << " but the class holds " << denom << " walks (phase "
        << static_cast<int>(phase) << ", length " << two_n << ", r = " << r
        << ", class " << c << " -> " << d << ")";
    throw IdentityViolationError(msg.str());
  }

  SchmidtDistribution dist;
  dist.two_n = two_n;
  dist.r = r;
  dist.phase = phase;
  dist.c = c;
  dist.d = d;
  dist.entries.reserve(numerators.size());
  for (const auto& [ha, num] : numerators) {
    mpq_class p(num, denom);
    p.canonicalize();
    dist.entries.push_back({ha.first, ha.second, p.get_d()});
  }
  return dist;
}

EntropyReport entropy_from_distribution(const SchmidtDistribution& dist) {
  double s = 0.0;
  for (const auto& entry : dist.entries) {
    if (entry.p > 0.0) s -= entry.p * std::log(entry.p);
  }
  EntropyReport report;
  report.S = s;
  report.method = "schmidt_counts";
  report.length = dist.two_n;
  report.cut = dist.two_n / 2 + dist.r;
  report.phase = dist.phase;
  report.c = dist.c;
  report.d = dist.d;
  return report;
}

EntropyReport entropy_from_state(const Eigen::VectorXd& state, int n, int cut) {
  if (n < 2) throw std::invalid_argument("entropy_from_state: need n >= 2");
  if (cut < 1 || cut >= n) {
    throw std::invalid_argument("entropy_from_state: cut must split the chain");
  }
  Eigen::Index dim = 1;
  for (int i = 0; i < n; ++i) dim *= 6;
  if (state.size() != dim) {
    throw std::invalid_argument("entropy_from_state: state size is not 6^n");
  }
  Eigen::Index rows = 1;
  for (int i = 0; i < cut; ++i) rows *= 6;
  const Eigen::Index cols = dim / rows;

  // Site 1 is the most significant digit of the basis index, so the
  // amplitudes of the left block vary along rows of the row-major reshape.
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      amplitudes(state.data(), rows, cols);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(amplitudes);
  const Eigen::VectorXd& sigma = svd.singularValues();

  double total = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) total += sigma[i] * sigma[i];
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::invalid_argument("entropy_from_state: state is not normalized");
  }

  double s = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double p = sigma[i] * sigma[i];
    if (p > 1e-14) s -= p * std::log(p);
  }

  EntropyReport report;
  report.S = s;
  report.method = "rdm_numeric";
  report.length = n;
  report.cut = cut;
  report.phase = Phase::kFull;
  report.c = 0;
  report.d = 0;
  return report;
}

EntropyReport entropy_asymptotic_phase1(int n, int r) {
  if (n < 1 || r < 0 || r >= n) {
    throw std::invalid_argument("entropy_asymptotic_phase1: need n > r >= 0");
  }
  const double np = static_cast<double>(n) + r;
  const double nm = static_cast<double>(n) - r;
  const double s = 0.5 * std::log(np * nm / static_cast<double>(n)) +
                   0.5 * std::log(std::numbers::pi / 4.0) +
                   std::numbers::egamma - 0.5;
  EntropyReport report;
  report.S = s;
  report.method = "asymptotic";
  report.length = 2 * n;
  report.cut = n + r;
  report.phase = Phase::kFull;
  report.c = 0;
  report.d = 0;
  return report;
}

EntropyReport entropy_phase1_logcounts(int n, int r) {
  if (n < 1 || r < 0 || r >= n) {
    throw std::invalid_argument("entropy_phase1_logcounts: need n > r >= 0");
  }
  const int left = n + r;
  const int right = n - r;
  const double log_denom = log_count(Phase::kFull, 2 * n, 0, 1, 1);
  const int hmax = std::min(max_height(left), max_height(right));

  // Accumulate Z = sum p and sum p*ln p in one sweep; folding the float
  // residue of Z - 1 back through S = ln Z - (sum p ln p)/Z keeps the result
  // at the accuracy of the individual log terms.
  double z = 0.0;
  double plp = 0.0;
  for (int h = 0; h <= hmax; ++h) {
    for (int a = 1; a <= 3; ++a) {
      const double lp = log_count(Phase::kFull, left, h, 1, a) +
                        log_count(Phase::kFull, right, h, 1, a) - log_denom;
      if (!std::isfinite(lp)) continue;
      const double p = std::exp(lp);
      z += p;
      plp += p * lp;
    }
  }
  if (!(z > 0.0)) {
    throw IdentityViolationError(
        "entropy_phase1_logcounts: log-domain cut sum vanished");
  }

  EntropyReport report;
  report.S = std::log(z) - plp / z;
  report.method = "schmidt_counts";
  report.length = 2 * n;
  report.cut = n + r;
  report.phase = Phase::kFull;
  report.c = 1;
  report.d = 1;
  return report;
}

double area_law_entropy_limit() {
  const double sqrt5 = std::sqrt(5.0);
  const double golden = (1.0 + sqrt5) / 2.0;
  return 0.5 * std::log(5.0) - std::log(golden) / sqrt5;
}

}  // namespace fredkin
