#include "fredkin/correlator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

namespace fredkin {

namespace {

int chain_length_from_dim(std::uint64_t dim) {
  std::uint64_t d = 1;
  int n = 0;
  while (d < dim) {
    d *= 6;
    ++n;
  }
  if (n == 0 || d != dim) {
    throw std::invalid_argument("operator dimension is not a power of 6");
  }
  return n;
}

// One 6x6 factor applied to the base-6 digit of `site` (1-based; site 1 is
// the most significant digit of the basis index).
void apply_site(const Matrix6d& m, int site, int n, Eigen::VectorXcd& y) {
  std::uint64_t stride = 1;
  for (int k = 0; k < n - site; ++k) stride *= 6;
  const std::uint64_t block = 6 * stride;
  const auto dim = static_cast<std::uint64_t>(y.size());
  std::array<std::complex<double>, 6> v;
  for (std::uint64_t base = 0; base < dim; base += block) {
    for (std::uint64_t off = 0; off < stride; ++off) {
      for (int d = 0; d < 6; ++d) v[d] = y[base + off + d * stride];
      for (int d = 0; d < 6; ++d) {
        std::complex<double> acc = 0.0;
        for (int e = 0; e < 6; ++e) acc += m(d, e) * v[e];
        y[base + off + d * stride] = acc;
      }
    }
  }
}

}  // namespace

LocalOperatorSpec LocalOperatorSpec::flip(int site, const Step& to,
                                          const Step& from) {
  if (to == from) {
    throw std::invalid_argument("flip requires two distinct letters");
  }
  Matrix6d m = Matrix6d::Zero();
  m(to.code(), from.code()) = 1.0;
  return window(site, 0, {m});
}

LocalOperatorSpec LocalOperatorSpec::diagonal(int site, const Step& letter) {
  Matrix6d m = Matrix6d::Zero();
  m(letter.code(), letter.code()) = 1.0;
  return window(site, 0, {m});
}

LocalOperatorSpec LocalOperatorSpec::general(int site, const Matrix6d& kappa) {
  return window(site, 0, {kappa});
}

LocalOperatorSpec LocalOperatorSpec::window(int site, int radius,
                                            std::vector<Matrix6d> factors) {
  if (radius < 0) throw std::invalid_argument("window radius must be >= 0");
  if (site - radius < 1) {
    throw std::invalid_argument("window extends below site 1");
  }
  if (factors.size() != static_cast<std::size_t>(2 * radius + 1)) {
    throw std::invalid_argument("window needs one factor per covered site");
  }
  LocalOperatorSpec spec;
  spec.site = site;
  spec.radius = radius;
  spec.factors = std::move(factors);
  return spec;
}

LocalOperatorSpec LocalOperatorSpec::transposed() const {
  LocalOperatorSpec t = *this;
  for (auto& f : t.factors) f = f.transpose().eval();
  return t;
}

Eigen::VectorXcd apply_local(const LocalOperatorSpec& op, int n,
                             const Eigen::VectorXcd& state) {
  if (op.lo() < 1 || op.hi() > n) {
    throw std::invalid_argument("operator window leaves the chain");
  }
  if (op.factors.size() != static_cast<std::size_t>(2 * op.radius + 1)) {
    throw std::invalid_argument("operator is missing site factors");
  }
  std::uint64_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= 6;
  if (static_cast<std::uint64_t>(state.size()) != dim) {
    throw std::invalid_argument("state size is not 6^n");
  }
  Eigen::VectorXcd y = state;
  for (int k = 0; k < 2 * op.radius + 1; ++k) {
    apply_site(op.factors[static_cast<std::size_t>(k)], op.lo() + k, n, y);
  }
  return y;
}

bool covers_overlap(int n, const std::vector<int>& disconnections, int lo_a,
                    int hi_a, int lo_b, int hi_b) {
  if (lo_a < 1 || hi_a > n || lo_a > hi_a || lo_b < 1 || hi_b > n ||
      lo_b > hi_b) {
    throw std::invalid_argument("site range leaves the chain");
  }
  for (int d : disconnections) {
    if (d < 1 || d >= n) {
      throw std::invalid_argument("junction label outside 1..n-1");
    }
  }
  const auto component = [&](int s) {
    return static_cast<int>(std::count_if(
        disconnections.begin(), disconnections.end(),
        [s](int d) { return d < s; }));
  };
  const int a0 = component(lo_a);
  const int a1 = component(hi_a);
  const int b0 = component(lo_b);
  const int b1 = component(hi_b);
  if (a0 <= b1 && b0 <= a1) return true;
  // Adjacent windows share a junction both operators can toggle: a flip pair
  // flanking a broken junction can reconnect it and correlate through the
  // merged component, so a one-site gap is required even across components.
  return std::max(lo_a, lo_b) <= std::min(hi_a, hi_b) + 1;
}

std::complex<double> connected_correlator(const Propagator& prop,
                                          const Eigen::VectorXcd& state,
                                          const LocalOperatorSpec& op_a,
                                          const LocalOperatorSpec& op_b,
                                          double t) {
  const int n = chain_length_from_dim(prop.op().dim());
  if (static_cast<std::uint64_t>(state.size()) != prop.op().dim()) {
    throw std::invalid_argument("state dimension does not match the operator");
  }
  const Eigen::VectorXcd b_psi = apply_local(op_b, n, state);
  const std::complex<double> exp_b = state.dot(b_psi);
  const Eigen::VectorXcd psi_t = prop.evolve(state, t);
  const Eigen::VectorXcd phi_t = prop.evolve(b_psi, t);
  // With real factors, u = A^T psi(t) turns both A-expectations into plain
  // inner products against the evolved vectors.
  const Eigen::VectorXcd u = apply_local(op_a.transposed(), n, psi_t);
  return u.dot(phi_t) - u.dot(psi_t) * exp_b;
}

namespace {

struct Instance {
  std::string family;
  LocalOperatorSpec spec;
};

Matrix6d random_flip(std::mt19937& rng) {
  std::uniform_int_distribution<int> code(0, 5);
  const int from = code(rng);
  int to = code(rng);
  while (to == from) to = code(rng);
  Matrix6d m = Matrix6d::Zero();
  m(to, from) = 1.0;
  return m;
}

Matrix6d random_diagonal(std::mt19937& rng) {
  std::uniform_int_distribution<int> code(0, 5);
  const int c = code(rng);
  Matrix6d m = Matrix6d::Zero();
  m(c, c) = 1.0;
  return m;
}

Matrix6d random_general(std::mt19937& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Matrix6d m;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) m(i, j) = coef(rng);
  }
  return m;
}

}  // namespace

LocalizationReport localization_report(const SparseOperator& h,
                                       const Eigen::VectorXd& state,
                                       const std::vector<int>& disconnections,
                                       const LocalizationOptions& opts) {
  const int n = chain_length_from_dim(h.dim());
  if (static_cast<std::uint64_t>(state.size()) != h.dim()) {
    throw std::invalid_argument("state dimension does not match the operator");
  }
  if (std::abs(state.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("state is not normalized");
  }
  std::vector<int> broken = disconnections;
  std::sort(broken.begin(), broken.end());
  if (std::adjacent_find(broken.begin(), broken.end()) != broken.end()) {
    throw std::invalid_argument("duplicate junction label");
  }
  for (int d : broken) {
    if (d < 1 || d >= n) {
      throw std::invalid_argument("junction label outside 1..n-1");
    }
  }
  if (opts.times.empty()) {
    throw std::invalid_argument("localization scan needs at least one time");
  }

  std::mt19937 rng(opts.seed);
  const int stride = std::max(1, opts.window_stride);

  std::vector<std::pair<int, int>> windows;  // (center, radius)
  for (int radius = 0; radius <= opts.max_radius; ++radius) {
    for (int center = 1 + radius; center + radius <= n; center += stride) {
      windows.emplace_back(center, radius);
    }
  }

  const auto sampled_window = [&](int center, int radius,
                                  Matrix6d (*draw)(std::mt19937&)) {
    std::vector<Matrix6d> factors;
    factors.reserve(static_cast<std::size_t>(2 * radius + 1));
    for (int k = 0; k < 2 * radius + 1; ++k) factors.push_back(draw(rng));
    return LocalOperatorSpec::window(center, radius, std::move(factors));
  };

  // Probe side (acts at time t): the complete single-letter families on
  // width-1 windows, sampled products on wider ones.
  std::vector<Instance> probes;
  for (const auto& [center, radius] : windows) {
    if (radius == 0) {
      for (int to = 0; to < 6; ++to) {
        for (int from = 0; from < 6; ++from) {
          if (to == from) continue;
          probes.push_back({"flip",
                            LocalOperatorSpec::flip(center, Step::from_code(to),
                                                    Step::from_code(from))});
        }
      }
      for (int code = 0; code < 6; ++code) {
        probes.push_back(
            {"diagonal",
             LocalOperatorSpec::diagonal(center, Step::from_code(code))});
      }
      for (int k = 0; k < opts.mixed_samples; ++k) {
        probes.push_back(
            {"mixed", LocalOperatorSpec::general(center, random_general(rng))});
      }
    } else {
      for (int k = 0; k < opts.flip_samples; ++k) {
        probes.push_back({"flip", sampled_window(center, radius, random_flip)});
      }
      for (int k = 0; k < opts.diagonal_samples; ++k) {
        probes.push_back(
            {"diagonal", sampled_window(center, radius, random_diagonal)});
      }
      for (int k = 0; k < opts.mixed_samples; ++k) {
        probes.push_back(
            {"mixed", sampled_window(center, radius, random_general)});
      }
    }
  }

  // Evolved side (acts at time 0): sampled members of each family per window.
  std::vector<Instance> evolved;
  for (const auto& [center, radius] : windows) {
    for (int k = 0; k < opts.flip_samples; ++k) {
      evolved.push_back({"flip", sampled_window(center, radius, random_flip)});
    }
    for (int k = 0; k < opts.diagonal_samples; ++k) {
      evolved.push_back(
          {"diagonal", sampled_window(center, radius, random_diagonal)});
    }
    for (int k = 0; k < opts.mixed_samples; ++k) {
      evolved.push_back(
          {"mixed", sampled_window(center, radius, random_general)});
    }
  }

  const Propagator prop(h, opts.propagator);
  const Eigen::VectorXcd psi0 = state.cast<std::complex<double>>();

  std::vector<Eigen::VectorXcd> phi(evolved.size());
  std::vector<std::complex<double>> exp_b(evolved.size());
  for (std::size_t b = 0; b < evolved.size(); ++b) {
    phi[b] = apply_local(evolved[b].spec, n, psi0);
    exp_b[b] = psi0.dot(phi[b]);
  }

  std::vector<double> times = opts.times;
  std::sort(times.begin(), times.end());

  LocalizationReport report;
  report.n = n;
  report.disconnections = broken;
  report.samples.reserve(probes.size() * evolved.size() * times.size());

  Eigen::VectorXcd psi_t = psi0;
  double prev_t = 0.0;
  for (double t : times) {
    const double dt = t - prev_t;
    psi_t = prop.evolve(psi_t, dt);
    for (auto& v : phi) v = prop.evolve(v, dt);
    prev_t = t;

    for (const auto& a : probes) {
      const Eigen::VectorXcd u = apply_local(a.spec.transposed(), n, psi_t);
      const std::complex<double> exp_a = u.dot(psi_t);
      for (std::size_t b = 0; b < evolved.size(); ++b) {
        CorrelatorSample sample;
        sample.i = a.spec.site;
        sample.delta = a.spec.radius;
        sample.j = evolved[b].spec.site;
        sample.delta_prime = evolved[b].spec.radius;
        sample.t = t;
        sample.family_a = a.family;
        sample.family_b = evolved[b].family;
        sample.value = u.dot(phi[b]) - exp_a * exp_b[b];
        sample.overlap =
            covers_overlap(n, broken, a.spec.lo(), a.spec.hi(),
                           evolved[b].spec.lo(), evolved[b].spec.hi());
        const double mag = std::abs(sample.value);
        if (sample.overlap) {
          ++report.overlap_count;
          report.max_overlap = std::max(report.max_overlap, mag);
        } else {
          ++report.no_overlap_count;
          report.max_no_overlap = std::max(report.max_no_overlap, mag);
        }
        report.samples.push_back(std::move(sample));
      }
    }
  }
  return report;
}

}  // namespace fredkin
