#include "fredkin/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fredkin/errors.hpp"
#include "fredkin/walks.hpp"

namespace fredkin {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Dense path.
// ---------------------------------------------------------------------------

// Eigendecomposition in place; the divide-and-conquer routine is faster but
// wants O(dim^2) workspace on top of the matrix, so very large dense solves
// fall back to the workspace-light QR routine.
void dense_eig_inplace(MatrixXd& a, VectorXd& w) {
  const lapack_int dim = static_cast<lapack_int>(a.rows());
  w.resize(dim);
  lapack_int info;
  if (dim <= 4096) {
    info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', dim, a.data(), dim,
                          w.data());
  } else {
    info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'V', 'L', dim, a.data(), dim,
                         w.data());
  }
  if (info != 0) {
    std::ostringstream msg;
    msg << "dense symmetric eigensolver failed with status " << info;
    throw std::runtime_error(msg.str());
  }
}

// ---------------------------------------------------------------------------
// Restarted Lanczos with locking.
// ---------------------------------------------------------------------------

struct TridiagEig {
  VectorXd values;   // ascending
  MatrixXd vectors;  // columns
};

TridiagEig eig_tridiagonal(const std::vector<double>& alpha,
                           const std::vector<double>& beta, int len) {
  MatrixXd t = MatrixXd::Zero(len, len);
  for (int i = 0; i < len; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < len) {
      t(i, i + 1) = beta[static_cast<std::size_t>(i)];
      t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(t);
  return {es.eigenvalues(), es.eigenvectors()};
}

// Removes the components of v along the columns of basis[0..cols) twice
// (classical Gram-Schmidt applied twice keeps the basis orthogonal to
// working precision).
void orthogonalize(VectorXd& v, const MatrixXd& basis, Index cols) {
  if (cols == 0) return;
  const auto block = basis.leftCols(cols);
  for (int pass = 0; pass < 2; ++pass) v.noalias() -= block * (block.transpose() * v);
}

SpectrumSlice low_spectrum_iterative(const SparseOperator& h, int k,
                                     const SolverOptions& opts) {
  const Index dim = static_cast<Index>(h.dim());
  const int m = static_cast<int>(
      std::min<Index>(dim, std::max(opts.chain_length, 2 * k + 10)));
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;

  MatrixXd locked(dim, k);
  VectorXd locked_values(k);
  Index n_locked = 0;

  MatrixXd q(dim, m + 1);
  std::vector<double> alpha(static_cast<std::size_t>(m));
  std::vector<double> beta(static_cast<std::size_t>(m));
  int total_steps = 0;
  double scale = h.max_abs();
  if (scale == 0.0) scale = 1.0;

  const auto random_start = [&](VectorXd& v) {
    for (Index i = 0; i < dim; ++i) v[i] = gauss(rng);
    orthogonalize(v, locked, n_locked);
    const double norm = v.norm();
    if (norm < 1e-8) throw SpectralAmbiguityError("eigensolver start vector collapsed");
    v /= norm;
  };

  VectorXd start(dim);
  random_start(start);

  for (int restart = 0; restart < opts.max_restarts && n_locked < k; ++restart) {
    q.col(0) = start;
    int len = 0;
    bool breakdown = false;
    VectorXd w(dim);
    for (int j = 0; j < m; ++j) {
      h.matvec(q.col(j).data(), w.data());
      alpha[static_cast<std::size_t>(j)] = q.col(j).dot(w);
      ++total_steps;
      w.noalias() -= alpha[static_cast<std::size_t>(j)] * q.col(j);
      if (j > 0) w.noalias() -= beta[static_cast<std::size_t>(j - 1)] * q.col(j - 1);
      orthogonalize(w, locked, n_locked);
      orthogonalize(w, q, j + 1);
      const double norm = w.norm();
      len = j + 1;
      if (norm < 1e-13 * scale) {
        breakdown = true;  // invariant subspace: every Ritz pair is exact
        break;
      }
      beta[static_cast<std::size_t>(j)] = norm;
      q.col(j + 1) = w / norm;
    }

    const TridiagEig te = eig_tridiagonal(alpha, beta, len);
    const double edge = breakdown ? 0.0 : beta[static_cast<std::size_t>(len - 1)];

    // Lock converged Ritz pairs from the bottom of the section up.
    int first_unconverged = -1;
    for (int i = 0; i < len; ++i) {
      const double resid = edge * std::fabs(te.vectors(len - 1, i));
      if (resid <= opts.tol && n_locked < k) {
        VectorXd v = q.leftCols(len) * te.vectors.col(i);
        orthogonalize(v, locked, n_locked);
        const double norm = v.norm();
        if (norm < 0.1) continue;  // duplicate of an already locked vector
        locked.col(n_locked) = v / norm;
        locked_values[n_locked] = te.values[i];
        ++n_locked;
      } else {
        first_unconverged = i;
        break;
      }
    }

    if (n_locked >= k) break;
    if (first_unconverged >= 0) {
      start = q.leftCols(len) * te.vectors.col(first_unconverged);
      orthogonalize(start, locked, n_locked);
      const double norm = start.norm();
      if (norm > 1e-8)
        start /= norm;
      else
        random_start(start);
    } else {
      random_start(start);
    }
  }

  if (n_locked < k) {
    std::ostringstream msg;
    msg << "Lanczos iteration locked only " << n_locked << " of " << k
        << " requested eigenpairs after " << opts.max_restarts << " restarts";
    throw SpectralAmbiguityError(msg.str());
  }

  // Ascending order (locking proceeds bottom-up but restarts can interleave).
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return locked_values[x] < locked_values[y];
  });

  SpectrumSlice out;
  out.values.resize(k);
  out.vectors.resize(dim, k);
  out.residuals.resize(k);
  out.iterations = total_steps;
  VectorXd hv(dim);
  for (int i = 0; i < k; ++i) {
    out.values[i] = locked_values[order[static_cast<std::size_t>(i)]];
    out.vectors.col(i) = locked.col(order[static_cast<std::size_t>(i)]);
    h.matvec(out.vectors.col(i).data(), hv.data());
    out.residuals[i] = (hv - out.values[i] * out.vectors.col(i)).norm();
  }
  return out;
}

}  // namespace

SpectrumSlice solve_dense(const SparseOperator& h) {
  SpectrumSlice out;
  MatrixXd a = h.dense();
  dense_eig_inplace(a, out.values);
  out.vectors = std::move(a);
  out.dense = true;
  return out;
}

SpectrumSlice low_spectrum(const SparseOperator& h, int k,
                           const SolverOptions& opts) {
  if (k < 1 || static_cast<std::uint64_t>(k) > h.dim())
    throw std::invalid_argument("low_spectrum: k out of range");
  if (h.dim() <= opts.dense_cutoff) {
    SpectrumSlice full = solve_dense(h);
    SpectrumSlice out;
    out.values = full.values.head(k);
    out.vectors = full.vectors.leftCols(k);
    out.residuals.resize(k);
    out.dense = true;
    VectorXd hv(static_cast<Index>(h.dim()));
    for (int i = 0; i < k; ++i) {
      h.matvec(out.vectors.col(i).data(), hv.data());
      out.residuals[i] = (hv - out.values[i] * out.vectors.col(i)).norm();
    }
    return out;
  }
  return low_spectrum_iterative(h, k, opts);
}

GroundSpace ground_space(const SparseOperator& h, const SolverOptions& opts) {
  const std::uint64_t dim = h.dim();
  int k = static_cast<int>(std::min<std::uint64_t>(dim, 12));
  SpectrumSlice slice;
  for (;;) {
    slice = low_spectrum(h, k, opts);
    const bool cluster_may_extend =
        slice.values[k - 1] < opts.tol && static_cast<std::uint64_t>(k) < dim;
    if (!cluster_may_extend) break;
    k = static_cast<int>(std::min<std::uint64_t>(dim, 2 * std::uint64_t(k)));
  }

  int cluster = 0;
  while (cluster < k && slice.values[cluster] < opts.tol) ++cluster;

  GroundSpace out;
  out.tol = opts.tol;
  out.energy = slice.values[0];
  out.gap = cluster < k ? slice.values[cluster]
                        : std::numeric_limits<double>::infinity();
  if (out.gap < 10.0 * opts.tol) {
    std::ostringstream msg;
    msg << "ambiguous kernel: first eigenvalue above the cluster (" << out.gap
        << ") is within 10x the membership tolerance (" << opts.tol << ")";
    throw SpectralAmbiguityError(msg.str());
  }
  out.vectors = slice.vectors.leftCols(cluster);
  return out;
}

// ---------------------------------------------------------------------------
// State constructors.
// ---------------------------------------------------------------------------

Eigen::VectorXd build_path_state(const std::vector<Path>& paths) {
  if (paths.empty())
    throw std::invalid_argument("build_path_state: empty path set");
  const int n = static_cast<int>(paths.front().size());
  std::vector<std::uint64_t> codes;
  codes.reserve(paths.size());
  for (const Path& p : paths) {
    if (static_cast<int>(p.size()) != n)
      throw std::invalid_argument("build_path_state: mixed path lengths");
    codes.push_back(p.encode());
  }
  std::sort(codes.begin(), codes.end());
  if (std::adjacent_find(codes.begin(), codes.end()) != codes.end())
    throw std::invalid_argument("build_path_state: duplicate path");
  VectorXd v = VectorXd::Zero(static_cast<Index>(word_space_size(n)));
  const double amp = 1.0 / std::sqrt(static_cast<double>(codes.size()));
  for (std::uint64_t c : codes) v[static_cast<Index>(c)] = amp;
  return v;
}

Eigen::VectorXd build_excitation(int n,
                                 const std::vector<ExcitationSegment>& segments) {
  if (segments.empty())
    throw std::invalid_argument("build_excitation: no segments");
  int total = 0;
  for (const ExcitationSegment& s : segments) {
    if (s.length < 1) throw std::invalid_argument("build_excitation: empty segment");
    if (s.a < 1 || s.a > 3 || s.b < 1 || s.b > 3)
      throw std::invalid_argument("build_excitation: arrow index out of range");
    if (s.start_height < 0 || s.end_height < 0)
      throw std::invalid_argument("build_excitation: negative height label");
    total += s.length;
  }
  if (total != n)
    throw std::invalid_argument("build_excitation: segment lengths must sum to the chain length");
  if (segments.front().start_height != 0)
    throw std::invalid_argument("build_excitation: the first segment starts on the floor");
  if (segments.back().end_height != 0)
    throw std::invalid_argument("build_excitation: the last segment ends on the floor");
  for (std::size_t i = 0; i + 1 < segments.size(); ++i)
    if (segments[i].b == segments[i + 1].a)
      throw std::invalid_argument(
          "build_excitation: matching arrow indices at a declared disconnection");

  // Enumerate each segment class; ends are floor-restricted, middles are not.
  std::vector<std::vector<std::uint64_t>> factors;
  double log_members = 0.0;
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const ExcitationSegment& s = segments[i];
    EnumerateOptions opts;
    opts.start_height = s.start_height;
    opts.restricted = i == 0 || i + 1 == segments.size();
    const std::vector<Path> words =
        enumerate_walks(s.length, {s.a, s.b, s.end_height}, opts);
    if (words.empty())
      throw std::invalid_argument("build_excitation: a segment class is empty");
    std::vector<std::uint64_t> codes;
    codes.reserve(words.size());
    for (const Path& w : words) codes.push_back(w.encode());
    log_members += std::log(static_cast<double>(codes.size()));
    product *= codes.size();
    if (product > (1u << 22))
      throw CapacityError("build_excitation: product state support too large");
    factors.push_back(std::move(codes));
  }

  VectorXd v = VectorXd::Zero(static_cast<Index>(word_space_size(n)));
  const double amp = std::exp(-0.5 * log_members);
  std::vector<std::size_t> cursor(factors.size(), 0);
  // Per-segment place value of the big-endian base-6 word index.
  std::vector<std::uint64_t> place(factors.size(), 1);
  {
    std::uint64_t tail = 1;
    for (std::size_t i = segments.size(); i-- > 0;) {
      place[i] = tail;
      for (int j = 0; j < segments[i].length; ++j) tail *= 6;
    }
  }
  for (;;) {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
      index += factors[i][cursor[i]] * place[i];
    v[static_cast<Index>(index)] = amp;
    std::size_t level = factors.size();
    while (level > 0) {
      --level;
      if (++cursor[level] < factors[level].size()) break;
      cursor[level] = 0;
      if (level == 0) return v;
    }
  }
}

Eigen::VectorXd highly_excited_state(int n, int r) {
  if (r < 0 || r >= n)
    throw std::invalid_argument("highly_excited_state: r out of range");
  if ((n - r) % 2 != 0)
    throw std::invalid_argument(
        "highly_excited_state: the connected block needs an even number of links");
  // Each pinned letter climbs one unit; middle-segment heights are local
  // bookkeeping, so every copy can carry the same 0 -> 1 labels.
  std::vector<ExcitationSegment> segments;
  for (int i = 0; i < r; ++i) segments.push_back({1, 1, 2, 0, 1});
  segments.push_back({n - r, 1, 1, 0, 0});
  return build_excitation(n, segments);
}

// ---------------------------------------------------------------------------
// Time evolution.
// ---------------------------------------------------------------------------

namespace {

// One Lanczos-exponential step: approximates exp(-i tau H) v from a Krylov
// section of length at most m.  The error estimate compares the result with
// the one from a shorter section; `ok` reports whether it met tol.
VectorXcd krylov_step(const SparseOperator& h, const VectorXcd& v, double tau,
                      int m_cap, double tol, bool& ok) {
  using Complex = std::complex<double>;
  const Index dim = v.size();
  const double v_norm = v.norm();
  ok = true;
  if (v_norm == 0.0) return v;

  const int m = static_cast<int>(std::min<Index>(dim, m_cap));
  Eigen::MatrixXcd q(dim, m + 1);
  std::vector<double> alpha(static_cast<std::size_t>(m));
  std::vector<double> beta(static_cast<std::size_t>(m));
  q.col(0) = v / v_norm;
  int len = 0;
  bool breakdown = false;
  VectorXcd w(dim);
  for (int j = 0; j < m; ++j) {
    w = h.apply(VectorXcd(q.col(j)));
    alpha[static_cast<std::size_t>(j)] = q.col(j).dot(w).real();
    w -= alpha[static_cast<std::size_t>(j)] * q.col(j);
    if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * q.col(j - 1);
    for (int pass = 0; pass < 2; ++pass)
      w -= q.leftCols(j + 1) * (q.leftCols(j + 1).adjoint() * w);
    const double norm = w.norm();
    len = j + 1;
    if (norm < 1e-12) {
      breakdown = true;  // invariant subspace: the step is exact
      break;
    }
    beta[static_cast<std::size_t>(j)] = norm;
    q.col(j + 1) = w / norm;
  }

  const auto section_result = [&](int size) {
    const TridiagEig te = eig_tridiagonal(alpha, beta, size);
    VectorXcd phases(size);
    for (int i = 0; i < size; ++i)
      phases[i] = std::exp(Complex(0.0, -te.values[i] * tau));
    // exp(-i tau T) e1, assembled from the spectral factors.
    const VectorXd first_row = te.vectors.row(0);
    VectorXcd y = te.vectors * phases.cwiseProduct(first_row.cast<Complex>());
    return y;
  };

  const VectorXcd y_full = section_result(len);
  if (!breakdown) {
    const int probe = std::max(2, len - 8);
    const VectorXcd y_probe = section_result(probe);
    VectorXcd diff = y_full;
    diff.head(probe) -= y_probe;
    if (diff.norm() > tol) ok = false;
  }
  return v_norm * (q.leftCols(len) * y_full);
}

}  // namespace

Propagator::Propagator(SparseOperator h, PropagatorOptions opts)
    : h_(std::move(h)), opts_(opts) {
  if (h_.dim() <= opts_.dense_cutoff) {
    MatrixXd a = h_.dense();
    dense_eig_inplace(a, eigenvalues_);
    eigenvectors_ = std::move(a);
    dense_ = true;
  }
}

Eigen::VectorXcd Propagator::evolve(const Eigen::VectorXcd& state,
                                    double t) const {
  if (state.size() != static_cast<Index>(h_.dim()))
    throw std::invalid_argument("Propagator::evolve: dimension mismatch");
  if (t == 0.0) return state;
  using Complex = std::complex<double>;
  if (dense_) {
    VectorXcd modal = eigenvectors_.transpose() * state;
    for (Index i = 0; i < modal.size(); ++i)
      modal[i] *= std::exp(Complex(0.0, -eigenvalues_[i] * t));
    return eigenvectors_ * modal;
  }
  VectorXcd current = state;
  double done = 0.0;
  double tau = t;
  int steps = 0;
  while (std::fabs(t - done) > 0.0) {
    if (std::fabs(tau) > std::fabs(t - done)) tau = t - done;
    bool ok = false;
    VectorXcd next =
        krylov_step(h_, current, tau, opts_.krylov_dim, opts_.step_tol, ok);
    if (++steps > opts_.max_steps)
      throw std::runtime_error("time evolution did not reach the local error target");
    if (!ok) {
      tau *= 0.5;
      continue;
    }
    current = std::move(next);
    done += tau;
    tau *= 2.0;
  }
  return current;
}

Eigen::VectorXcd time_evolve(const SparseOperator& h,
                             const Eigen::VectorXcd& state, double t,
                             const PropagatorOptions& opts) {
  return Propagator(h, opts).evolve(state, t);
}

}  // namespace fredkin
