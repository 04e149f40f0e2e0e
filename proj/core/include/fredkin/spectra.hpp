#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fredkin/path.hpp"
#include "fredkin/sparse.hpp"

namespace fredkin {

// ---------------------------------------------------------------------------
// Eigensolvers.
// ---------------------------------------------------------------------------

struct SolverOptions {
  // Residual bound ||H v - lambda v|| guaranteed per reported pair.
  double tol = 1e-9;
  // Dimensions at or below this use one full dense factorization; above it a
  // restarted Lanczos iteration with locking/deflation extracts the low end.
  std::uint64_t dense_cutoff = 10000;
  // Length of one Lanczos chain between restarts (fully reorthogonalized).
  int chain_length = 120;
  int max_restarts = 400;
  unsigned seed = 20240816;
};

struct SpectrumSlice {
  Eigen::VectorXd values;     // ascending
  Eigen::MatrixXd vectors;    // column i pairs with values[i]
  Eigen::VectorXd residuals;  // ||H v - lambda v|| per reported pair
  int iterations = 0;         // total Lanczos steps (0 for a dense solve)
  bool dense = false;
};

// Full dense eigendecomposition (all pairs, residuals left empty).  Subject
// to the dense-conversion capacity limit of SparseOperator.
SpectrumSlice solve_dense(const SparseOperator& h);

// The k smallest eigenpairs of a symmetric operator, dense or iterative by
// dimension.  Iterative failures raise SpectralAmbiguityError.
SpectrumSlice low_spectrum(const SparseOperator& h, int k,
                           const SolverOptions& opts = {});

struct GroundSpace {
  double energy = 0.0;      // smallest eigenvalue found
  double gap = 0.0;         // first eigenvalue above the kernel cluster
  double tol = 0.0;         // membership threshold that was applied
  Eigen::MatrixXd vectors;  // orthonormal basis of the cluster

  int degeneracy() const { return static_cast<int>(vectors.cols()); }
};

// All eigenvectors with eigenvalue below opts.tol, orthonormalized.  The
// count is only reported when it is unambiguous: the first eigenvalue above
// the cluster must be at least ten times the tolerance, otherwise
// SpectralAmbiguityError carries the offending values.
GroundSpace ground_space(const SparseOperator& h, const SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// State constructors.
// ---------------------------------------------------------------------------

// Equal-amplitude normalized superposition over distinct same-length words.
Eigen::VectorXd build_path_state(const std::vector<Path>& paths);

// One tensor factor of a disconnection eigenstate: the class of connected
// length-`length` walks with first arrow index `a` at height `start_height`
// and last arrow index `b` reaching height `end_height`.  The first and last
// segments of an excitation stay on or above the floor; middle segments are
// unconstrained and only their net height change matters.
struct ExcitationSegment {
  int length = 1;
  int a = 1;
  int b = 2;
  int start_height = 0;
  int end_height = 0;
};

// Tensor product of uniform segment superpositions with a disconnection at
// every junction between consecutive segments (their arrow indices must
// mismatch).  The result is an energy eigenstate with eigenvalue equal to the
// number of junctions whenever the balancing coupling vanishes.
Eigen::VectorXd build_excitation(int n,
                                 const std::vector<ExcitationSegment>& segments);

// The first r links pinned to the height-raising 1->2 letter (each its own
// totally disconnected component) and the remaining n-r links carrying the
// uniform connected 1->1 ground superposition; energy eigenvalue r.
Eigen::VectorXd highly_excited_state(int n, int r);

// ---------------------------------------------------------------------------
// Time evolution.
// ---------------------------------------------------------------------------

struct PropagatorOptions {
  // Cache one dense eigendecomposition at or below this dimension; larger
  // problems step with a Lanczos-exponential Krylov scheme.
  std::uint64_t dense_cutoff = 2048;
  int krylov_dim = 80;
  // Local error target per accepted Krylov step.
  double step_tol = 1e-9;
  int max_steps = 65536;
};

// Applies exp(-i H t), reusing whatever factorization the construction chose.
class Propagator {
 public:
  explicit Propagator(SparseOperator h, PropagatorOptions opts = {});

  Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, double t) const;

  const SparseOperator& op() const { return h_; }

 private:
  SparseOperator h_;
  PropagatorOptions opts_;
  bool dense_ = false;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

// One-shot convenience wrapper around Propagator.
Eigen::VectorXcd time_evolve(const SparseOperator& h,
                             const Eigen::VectorXcd& state, double t,
                             const PropagatorOptions& opts = {});

}  // namespace fredkin
