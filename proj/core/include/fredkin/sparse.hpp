#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace fredkin {

struct Triplet {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  double value = 0.0;
};

// Square real sparse matrix in compressed-row form.  All operators built
// here are symmetric sums of projectors; symmetry is by construction and
// checkable via is_symmetric().
class SparseOperator {
 public:
  SparseOperator() = default;

  // Sums duplicate (row, col) entries and drops exact zeros.
  static SparseOperator from_triplets(std::uint64_t dim, std::vector<Triplet> entries);

  std::uint64_t dim() const { return dim_; }
  std::uint64_t nnz() const { return col_.size(); }

  const std::vector<std::uint64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint64_t>& cols() const { return col_; }
  const std::vector<double>& values() const { return val_; }

  // y = A x (y overwritten); x and y must hold dim() entries.
  void matvec(const double* x, double* y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

  double coeff(std::uint64_t row, std::uint64_t col) const;
  double max_abs() const;
  bool is_symmetric(double tol) const;

  // Dense copy; throws CapacityError when dim() exceeds kDenseLimit.
  Eigen::MatrixXd dense() const;
  static constexpr std::uint64_t kDenseLimit = 16384;

  // Little-endian binary layout: u64 dim, u64 nnz, then nnz records of
  // (u64 row, u64 col, f64 value) in compressed-row order.
  void write_binary(std::ostream& os) const;
  static SparseOperator read_binary(std::istream& is);

  // Text layout for fixtures: "dim nnz" header line, then one
  // "row col value" line per entry.
  void write_text(std::ostream& os) const;
  static SparseOperator read_text(std::istream& is);

 private:
  std::uint64_t dim_ = 0;
  std::vector<std::uint64_t> row_ptr_{0};
  std::vector<std::uint64_t> col_;
  std::vector<double> val_;
};

// alpha * A + beta * B (dimensions must agree).
SparseOperator sparse_add(double alpha, const SparseOperator& a, double beta,
                          const SparseOperator& b);
SparseOperator sparse_multiply(const SparseOperator& a, const SparseOperator& b);

// Largest absolute entry of A B - B A.
double commutator_max_norm(const SparseOperator& a, const SparseOperator& b);

}  // namespace fredkin
