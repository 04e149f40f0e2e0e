#include "fredkin/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fredkin/errors.hpp"

namespace fredkin {

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw std::runtime_error("operator stream: truncated input");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

void put_f64(std::ostream& os, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64(os, v);
}

double get_f64(std::istream& is) {
  const std::uint64_t v = get_u64(is);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

}  // namespace

SparseOperator SparseOperator::from_triplets(std::uint64_t dim,
                                             std::vector<Triplet> entries) {
  for (const Triplet& t : entries)
    if (t.row >= dim || t.col >= dim)
      throw std::invalid_argument("from_triplets: index out of range");
  std::sort(entries.begin(), entries.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  SparseOperator out;
  out.dim_ = dim;
  out.row_ptr_.assign(dim + 1, 0);
  out.col_.reserve(entries.size());
  out.val_.reserve(entries.size());
  std::size_t i = 0;
  for (std::uint64_t row = 0; row < dim; ++row) {
    while (i < entries.size() && entries[i].row == row) {
      const std::uint64_t col = entries[i].col;
      double sum = 0.0;
      while (i < entries.size() && entries[i].row == row && entries[i].col == col)
        sum += entries[i++].value;
      if (sum != 0.0) {
        out.col_.push_back(col);
        out.val_.push_back(sum);
      }
    }
    out.row_ptr_[row + 1] = out.col_.size();
  }
  return out;
}

void SparseOperator::matvec(const double* x, double* y) const {
  for (std::uint64_t row = 0; row < dim_; ++row) {
    double acc = 0.0;
    for (std::uint64_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      acc += val_[k] * x[col_[k]];
    y[row] = acc;
  }
}

Eigen::VectorXd SparseOperator::apply(const Eigen::VectorXd& x) const {
  if (static_cast<std::uint64_t>(x.size()) != dim_)
    throw std::invalid_argument("apply: vector length mismatch");
  Eigen::VectorXd y(x.size());
  matvec(x.data(), y.data());
  return y;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& x) const {
  if (static_cast<std::uint64_t>(x.size()) != dim_)
    throw std::invalid_argument("apply: vector length mismatch");
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
  for (std::uint64_t row = 0; row < dim_; ++row) {
    std::complex<double> acc = 0.0;
    for (std::uint64_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      acc += val_[k] * x[static_cast<Eigen::Index>(col_[k])];
    y[static_cast<Eigen::Index>(row)] = acc;
  }
  return y;
}

double SparseOperator::coeff(std::uint64_t row, std::uint64_t col) const {
  if (row >= dim_ || col >= dim_)
    throw std::invalid_argument("coeff: index out of range");
  const auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return val_[static_cast<std::size_t>(it - col_.begin())];
}

double SparseOperator::max_abs() const {
  double best = 0.0;
  for (double v : val_) best = std::max(best, std::fabs(v));
  return best;
}

bool SparseOperator::is_symmetric(double tol) const {
  for (std::uint64_t row = 0; row < dim_; ++row)
    for (std::uint64_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      if (std::fabs(val_[k] - coeff(col_[k], row)) > tol) return false;
  return true;
}

Eigen::MatrixXd SparseOperator::dense() const {
  if (dim_ > kDenseLimit)
    throw CapacityError("dense: dimension " + std::to_string(dim_) +
                        " exceeds the dense limit " + std::to_string(kDenseLimit));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_),
                                            static_cast<Eigen::Index>(dim_));
  for (std::uint64_t row = 0; row < dim_; ++row)
    for (std::uint64_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col_[k])) = val_[k];
  return m;
}

void SparseOperator::write_binary(std::ostream& os) const {
  put_u64(os, dim_);
  put_u64(os, nnz());
  for (std::uint64_t row = 0; row < dim_; ++row)
    for (std::uint64_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) {
      put_u64(os, row);
      put_u64(os, col_[k]);
      put_f64(os, val_[k]);
    }
}

SparseOperator SparseOperator::read_binary(std::istream& is) {
  const std::uint64_t dim = get_u64(is);
  const std::uint64_t nnz = get_u64(is);
  std::vector<Triplet> entries;
  entries.reserve(nnz);
  for (std::uint64_t k = 0; k < nnz; ++k) {
    Triplet t;
    t.row = get_u64(is);
    t.col = get_u64(is);
    t.value = get_f64(is);
    entries.push_back(t);
  }
  return from_triplets(dim, std::move(entries));
}

void SparseOperator::write_text(std::ostream& os) const {
  os << dim_ << ' ' << nnz() << '\n';
  std::ostringstream line;
  line.precision(17);
  for (std::uint64_t row = 0; row < dim_; ++row)
    for (std::uint64_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) {
      line.str("");
      line << row << ' ' << col_[k] << ' ' << val_[k] << '\n';
      os << line.str();
    }
}

SparseOperator SparseOperator::read_text(std::istream& is) {
  std::uint64_t dim = 0, nnz = 0;
  if (!(is >> dim >> nnz)) throw std::runtime_error("operator text: bad header");
  std::vector<Triplet> entries;
  entries.reserve(nnz);
  for (std::uint64_t k = 0; k < nnz; ++k) {
    Triplet t;
    if (!(is >> t.row >> t.col >> t.value))
      throw std::runtime_error("operator text: truncated entry list");
    entries.push_back(t);
  }
  return from_triplets(dim, std::move(entries));
}

SparseOperator sparse_add(double alpha, const SparseOperator& a, double beta,
                          const SparseOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sparse_add: dimension mismatch");
  std::vector<Triplet> entries;
  entries.reserve(a.nnz() + b.nnz());
  for (std::uint64_t row = 0; row < a.dim(); ++row)
    for (std::uint64_t k = a.row_ptr()[row]; k < a.row_ptr()[row + 1]; ++k)
      entries.push_back({row, a.cols()[k], alpha * a.values()[k]});
  for (std::uint64_t row = 0; row < b.dim(); ++row)
    for (std::uint64_t k = b.row_ptr()[row]; k < b.row_ptr()[row + 1]; ++k)
      entries.push_back({row, b.cols()[k], beta * b.values()[k]});
  return SparseOperator::from_triplets(a.dim(), std::move(entries));
}

SparseOperator sparse_multiply(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("sparse_multiply: dimension mismatch");
  const std::uint64_t dim = a.dim();
  std::vector<Triplet> entries;
  std::vector<double> acc(dim, 0.0);
  std::vector<std::uint64_t> touched;
  for (std::uint64_t row = 0; row < dim; ++row) {
    touched.clear();
    for (std::uint64_t k = a.row_ptr()[row]; k < a.row_ptr()[row + 1]; ++k) {
      const std::uint64_t mid = a.cols()[k];
      const double av = a.values()[k];
      for (std::uint64_t j = b.row_ptr()[mid]; j < b.row_ptr()[mid + 1]; ++j) {
        const std::uint64_t col = b.cols()[j];
        if (acc[col] == 0.0) touched.push_back(col);
        acc[col] += av * b.values()[j];
      }
    }
    for (std::uint64_t col : touched) {
      if (acc[col] != 0.0) entries.push_back({row, col, acc[col]});
      acc[col] = 0.0;
    }
  }
  return SparseOperator::from_triplets(dim, std::move(entries));
}

double commutator_max_norm(const SparseOperator& a, const SparseOperator& b) {
  const SparseOperator ab = sparse_multiply(a, b);
  const SparseOperator ba = sparse_multiply(b, a);
  return sparse_add(1.0, ab, -1.0, ba).max_abs();
}

}  // namespace fredkin
