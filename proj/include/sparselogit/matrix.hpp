#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparselogit {

using Vector = std::vector<double>;
using Index = std::size_t;

/// Thrown when a caller violates an operation's preconditions
/// (dimension mismatches, malformed storage, non-finite entries).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool all_finite(const Vector& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

/// m x n predictor matrix, dense row-major or compressed sparse row.
/// Immutable after construction; safe to share across threads.
class DesignMatrix {
 public:
  enum class Storage { dense, csr };

  static DesignMatrix dense(Index m, Index n, Vector values) {
    if (m < 1 || n < 1) throw ContractViolation("DesignMatrix: m and n must be >= 1");
    if (values.size() != m * n)
      throw ContractViolation("DesignMatrix: dense storage needs m*n values");
    if (!all_finite(values))
      throw ContractViolation("DesignMatrix: non-finite entry");
    DesignMatrix a;
    a.rows_ = m;
    a.cols_ = n;
    a.storage_ = Storage::dense;
    a.values_ = std::move(values);
    return a;
  }

  static DesignMatrix csr(Index m, Index n, std::vector<Index> row_offsets,
                          std::vector<Index> col_indices, Vector values) {
    if (m < 1 || n < 1) throw ContractViolation("DesignMatrix: m and n must be >= 1");
    if (row_offsets.size() != m + 1 || row_offsets.front() != 0)
      throw ContractViolation("DesignMatrix: bad CSR row offsets");
    if (row_offsets.back() != values.size() || col_indices.size() != values.size())
      throw ContractViolation("DesignMatrix: CSR offsets/indices/values disagree");
    for (Index i = 0; i < m; ++i) {
      if (row_offsets[i] > row_offsets[i + 1])
        throw ContractViolation("DesignMatrix: CSR row offsets must be nondecreasing");
      for (Index p = row_offsets[i]; p < row_offsets[i + 1]; ++p) {
        if (col_indices[p] >= n)
          throw ContractViolation("DesignMatrix: CSR column index out of range");
        if (p > row_offsets[i] && col_indices[p] <= col_indices[p - 1])
          throw ContractViolation("DesignMatrix: CSR column indices must be strictly increasing per row");
      }
    }
    if (!all_finite(values))
      throw ContractViolation("DesignMatrix: non-finite entry");
    DesignMatrix a;
    a.rows_ = m;
    a.cols_ = n;
    a.storage_ = Storage::csr;
    a.row_offsets_ = std::move(row_offsets);
    a.col_indices_ = std::move(col_indices);
    a.values_ = std::move(values);
    return a;
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Storage storage() const { return storage_; }
  Index nnz() const {
    return storage_ == Storage::dense ? rows_ * cols_ : values_.size();
  }

  /// u = A * theta.
  Vector mat_vec(const Vector& theta) const {
    if (theta.size() != cols_)
      throw ContractViolation("mat_vec: theta has wrong length");
    Vector u(rows_, 0.0);
    if (storage_ == Storage::dense) {
      for (Index i = 0; i < rows_; ++i) {
        const double* row = values_.data() + i * cols_;
        double acc = 0.0;
        for (Index j = 0; j < cols_; ++j) acc += row[j] * theta[j];
        u[i] = acc;
      }
    } else {
      for (Index i = 0; i < rows_; ++i) {
        double acc = 0.0;
        for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
          acc += values_[p] * theta[col_indices_[p]];
        u[i] = acc;
      }
    }
    return u;
  }

  /// r = A^T * s.
  Vector mat_tvec(const Vector& s) const {
    if (s.size() != rows_)
      throw ContractViolation("mat_tvec: s has wrong length");
    Vector r(cols_, 0.0);
    if (storage_ == Storage::dense) {
      for (Index i = 0; i < rows_; ++i) {
        const double* row = values_.data() + i * cols_;
        const double si = s[i];
        for (Index j = 0; j < cols_; ++j) r[j] += row[j] * si;
      }
    } else {
      for (Index i = 0; i < rows_; ++i) {
        const double si = s[i];
        for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
          r[col_indices_[p]] += values_[p] * si;
      }
    }
    return r;
  }

  /// Induced norm sup_{|s|_1 = 1} |A^T s|_2 = max row Euclidean norm.
  /// Single pass over the stored entries.
  double operator_norm() const {
    double best_sq = 0.0;
    if (storage_ == Storage::dense) {
      for (Index i = 0; i < rows_; ++i) {
        const double* row = values_.data() + i * cols_;
        double acc = 0.0;
        for (Index j = 0; j < cols_; ++j) acc += row[j] * row[j];
        if (acc > best_sq) best_sq = acc;
      }
    } else {
      for (Index i = 0; i < rows_; ++i) {
        double acc = 0.0;
        for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
          acc += values_[p] * values_[p];
        if (acc > best_sq) best_sq = acc;
      }
    }
    return std::sqrt(best_sq);
  }

  double at(Index i, Index j) const {
    if (storage_ == Storage::dense) return values_[i * cols_ + j];
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      if (col_indices_[p] == j) return values_[p];
    return 0.0;
  }

 private:
  DesignMatrix() = default;
  Index rows_ = 0;
  Index cols_ = 0;
  Storage storage_ = Storage::dense;
  Vector values_;
  std::vector<Index> row_offsets_;
  std::vector<Index> col_indices_;
};

/// Design matrix plus binary response, the full problem data.
struct Dataset {
  DesignMatrix design;
  Vector y;  // entries exactly 0 or 1

  Dataset(DesignMatrix a, Vector response)
      : design(std::move(a)), y(std::move(response)) {
    if (y.size() != design.rows())
      throw ContractViolation("Dataset: response length != row count");
    for (double yi : y) {
      if (yi != 0.0 && yi != 1.0)
        throw ContractViolation("Dataset: response entries must be 0 or 1");
    }
  }

  Index m() const { return design.rows(); }
  Index n() const { return design.cols(); }
};

}  // namespace sparselogit
