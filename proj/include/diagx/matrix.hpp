#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "diagx/errors.hpp"

namespace diagx {

using Complex = std::complex<double>;

namespace detail {

inline bool entry_finite(double v) { return std::isfinite(v); }
inline bool entry_finite(const Complex& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline double abs_of(double v) { return std::fabs(v); }
inline double abs_of(const Complex& v) { return std::abs(v); }

inline double conj_of(double v) { return v; }
inline Complex conj_of(const Complex& v) { return std::conj(v); }

}  // namespace detail

/// Dense row-major matrix over double or std::complex<double>.
/// Dimensions must be positive and every entry finite; both are enforced
/// at construction so downstream kernels never re-validate.
template <typename T>
class DenseMatrix {
 public:
  /// Empty placeholder (0x0); meaningful only as a member awaiting
  /// assignment — every sized constructor still enforces positive dims.
  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(check_dims(rows, cols), T{}) {}

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != check_dims(rows, cols)) {
      throw DimensionError("entry count " + std::to_string(data_.size()) +
                           " does not match " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
    validate_finite();
  }

  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    check_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw DimensionError("ragged initializer: expected " +
                             std::to_string(cols_) + " columns");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
    validate_finite();
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<T>& data() const { return data_; }

  DenseMatrix transposed() const {
    DenseMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  DenseMatrix scaled(T factor) const {
    DenseMatrix r = *this;
    for (auto& v : r.data_) v *= factor;
    r.validate_finite();
    return r;
  }

  T trace() const {
    require_square("trace");
    T s{};
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += detail::abs_of(v) * detail::abs_of(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, detail::abs_of(v));
    return m;
  }

  void require_square(const char* what) const {
    if (!is_square()) {
      throw DimensionError(std::string(what) + " requires a square matrix, got " +
                           std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("product shape mismatch: " + std::to_string(a.rows_) +
                           "x" + std::to_string(a.cols_) + " * " +
                           std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    }
    DenseMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    }
    return r;
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b, "sum");
    DenseMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }

  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b, "difference");
    DenseMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }

 private:
  static std::size_t check_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("matrix dimensions must be positive, got " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
    return rows * cols;
  }

  void require_same_shape(const DenseMatrix& other, const char* what) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw DimensionError(std::string(what) + " shape mismatch");
    }
  }

  void validate_finite() const {
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!detail::entry_finite(data_[i])) {
        throw NonFiniteError("non-finite entry at (" +
                             std::to_string(i / cols_) + "," +
                             std::to_string(i % cols_) + ")");
      }
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using CMatrix = DenseMatrix<Complex>;

/// Widen a real matrix to complex storage.
inline CMatrix to_complex(const Matrix& a) {
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Complex(a(i, j), 0.0);
  return r;
}

/// a - shift*I for square a.
template <typename T, typename S>
DenseMatrix<T> shifted_by(const DenseMatrix<T>& a, S shift) {
  a.require_square("shift");
  DenseMatrix<T> r = a;
  for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) -= shift;
  return r;
}

}  // namespace diagx
