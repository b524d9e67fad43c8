#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "roabp/matrix.hpp"

namespace roabp {

/// Matrix whose entries are univariate polynomials in one layer variable,
/// stored as a list of coefficient matrices by degree. The list has no
/// trailing zero matrix, so the zero matrix polynomial has an empty list.
template <class T>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  /// coeffs[j] is the coefficient of x^j; all must share a shape.
  explicit PolyMatrix(std::vector<Matrix<T>> coeffs) {
    if (coeffs.empty()) throw DimensionMismatch("PolyMatrix needs at least one coefficient matrix");
    rows_ = coeffs.front().rows();
    cols_ = coeffs.front().cols();
    for (const auto& m : coeffs) {
      if (m.rows() != rows_ || m.cols() != cols_) throw DimensionMismatch("coefficient matrices differ in shape");
    }
    coeffs_ = std::move(coeffs);
    trim();
  }

  static PolyMatrix constant(Matrix<T> m) { return PolyMatrix(std::vector<Matrix<T>>{std::move(m)}); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// -1 for the zero matrix.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Matrix<T>>& coefficients() const noexcept { return coeffs_; }

  Matrix<T> coefficient(int j) const {
    if (j >= 0 && static_cast<std::size_t>(j) < coeffs_.size()) return coeffs_[static_cast<std::size_t>(j)];
    return Matrix<T>(rows_, cols_);
  }

  void set_coefficient(int j, Matrix<T> m) {
    if (m.rows() != rows_ || m.cols() != cols_) throw DimensionMismatch("coefficient shape differs from layer");
    const auto idx = static_cast<std::size_t>(j);
    if (coeffs_.size() <= idx) coeffs_.resize(idx + 1, Matrix<T>(rows_, cols_));
    coeffs_[idx] = std::move(m);
    trim();
  }

  Matrix<T> operator()(const T& x) const {
    Matrix<T> acc(rows_, cols_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(cols_, rows_);
    for (const auto& m : coeffs_) t.coeffs_.push_back(m.transpose());
    return t;
  }

  PolyMatrix& operator*=(const T& s) {
    for (auto& m : coeffs_) m *= s;
    trim();
    return *this;
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Matrix<T>> coeffs_;
};

}  // namespace roabp
