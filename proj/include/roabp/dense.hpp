#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "roabp/exponent.hpp"
#include "roabp/matrix.hpp"
#include "roabp/shift_tuple.hpp"

namespace roabp {

/// Explicit coefficient map of an n-variate polynomial whose coefficients are
/// rows x cols matrices (1 x 1 for scalars) over T. Coefficients are stored
/// flattened row-major; zero coefficients are never stored.
template <class T>
class BasicDense {
 public:
  using Coefficient = std::vector<T>;

  explicit BasicDense(int n = 0, std::size_t rows = 1, std::size_t cols = 1) : n_(n), rows_(rows), cols_(cols) {}

  int num_vars() const noexcept { return n_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Dimension of the coefficient space's ambient algebra.
  std::size_t dim() const noexcept { return rows_ * cols_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::map<Exponent, Coefficient>& terms() const noexcept { return terms_; }

  /// Adds c to the coefficient of x^a.
  void add_term(const Exponent& a, const Coefficient& c);
  void add_term(const Exponent& a, const T& scalar) { add_term(a, Coefficient{scalar}); }
  void add_term(const Exponent& a, const Matrix<T>& m) { add_term(a, m.data()); }

  Coefficient coefficient(const Exponent& a) const;
  T scalar_coefficient(const Exponent& a) const;
  Matrix<T> matrix_coefficient(const Exponent& a) const { return Matrix<T>(rows_, cols_, coefficient(a)); }

  /// Largest exponent of any variable, 0 for the zero polynomial.
  int max_degree() const;

  BasicDense& operator+=(const BasicDense& o);
  BasicDense& operator-=(const BasicDense& o);
  BasicDense& operator*=(const T& s);

  friend BasicDense operator+(BasicDense a, const BasicDense& b) { return a += b; }
  friend BasicDense operator-(BasicDense a, const BasicDense& b) { return a -= b; }
  friend BasicDense operator*(BasicDense a, const T& s) { return a *= s; }
  friend BasicDense operator-(BasicDense a) { return a *= T(Fp(-1)); }

  friend bool operator==(const BasicDense&, const BasicDense&) = default;

 private:
  void check_compatible(const BasicDense& o) const;

  int n_;
  std::size_t rows_, cols_;
  std::map<Exponent, Coefficient> terms_;
};

using DensePoly = BasicDense<Fp>;
using TDensePoly = BasicDense<UniPoly>;

template <class T>
Matrix<T> evaluate(const BasicDense<T>& p, std::span<const T> point);

/// The coefficient polynomial of prod_{v in vars} x_v^{exps}: keeps the terms
/// whose exponents match on vars and zeroes those coordinates.
template <class T>
BasicDense<T> slice(const BasicDense<T>& p, std::span<const int> vars, std::span<const int> exps);

/// Entry (i, j) of a matrix-valued polynomial, as a scalar polynomial.
template <class T>
BasicDense<T> entry(const BasicDense<T>& p, std::size_t i, std::size_t j);

/// Matrix product of polynomials; exponent vectors add.
template <class T>
BasicDense<T> multiply(const BasicDense<T>& a, const BasicDense<T>& b);

TDensePoly lift(const DensePoly& p);
DensePoly evaluate_t(const TDensePoly& p, Fp t);

/// p(x + f) by expanding every monomial.
DensePoly shift_dense(const DensePoly& p, std::span<const Fp> f);
TDensePoly shift_dense(const DensePoly& p, const ShiftTuple& f);

/// One row per stored monomial (lexicographic), one column per flattened
/// coefficient entry.
template <class T>
Matrix<T> coefficient_matrix(const BasicDense<T>& p);

/// Human-readable sum of terms, e.g. "x1 + x1*x2 + x1^2" or "1 + x2".
std::string to_string(const DensePoly& p);
std::string to_string(const TDensePoly& p);

}  // namespace roabp
