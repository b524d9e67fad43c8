#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "roabp/dense.hpp"
#include "roabp/errors.hpp"
#include "roabp/exponent.hpp"
#include "roabp/poly_matrix.hpp"
#include "roabp/shift_tuple.hpp"

namespace roabp {

enum class Shape { scalar, row, column, matrix };

std::string to_string(Shape s);

/// Product of univariate matrix layers D_1(x_{order[0]}) ... D_m(x_{order[m-1]})
/// over n variables with individual degree at most d. Usually m = n and order is
/// a permutation of 0..n-1; m < n describes a polynomial that does not depend on
/// the remaining variables. Layer shapes may vary; width() is the largest
/// dimension that occurs.
template <class T>
class BasicRoabp {
 public:
  BasicRoabp(int n, int d, std::vector<int> order, std::vector<PolyMatrix<T>> layers);

  int num_vars() const noexcept { return n_; }
  int degree_bound() const noexcept { return d_; }
  const std::vector<int>& order() const noexcept { return order_; }
  const std::vector<PolyMatrix<T>>& layers() const noexcept { return layers_; }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  std::size_t width() const noexcept;
  std::size_t rows() const noexcept { return layers_.front().rows(); }
  std::size_t cols() const noexcept { return layers_.back().cols(); }
  Shape shape() const noexcept;
  bool is_scalar() const noexcept { return rows() == 1 && cols() == 1; }
  /// Largest rows * cols over all layers.
  std::size_t max_layer_entries() const noexcept;

  Matrix<T> evaluate(std::span<const T> point) const;
  /// The coefficient of x^a as a product of per-layer coefficient matrices.
  Matrix<T> coeff(const Exponent& a) const;
  /// coeff() for scalar programs.
  T scalar_coeff(const Exponent& a) const { return coeff(a)(0, 0); }

  friend bool operator==(const BasicRoabp&, const BasicRoabp&) = default;

 private:
  int n_;
  int d_;
  std::vector<int> order_;
  std::vector<PolyMatrix<T>> layers_;
};

using Roabp = BasicRoabp<Fp>;
/// Programs whose layer coefficients are polynomials in t, e.g. after a shift
/// by polynomials.
using TRoabp = BasicRoabp<UniPoly>;

inline constexpr std::size_t kDefaultDenseBudget = 1'000'000;

/// Throws BudgetExceeded when (d+1)^layers exceeds the budget.
template <class T>
BasicDense<T> expand_dense(const BasicRoabp<T>& r, std::size_t budget = kDefaultDenseBudget);

/// The coefficient of prod x_{vars[i]}^{exps[i]}, as a program of the same
/// shape and order in which those variables' layers are constant.
template <class T>
BasicRoabp<T> coeff_operator(const BasicRoabp<T>& r, std::span<const int> vars, std::span<const int> exps);

/// r(x + f) for constant f.
Roabp shift(const Roabp& r, std::span<const Fp> f);
/// r(x + f(t)); layer coefficients become polynomials in t.
TRoabp shift(const Roabp& r, const ShiftTuple& f);
TRoabp shift(const TRoabp& r, const ShiftTuple& f);

/// sum_i gammas[i] * rs[i] for scalar programs sharing n, d and order. Width is
/// the sum of the widths.
Roabp linear_combination(std::span<const Roabp> rs, std::span<const Fp> gammas);

/// -r, by negating the first layer.
template <class T>
BasicRoabp<T> negate(const BasicRoabp<T>& r);

TRoabp lift(const Roabp& r);
/// Substitutes t = t0 in every layer.
Roabp evaluate_t(const TRoabp& r, Fp t0);
int max_t_degree(const TRoabp& r);

/// The same polynomial read in the reverse variable order: layers reversed and
/// transposed.
template <class T>
BasicRoabp<T> reverse_transpose(const BasicRoabp<T>& r);

/// sum_{i,j} alpha(i,j) * r(i,j) for a matrix-valued r, as a scalar program of
/// width rows * cols.
Roabp dot_product(const Roabp& r, const FieldMatrix& alpha);

/// A width-1 program for the product prod_i f_i(x_{order[i]}).
Roabp product_of_univariates(int n, int d, std::vector<int> order, const std::vector<UniPoly>& factors);

}  // namespace roabp
