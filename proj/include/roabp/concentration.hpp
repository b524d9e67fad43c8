#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "roabp/dense.hpp"
#include "roabp/errors.hpp"
#include "roabp/shift_tuple.hpp"

namespace roabp {

struct WeightAssignment {
  std::vector<int> weights;

  /// sum_i weights[i] * a[i].
  std::int64_t of(const Exponent& a) const;
  friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;
};

struct IsolationCertificate {
  /// The isolated monomials, by increasing weight.
  std::vector<Exponent> basis;
  std::vector<std::int64_t> basis_weights;
  struct Expression {
    Exponent monomial;
    /// Coefficients over the lighter prefix of basis.
    std::vector<Fp> coefficients;
  };
  /// One entry per supported monomial outside basis.
  std::vector<Expression> expressions;
};

struct IsolationFailure {
  std::int64_t weight;
  /// Monomials of that weight whose coefficients are new to the lighter span.
  std::vector<Exponent> candidates;
};

/// Greedy check over weight classes in increasing order.
std::variant<IsolationCertificate, IsolationFailure> verify_isolating(const WeightAssignment& w, const DensePoly& p);

struct IsolationSearch {
  std::uint64_t seed = 1;
  std::size_t random_tries = 2000;
};

/// Weights in [1, bound]^n: first r^i mod q for primes q <= bound + 1 (largest
/// first) and radices r from d + 1 upward, then seeded uniform draws. The zero
/// polynomial gets all-zero weights.
std::optional<WeightAssignment> find_isolating(const DensePoly& p, int bound, const IsolationSearch& search = {});

/// Smallest l such that the coefficients of support < l span all
/// coefficients; 1 for the zero polynomial. Over F_p(t) for TDensePoly.
int concentration_level(const DensePoly& p);
int concentration_level(const TDensePoly& p);

/// p(x + t^w) by the binomial transfer formula.
TDensePoly shift_by_weights(const DensePoly& p, const WeightAssignment& w);
ShiftTuple weights_to_shift(const WeightAssignment& w);

/// Rows indexed by exponents of support < ell, columns by all of {0..d}^n,
/// entry prod_i binom(b_i, a_i).
struct TransferMatrix {
  std::vector<Exponent> row_exponents;
  std::vector<Exponent> col_exponents;
  FieldMatrix matrix;
};
TransferMatrix transfer_matrix(int n, int d, int ell, std::size_t budget = 1'000'000);

/// Exponents of {0..d}^n with support < ell, lexicographic.
std::vector<Exponent> low_support_exponents(int n, int d, int ell);

/// Checks C' = D^-1 T D C entrywise for p shifted by t^w, with C, C' the
/// coefficient matrices over all of {0..d}^n and D = diag(t^{w(a)}), and that
/// rank C' = rank C.
bool transfer_identity_holds(const DensePoly& p, const WeightAssignment& w, int d);

/// Whether p(x + 1) has a nonzero coefficient of support < ell. Requires p
/// nonzero with at most 2^ell - 1 terms.
bool sparse_shift_check(const DensePoly& p, int ell);

/// Lagrange interpolation of a family of shifts, then y = t^collapse.
struct LagrangeShift {
  std::vector<ShiftTuple> family;
  std::vector<Fp> alphas;
  /// Lagrange basis polynomials in y, one per family member.
  std::vector<UniPoly> basis;
  int collapse_exponent;
  ShiftTuple shift;

  /// The interpolant before collapsing, at y = value.
  ShiftTuple at_y(Fp value) const;
};
/// rank_bound is the dimension k' of the coefficient space; the collapse uses
/// y = t^{k' n d D + 1} with D the largest degree in the family (at least 1).
LagrangeShift lagrange_combine(std::vector<ShiftTuple> family, std::vector<Fp> alphas, int d, int rank_bound = 1);

/// Points h + f(t) for h in {0,1..d}^n of support < ell, t outer, h inner.
std::vector<std::vector<Fp>> hitting_set(int n, int d, int ell, const ShiftTuple& f, std::span<const Fp> t_values);
/// t_count * sum_{j < ell} binom(n, j) d^j.
std::uint64_t hitting_set_size(int n, int d, int ell, std::size_t t_count);

/// W = (d+1)(2w)^{2^{c-1}}, ell = ceil(log2(W^2 + 1)), support bound c * ell.
struct SumParameters {
  std::uint64_t width_bound;
  int ell;
  int support_bound;
};
/// Throws std::overflow_error when W does not fit in 63 bits.
SumParameters sum_parameters(std::uint64_t w, int d, int c);

/// ceil(log2(k + 1)).
int ceil_log2_plus_one(std::uint64_t k);

using Evaluator = std::function<Fp(std::span<const Fp>)>;

struct BlackboxPlan {
  int n = 0;
  int d = 0;
  SumParameters params{};
  /// Support bound actually used for the grid (params.support_bound unless overridden).
  int support_bound = 0;
  std::vector<ShiftTuple> shifts;
  std::vector<Fp> t_values;

  std::uint64_t grid_size() const;
  std::uint64_t planned_evaluations() const;
};

BlackboxPlan make_blackbox_plan(int n, int d, std::uint64_t w, int c, std::vector<ShiftTuple> shifts,
                                std::vector<Fp> t_values, std::optional<int> support_bound = std::nullopt);

/// 1, 2, ..., count; enough to separate a nonzero polynomial of t-degree < count.
std::vector<Fp> default_t_values(std::size_t count);
/// Number of t values needed for a polynomial of individual degree d in n
/// variables shifted by f: n * d * deg f + 1.
std::size_t required_t_values(int n, int d, const ShiftTuple& f);

struct BlackboxVerdict {
  bool nonzero = false;
  std::uint64_t evaluations = 0;
  std::vector<Fp> witness;
};

/// Queries eval over the plan's shifted grids and stops at the first nonzero
/// value. Throws BudgetExceeded if the plan needs more than budget queries.
BlackboxVerdict blackbox_sum_pit(const Evaluator& eval, const BlackboxPlan& plan, std::uint64_t budget);

/// Whether shifting by t^w leaves p concentrated within ceil(log2(k + 1)),
/// k the coefficient dimension. Requires w to isolate a basis of p.
bool isolation_to_concentration_check(const DensePoly& p, const WeightAssignment& w);

/// Isolating weights in [1, bound]^n whose shift makes p concentrated within
/// support_bound, or nullopt.
std::optional<WeightAssignment> certify_concentrating_shift(const DensePoly& p, int support_bound, int bound,
                                                            const IsolationSearch& search = {});

/// sum_{i,j} alpha(i,j) p(i,j).
DensePoly dot_product(const DensePoly& p, const FieldMatrix& alpha);

}  // namespace roabp
