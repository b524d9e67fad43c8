#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "roabp/dense.hpp"
#include "roabp/roabp.hpp"

namespace roabp {

/// One cut of a spanning profile. Prefixes are exponents on the first k
/// variables of the profile's order, indexed by position in that order.
struct ProfileLevel {
  std::vector<Exponent> span;
  /// Position of each span member inside dep.
  std::vector<std::size_t> span_positions;
  /// span of the previous level times {0..d}, lexicographic.
  std::vector<Exponent> dep;
  /// Coefficient vector of each dep member.
  std::vector<std::vector<Fp>> vectors;
  /// Coefficients of each dep member over span.
  std::vector<std::vector<Fp>> gamma;

  bool is_span_member(std::size_t dep_index) const;
};

struct SpanningProfile {
  int n = 0;
  int d = 0;
  std::vector<int> order;
  /// levels[0] is the empty prefix; levels[k] covers order[0..k).
  std::vector<ProfileLevel> levels;
  /// Coefficient of the monomial named by the single final span member.
  Fp final_scalar;

  std::size_t depth() const noexcept { return levels.size() - 1; }
  /// Largest span size.
  std::size_t width() const noexcept;
  std::size_t dependency_count() const noexcept;
  /// The n-variate exponent that agrees with prefix on order[0..k) and is 0
  /// elsewhere.
  Exponent full_exponent(const Exponent& prefix) const;
  /// Variables of the first k positions.
  std::vector<int> prefix_vars(std::size_t k) const;
  const Exponent& final_monomial_prefix() const { return levels.back().span.front(); }
};

/// Profile of a scalar program, built greedily in its own order.
SpanningProfile build_profile(const Roabp& r);
/// Profile of a scalar dense polynomial in the given order (a permutation of
/// 0..n-1), using the flattened coefficient polynomials as vectors.
SpanningProfile build_profile(const DensePoly& p, std::vector<int> order, int d);

bool zero_test(const Roabp& r);
/// An exponent with nonzero coefficient, or nullopt when r is zero.
std::optional<Exponent> nonzero_witness(const Roabp& r);

/// Source of dependency verdicts for reconstruction.
class PolynomialTarget {
 public:
  virtual ~PolynomialTarget() = default;
  /// Whether the target's coefficient polynomials obey dependency dep_index of
  /// the given level.
  virtual bool dependency_holds(const SpanningProfile& profile, std::size_t level, std::size_t dep_index) const = 0;
  /// Coefficient of the given monomial.
  virtual Fp coefficient(const Exponent& full) const = 0;
};

/// Target given by a scalar program, read in any order.
class RoabpTarget : public PolynomialTarget {
 public:
  explicit RoabpTarget(Roabp r) : r_(std::move(r)) {}
  bool dependency_holds(const SpanningProfile& profile, std::size_t level, std::size_t dep_index) const override;
  Fp coefficient(const Exponent& full) const override { return r_.scalar_coeff(full); }

 private:
  Roabp r_;
};

/// Target given by its dense expansion.
class DenseTarget : public PolynomialTarget {
 public:
  explicit DenseTarget(DensePoly p) : p_(std::move(p)) {}
  bool dependency_holds(const SpanningProfile& profile, std::size_t level, std::size_t dep_index) const override;
  Fp coefficient(const Exponent& full) const override { return p_.scalar_coefficient(full); }

 private:
  DensePoly p_;
};

struct NotRepresentable {
  std::size_t level;
  /// The failing dependency as a prefix in the profile's order.
  Exponent dependency;
};

/// Rebuilds the target in the profile's order with one layer per level and
/// width equal to the profile's width, after checking every dependency.
std::variant<Roabp, NotRepresentable> reconstruct(const SpanningProfile& profile, const PolynomialTarget& target);
/// Rebuilds with the profile's own final scalar and no checks; valid when the
/// profile was built from the polynomial itself.
Roabp reconstruct_trusted(const SpanningProfile& profile);
/// Same, with an explicit final scalar.
Roabp reconstruct_trusted(const SpanningProfile& profile, Fp final_scalar);

/// Layer polynomials of the rebuilt program before the final scalar is applied.
std::vector<PolyMatrix<Fp>> profile_layers(const SpanningProfile& profile);

/// r_{(y_k,b)} - sum_a gamma_a r_{(y_k,a)} for dependency dep_index at the
/// given level, where y_k are the profile's first k variables. r may read its
/// variables in any order.
Roabp dependency_combination(const Roabp& r, const SpanningProfile& profile, std::size_t level,
                             std::size_t dep_index);

/// Product of the first k layers' coefficient matrices at the given prefix.
FieldMatrix prefix_coefficient(const Roabp& r, std::size_t k, const Exponent& prefix);

/// An equivalent scalar program in the same order whose width at every cut is
/// the rank of that cut.
Roabp reduce_width(const Roabp& r);

/// A program in the given order computing p.
Roabp encode_dense(const DensePoly& p, std::vector<int> order, int d);

}  // namespace roabp
