#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "roabp/dense.hpp"
#include "roabp/nisan.hpp"
#include "roabp/roabp.hpp"

namespace roabp {

struct PitOptions {
  /// Largest rows * cols allowed for any layer of a dependency combination,
  /// measured before width reduction.
  std::size_t width_cap_entries = 10'000;
  /// Shrink every dependency combination to its cut ranks before recursing.
  bool reduce_widths = true;
  /// Worker threads for the top-level dependency checks.
  unsigned jobs = 1;
};

struct PitStats {
  /// Dependencies verified at each recursion depth.
  std::vector<std::size_t> dependencies_per_depth;
  /// Widest combination built, before reduction.
  std::size_t max_width = 0;

  void merge(const PitStats& o);
};

struct PitReport {
  enum class Reason { none, dependency, final_scalar };

  /// True when the identity holds (equivalent, or the sum vanishes).
  bool holds = true;
  Reason reason = Reason::none;
  /// Cut of the first failing dependency.
  std::size_t level = 0;
  /// Failing dependency or final monomial, over all n variables.
  Exponent monomial;
  /// Final coefficients compared: the profiled side, then the other side.
  Fp expected;
  Fp actual;
};

PitReport equivalence_report(const Roabp& a, const Roabp& b, const PitOptions& opts = {}, PitStats* stats = nullptr);
bool equivalence_test(const Roabp& a, const Roabp& b, const PitOptions& opts = {});

/// Whether the summands add up to zero. Throws RecursionBudgetExceeded when a
/// combination layer would exceed opts.width_cap_entries.
PitReport sum_zero_report(std::span<const Roabp> summands, const PitOptions& opts = {}, PitStats* stats = nullptr);
bool sum_zero_test(std::span<const Roabp> summands, const PitOptions& opts = {});

/// Target that is a sum of scalar programs in arbitrary orders.
class SumTarget : public PolynomialTarget {
 public:
  explicit SumTarget(std::vector<Roabp> summands, PitOptions opts = {})
      : summands_(std::move(summands)), opts_(opts) {}
  bool dependency_holds(const SpanningProfile& profile, std::size_t level, std::size_t dep_index) const override;
  Fp coefficient(const Exponent& full) const override;

 private:
  std::vector<Roabp> summands_;
  PitOptions opts_;
};

/// A and B written over a common row-output program R on the first k variables
/// of A's order: A = R * left, B = R * right, with gamma * left = 0 and
/// gamma * right != 0.
struct Decomposition {
  std::size_t level;
  /// The first dependency of A that B breaks, as a prefix in A's order.
  Exponent dependency;
  Roabp common;
  std::vector<DensePoly> left;
  std::vector<DensePoly> right;
  std::vector<Fp> gamma;
  /// I_s tensor [1 x ... x^d] for the cut variable.
  PolyMatrix<Fp> expander;
};

/// B follows every dependency of A, so B has a program of A's width and order.
struct Representable {};

std::variant<Decomposition, Representable> decompose(const Roabp& a, std::span<const Roabp> b_summands,
                                                     const PitOptions& opts = {});

}  // namespace roabp
