#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "roabp/matrix.hpp"

namespace roabp {

/// Rank over F_p by Gaussian elimination.
std::size_t rank(FieldMatrix m);

/// Row-echelon basis grown one vector at a time. Vectors that raise the rank
/// become members; express() writes a vector in terms of the members, in the
/// order they were accepted.
class RowBasis {
 public:
  explicit RowBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Adds v if it is outside the current span. Returns whether it was added.
  bool insert(std::span<const Fp> v);
  bool contains(std::span<const Fp> v) const;
  /// Coefficients over the members, or nullopt when v is outside the span.
  std::optional<std::vector<Fp>> express(std::span<const Fp> v) const;

 private:
  struct Row {
    std::vector<Fp> entries;  // pivot entry normalised to 1
    std::size_t pivot;
    std::vector<Fp> combination;  // entries as a combination of members
  };
  // Reduces v in place; returns the member combination subtracted.
  std::vector<Fp> reduce(std::vector<Fp>& v) const;
  void check_dim(std::size_t n) const;

  std::size_t dim_;
  std::vector<Row> rows_;
};

/// gamma with target = sum_i gamma_i * basis[i], or nullopt. Dependent basis
/// rows receive coefficient zero.
std::optional<std::vector<Fp>> solve_in_span(std::span<const Fp> target,
                                             const std::vector<std::vector<Fp>>& basis);

/// Rank over F_p(t) by fraction-free elimination.
std::size_t bareiss_rank(TMatrix m);

/// Rank over F_p(t). Bareiss elimination decides; the result is confirmed by
/// evaluating at t = 0, 1, ..., rank * maxdeg. Throws FieldTooSmall if F_p
/// cannot supply those points, std::logic_error if the two disagree.
std::size_t polymatrix_rank(const TMatrix& m);

}  // namespace roabp
