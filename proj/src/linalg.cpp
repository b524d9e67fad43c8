#include "roabp/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace roabp {

std::size_t rank(FieldMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    }
    const Fp inv = m(r, c).inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      const Fp f = m(i, c) * inv;
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

void RowBasis::check_dim(std::size_t n) const {
  if (n != dim_) {
    throw DimensionMismatch("vector of length " + std::to_string(n) + " against basis of dimension " +
                            std::to_string(dim_));
  }
}

std::vector<Fp> RowBasis::reduce(std::vector<Fp>& v) const {
  std::vector<Fp> comb(rows_.size());
  for (const Row& row : rows_) {
    const Fp f = v[row.pivot];
    if (f.is_zero()) continue;
    for (std::size_t j = row.pivot; j < dim_; ++j) v[j] -= f * row.entries[j];
    for (std::size_t m = 0; m < row.combination.size(); ++m) comb[m] += f * row.combination[m];
  }
  return comb;
}

bool RowBasis::insert(std::span<const Fp> v) {
  check_dim(v.size());
  std::vector<Fp> w(v.begin(), v.end());
  std::vector<Fp> comb = reduce(w);
  auto it = std::find_if(w.begin(), w.end(), [](Fp x) { return !x.is_zero(); });
  if (it == w.end()) return false;
  const auto pivot = static_cast<std::size_t>(it - w.begin());
  // w = v - sum comb_m * member_m; the new member is v itself.
  for (auto& c : comb) c = -c;
  comb.push_back(Fp(1));
  const Fp inv = w[pivot].inverse();
  for (auto& x : w) x *= inv;
  for (auto& c : comb) c *= inv;
  rows_.push_back(Row{std::move(w), pivot, std::move(comb)});
  return true;
}

bool RowBasis::contains(std::span<const Fp> v) const {
  check_dim(v.size());
  std::vector<Fp> w(v.begin(), v.end());
  reduce(w);
  return std::all_of(w.begin(), w.end(), [](Fp x) { return x.is_zero(); });
}

std::optional<std::vector<Fp>> RowBasis::express(std::span<const Fp> v) const {
  check_dim(v.size());
  std::vector<Fp> w(v.begin(), v.end());
  std::vector<Fp> comb = reduce(w);
  if (!std::all_of(w.begin(), w.end(), [](Fp x) { return x.is_zero(); })) return std::nullopt;
  return comb;
}

std::optional<std::vector<Fp>> solve_in_span(std::span<const Fp> target,
                                             const std::vector<std::vector<Fp>>& basis) {
  RowBasis rb(target.size());
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (rb.insert(basis[i])) members.push_back(i);
  }
  auto comb = rb.express(target);
  if (!comb) return std::nullopt;
  std::vector<Fp> gamma(basis.size());
  for (std::size_t m = 0; m < members.size(); ++m) gamma[members[m]] = (*comb)[m];
  return gamma;
}

std::size_t bareiss_rank(TMatrix m) {
  if (m.rows() > m.cols()) m = m.transpose();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  UniPoly prev(Fp(1));
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    }
    const UniPoly p = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const UniPoly f = m(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(i, j) = exact_div(p * m(i, j) - f * m(r, j), prev);
      }
      m(i, c) = UniPoly{};
    }
    prev = p;
    ++r;
  }
  return r;
}

std::size_t polymatrix_rank(const TMatrix& m) {
  const std::size_t r = bareiss_rank(m);
  if (r == 0) return 0;
  const std::uint64_t points = static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(max_degree(m)) + 1;
  field().require_elements(points, "rank cross-check over F(t)");
  std::size_t best = 0;
  for (std::uint64_t x = 0; x < points && best < r; ++x) {
    best = std::max(best, rank(evaluate_at(m, Fp(x))));
  }
  if (best != r) {
    throw std::logic_error("rank over F(t): elimination gave " + std::to_string(r) + " but evaluation gave " +
                           std::to_string(best));
  }
  return r;
}

}  // namespace roabp
