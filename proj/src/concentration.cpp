#include "roabp/concentration.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "roabp/linalg.hpp"

namespace roabp {

std::int64_t WeightAssignment::of(const Exponent& a) const {
  if (a.size() != weights.size()) throw DimensionMismatch("weight vector length differs from n");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<std::int64_t>(weights[i]) * a[i];
  return s;
}

std::variant<IsolationCertificate, IsolationFailure> verify_isolating(const WeightAssignment& w, const DensePoly& p) {
  std::map<std::int64_t, std::vector<const std::pair<const Exponent, std::vector<Fp>>*>> classes;
  for (const auto& term : p.terms()) classes[w.of(term.first)].push_back(&term);

  IsolationCertificate cert;
  RowBasis span(p.dim());
  for (const auto& [weight, members] : classes) {
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!span.contains(members[i]->second)) fresh.push_back(i);
    }
    if (fresh.size() >= 2) {
      IsolationFailure fail{weight, {}};
      for (std::size_t i : fresh) fail.candidates.push_back(members[i]->first);
      return fail;
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!fresh.empty() && fresh.front() == i) continue;
      cert.expressions.push_back({members[i]->first, *span.express(members[i]->second)});
    }
    if (!fresh.empty()) {
      const auto* term = members[fresh.front()];
      span.insert(term->second);
      cert.basis.push_back(term->first);
      cert.basis_weights.push_back(weight);
    }
  }
  return cert;
}

namespace {

bool is_isolating(const WeightAssignment& w, const DensePoly& p) {
  return std::holds_alternative<IsolationCertificate>(verify_isolating(w, p));
}

}  // namespace

std::optional<WeightAssignment> find_isolating(const DensePoly& p, int bound, const IsolationSearch& search) {
  if (bound < 1) throw PreconditionViolation("weight bound must be at least 1");
  const auto n = static_cast<std::size_t>(p.num_vars());
  if (p.is_zero()) return WeightAssignment{std::vector<int>(n, 0)};
  const int d = std::max(1, p.max_degree());

  // Structured candidates: w(i) = r^i mod q.
  constexpr int kRadicesPerPrime = 8;
  for (int q = bound + 1; q >= 2; --q) {
    if (!is_prime(static_cast<std::uint64_t>(q))) continue;
    std::vector<int> radices;
    for (int r = d + 1; r < q && r < d + 1 + kRadicesPerPrime; ++r) radices.push_back(r);
    for (int r = 2; r <= d && r < q; ++r) radices.push_back(r);
    if (q == 2 || radices.empty()) radices.push_back(1);
    for (int r : radices) {
      WeightAssignment w{std::vector<int>(n)};
      std::int64_t cur = 1 % q;
      for (std::size_t i = 0; i < n; ++i) {
        w.weights[i] = static_cast<int>(cur);
        cur = cur * r % q;
      }
      if (std::find(w.weights.begin(), w.weights.end(), 0) != w.weights.end()) continue;
      if (is_isolating(w, p)) return w;
    }
  }
  std::mt19937_64 rng(search.seed);
  std::uniform_int_distribution<int> pick(1, bound);
  for (std::size_t attempt = 0; attempt < search.random_tries; ++attempt) {
    WeightAssignment w{std::vector<int>(n)};
    for (auto& x : w.weights) x = pick(rng);
    if (is_isolating(w, p)) return w;
  }
  return std::nullopt;
}

int concentration_level(const DensePoly& p) {
  if (p.is_zero()) return 1;
  RowBasis all(p.dim());
  std::vector<std::vector<const std::vector<Fp>*>> tiers(static_cast<std::size_t>(p.num_vars()) + 1);
  for (const auto& [a, c] : p.terms()) {
    all.insert(c);
    tiers[static_cast<std::size_t>(support(a))].push_back(&c);
  }
  RowBasis low(p.dim());
  for (std::size_t s = 0; s < tiers.size(); ++s) {
    for (const auto* c : tiers[s]) low.insert(*c);
    if (low.rank() == all.rank()) return static_cast<int>(s) + 1;
  }
  return p.num_vars() + 1;
}

int concentration_level(const TDensePoly& p) {
  if (p.is_zero()) return 1;
  std::vector<std::pair<int, const std::vector<UniPoly>*>> rows;
  for (const auto& [a, c] : p.terms()) rows.emplace_back(support(a), &c);
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  auto rank_below = [&](int ell) {
    std::vector<UniPoly> data;
    std::size_t count = 0;
    for (const auto& [s, c] : rows) {
      if (s >= ell) break;
      data.insert(data.end(), c->begin(), c->end());
      ++count;
    }
    return count == 0 ? std::size_t{0} : polymatrix_rank(TMatrix(count, p.dim(), std::move(data)));
  };
  const std::size_t total = rank_below(p.num_vars() + 1);
  for (int ell = 1; ell <= p.num_vars(); ++ell) {
    if (rank_below(ell) == total) return ell;
  }
  return p.num_vars() + 1;
}

namespace {

// Calls fn(a) for every a <= b entrywise, lexicographically.
template <class Fn>
void for_each_below(const Exponent& b, Fn&& fn) {
  Exponent a(b.size(), 0);
  while (true) {
    fn(static_cast<const Exponent&>(a));
    std::size_t i = b.size();
    while (i > 0 && a[i - 1] == b[i - 1]) {
      a[i - 1] = 0;
      --i;
    }
    if (i == 0) return;
    ++a[i - 1];
  }
}

Fp binomial_product(const Exponent& b, const Exponent& a) {
  Fp acc(1);
  for (std::size_t i = 0; i < a.size(); ++i) acc *= binomial(static_cast<unsigned>(b[i]), static_cast<unsigned>(a[i]));
  return acc;
}

void require_nonnegative(const WeightAssignment& w) {
  for (int x : w.weights) {
    if (x < 0) throw PreconditionViolation("weights must be non-negative");
  }
}

}  // namespace

TDensePoly shift_by_weights(const DensePoly& p, const WeightAssignment& w) {
  require_nonnegative(w);
  if (w.weights.size() != static_cast<std::size_t>(p.num_vars())) {
    throw DimensionMismatch("one weight per variable is needed");
  }
  TDensePoly out(p.num_vars(), p.rows(), p.cols());
  for (const auto& [b, c] : p.terms()) {
    const std::int64_t wb = w.of(b);
    for_each_below(b, [&](const Exponent& a) {
      const UniPoly scale = UniPoly::monomial(binomial_product(b, a), static_cast<std::size_t>(wb - w.of(a)));
      std::vector<UniPoly> term;
      term.reserve(c.size());
      for (Fp x : c) term.push_back(scale * x);
      out.add_term(a, term);
    });
  }
  return out;
}

ShiftTuple weights_to_shift(const WeightAssignment& w) {
  require_nonnegative(w);
  return ShiftTuple::monomial(w.weights);
}

std::vector<Exponent> low_support_exponents(int n, int d, int ell) {
  std::vector<Exponent> out;
  if (ell <= 0) return out;
  Exponent a(static_cast<std::size_t>(n), 0);
  // Depth-first in lexicographic order, pruning once the support is used up.
  auto rec = [&](auto&& self, std::size_t i, int used) -> void {
    if (i == a.size()) {
      out.push_back(a);
      return;
    }
    a[i] = 0;
    self(self, i + 1, used);
    if (used + 1 < ell) {
      for (int v = 1; v <= d; ++v) {
        a[i] = v;
        self(self, i + 1, used + 1);
      }
    }
    a[i] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

TransferMatrix transfer_matrix(int n, int d, int ell, std::size_t budget) {
  std::size_t cols = 1;
  for (int i = 0; i < n; ++i) {
    cols *= static_cast<std::size_t>(d + 1);
    if (cols > budget) throw BudgetExceeded("transfer matrix has more than " + std::to_string(budget) + " columns");
  }
  TransferMatrix t;
  t.row_exponents = low_support_exponents(n, d, ell);
  for_each_exponent(n, d, [&](const Exponent& b) { t.col_exponents.push_back(b); });
  t.matrix = FieldMatrix(t.row_exponents.size(), t.col_exponents.size());
  for (std::size_t i = 0; i < t.row_exponents.size(); ++i) {
    for (std::size_t j = 0; j < t.col_exponents.size(); ++j) {
      const auto& a = t.row_exponents[i];
      const auto& b = t.col_exponents[j];
      if (dominated_by(a, b)) t.matrix(i, j) = binomial_product(b, a);
    }
  }
  return t;
}

bool transfer_identity_holds(const DensePoly& p, const WeightAssignment& w, int d) {
  const int n = p.num_vars();
  std::vector<Exponent> monomials;
  for_each_exponent(n, d, [&](const Exponent& a) { monomials.push_back(a); });
  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) index.emplace(monomials[i], i);
  const std::size_t k = p.dim();

  FieldMatrix c(monomials.size(), k);
  for (const auto& [a, coeff] : p.terms()) {
    for (std::size_t j = 0; j < k; ++j) c(index.at(a), j) = coeff[j];
  }
  // D C.
  TMatrix dc(monomials.size(), k);
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    const UniPoly scale = UniPoly::monomial(Fp(1), static_cast<std::size_t>(w.of(monomials[i])));
    for (std::size_t j = 0; j < k; ++j) dc(i, j) = scale * c(i, j);
  }
  // T (D C), using that T(a, b) vanishes unless a <= b.
  TMatrix tdc(monomials.size(), k);
  for (std::size_t bi = 0; bi < monomials.size(); ++bi) {
    const Exponent& b = monomials[bi];
    bool nonzero_row = false;
    for (std::size_t j = 0; j < k; ++j) nonzero_row |= !dc(bi, j).is_zero();
    if (!nonzero_row) continue;
    for_each_below(b, [&](const Exponent& a) {
      const std::size_t ai = index.at(a);
      const Fp tab = binomial_product(b, a);
      for (std::size_t j = 0; j < k; ++j) tdc(ai, j) += dc(bi, j) * tab;
    });
  }
  // D^-1: every row must be divisible by its t-power.
  const TDensePoly shifted = shift_by_weights(p, w);
  TMatrix c_shift(monomials.size(), k);
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    const UniPoly scale = UniPoly::monomial(Fp(1), static_cast<std::size_t>(w.of(monomials[i])));
    const auto expected = shifted.coefficient(monomials[i]);
    for (std::size_t j = 0; j < k; ++j) {
      auto [q, r] = divmod(tdc(i, j), scale);
      if (!r.is_zero() || q != expected[j]) return false;
      c_shift(i, j) = q;
    }
  }
  return polymatrix_rank(c_shift) == rank(c);
}

bool sparse_shift_check(const DensePoly& p, int ell) {
  if (p.is_zero()) throw PreconditionViolation("sparse shift check needs a nonzero polynomial");
  if (ell < 1 || ell > 62) throw PreconditionViolation("support bound out of range");
  if (p.size() > (std::uint64_t{1} << ell) - 1) {
    throw PreconditionViolation("sparsity " + std::to_string(p.size()) + " exceeds 2^" + std::to_string(ell) + " - 1");
  }
  const std::vector<Fp> ones(static_cast<std::size_t>(p.num_vars()), Fp(1));
  const DensePoly shifted = shift_dense(p, ones);
  return std::any_of(shifted.terms().begin(), shifted.terms().end(),
                     [ell](const auto& term) { return support(term.first) < ell; });
}

ShiftTuple LagrangeShift::at_y(Fp value) const {
  ShiftTuple out{std::vector<UniPoly>(family.front().size())};
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Fp li = basis[i](value);
    for (std::size_t j = 0; j < out.size(); ++j) out.entries[j] += family[i].entries[j] * li;
  }
  return out;
}

LagrangeShift lagrange_combine(std::vector<ShiftTuple> family, std::vector<Fp> alphas, int d, int rank_bound) {
  if (family.empty()) throw PreconditionViolation("Lagrange combination of an empty family");
  if (family.size() != alphas.size()) throw DimensionMismatch("one interpolation point per family member");
  const std::size_t n = family.front().size();
  for (const auto& f : family) {
    if (f.size() != n) throw DimensionMismatch("family members differ in length");
  }
  field().require_elements(alphas.size(), "distinct interpolation points");
  std::set<std::uint64_t> seen;
  for (Fp a : alphas) seen.insert(a.value());
  if (seen.size() != alphas.size()) {
    throw PreconditionViolation("interpolation points must be distinct");
  }

  LagrangeShift out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    UniPoly li(Fp(1));
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      if (k == i) continue;
      li *= UniPoly(std::vector<Fp>{-alphas[k], Fp(1)}) * (alphas[i] - alphas[k]).inverse();
    }
    out.basis.push_back(std::move(li));
  }
  int family_degree = 1;
  for (const auto& f : family) family_degree = std::max(family_degree, f.degree_bound());
  const std::int64_t collapse = static_cast<std::int64_t>(rank_bound) * static_cast<std::int64_t>(n) * d *
                                    family_degree + 1;
  if (collapse > (std::int64_t{1} << 30)) throw std::overflow_error("collapse exponent too large");
  out.collapse_exponent = static_cast<int>(collapse);

  const UniPoly y = UniPoly::monomial(Fp(1), static_cast<std::size_t>(collapse));
  out.shift.entries.assign(n, UniPoly{});
  for (std::size_t i = 0; i < family.size(); ++i) {
    const UniPoly li = out.basis[i].compose(y);
    for (std::size_t j = 0; j < n; ++j) out.shift.entries[j] += family[i].entries[j] * li;
  }
  const auto shifted_degree = static_cast<std::uint64_t>(out.shift.degree_bound());
  field().require_elements(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(d) * shifted_degree + 1,
                           "evaluation points for the collapsed shift");
  out.family = std::move(family);
  out.alphas = std::move(alphas);
  return out;
}

std::vector<std::vector<Fp>> hitting_set(int n, int d, int ell, const ShiftTuple& f, std::span<const Fp> t_values) {
  field().require_elements(static_cast<std::uint64_t>(d) + 1, "grid values 0, 1, ..., d");
  if (f.size() != static_cast<std::size_t>(n)) throw DimensionMismatch("shift length differs from n");
  std::set<std::uint64_t> seen;
  for (Fp t : t_values) {
    if (!seen.insert(t.value()).second) throw PreconditionViolation("t values must be distinct");
  }
  const std::vector<Exponent> grid = low_support_exponents(n, d, ell);
  std::vector<std::vector<Fp>> points;
  points.reserve(grid.size() * t_values.size());
  for (Fp t : t_values) {
    const std::vector<Fp> ft = f.at(t);
    for (const auto& h : grid) {
      std::vector<Fp> pt(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < pt.size(); ++i) pt[i] = Fp(h[i]) + ft[i];
      points.push_back(std::move(pt));
    }
  }
  return points;
}

std::uint64_t hitting_set_size(int n, int d, int ell, std::size_t t_count) {
  unsigned __int128 total = 0;
  unsigned __int128 choose = 1;  // binom(n, j)
  unsigned __int128 dpow = 1;    // d^j
  for (int j = 0; j < ell && j <= n; ++j) {
    total += choose * dpow;
    choose = choose * static_cast<unsigned>(n - j) / static_cast<unsigned>(j + 1);
    dpow *= static_cast<unsigned>(d);
    if (total > UINT64_MAX || dpow > UINT64_MAX) throw std::overflow_error("hitting set size overflows 64 bits");
  }
  total *= t_count;
  if (total > UINT64_MAX) throw std::overflow_error("hitting set size overflows 64 bits");
  return static_cast<std::uint64_t>(total);
}

int ceil_log2_plus_one(std::uint64_t k) {
  int bits = 0;
  while (k != 0) {
    ++bits;
    k >>= 1;
  }
  return bits;
}

SumParameters sum_parameters(std::uint64_t w, int d, int c) {
  if (w < 1 || d < 0 || c < 1) throw PreconditionViolation("need w >= 1, d >= 0 and c >= 1");
  if (c > 7) throw std::overflow_error("W overflows for c > 7");
  constexpr unsigned __int128 kLimit = static_cast<unsigned __int128>(1) << 63;
  unsigned __int128 big = static_cast<unsigned>(d) + 1;
  const unsigned __int128 base = static_cast<unsigned __int128>(2) * w;
  const std::uint64_t exponent = std::uint64_t{1} << (c - 1);
  for (std::uint64_t i = 0; i < exponent; ++i) {
    big *= base;
    if (big >= kLimit) throw std::overflow_error("W = (d+1)(2w)^(2^(c-1)) exceeds 63 bits");
  }
  const unsigned __int128 sq = big * big;
  int ell = 0;
  for (unsigned __int128 x = sq; x != 0; x >>= 1) ++ell;
  return SumParameters{static_cast<std::uint64_t>(big), ell, c * ell};
}

std::uint64_t BlackboxPlan::grid_size() const { return hitting_set_size(n, d, support_bound, 1); }

std::uint64_t BlackboxPlan::planned_evaluations() const {
  const unsigned __int128 total = static_cast<unsigned __int128>(grid_size()) * shifts.size() * t_values.size();
  if (total > UINT64_MAX) throw std::overflow_error("planned evaluation count overflows 64 bits");
  return static_cast<std::uint64_t>(total);
}

BlackboxPlan make_blackbox_plan(int n, int d, std::uint64_t w, int c, std::vector<ShiftTuple> shifts,
                                std::vector<Fp> t_values, std::optional<int> support_bound) {
  if (shifts.empty()) throw PreconditionViolation("a blackbox plan needs at least one shift");
  if (t_values.empty()) throw PreconditionViolation("a blackbox plan needs at least one t value");
  for (const auto& f : shifts) {
    if (f.size() != static_cast<std::size_t>(n)) throw DimensionMismatch("shift length differs from n");
  }
  BlackboxPlan plan;
  plan.n = n;
  plan.d = d;
  plan.params = sum_parameters(w, d, c);
  plan.support_bound = support_bound.value_or(plan.params.support_bound);
  plan.shifts = std::move(shifts);
  plan.t_values = std::move(t_values);
  return plan;
}

std::vector<Fp> default_t_values(std::size_t count) {
  field().require_elements(count + 1, "distinct t values");
  std::vector<Fp> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(Fp(i));
  return out;
}

std::size_t required_t_values(int n, int d, const ShiftTuple& f) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(d) * static_cast<std::size_t>(f.degree_bound()) + 1;
}

BlackboxVerdict blackbox_sum_pit(const Evaluator& eval, const BlackboxPlan& plan, std::uint64_t budget) {
  const std::uint64_t planned = plan.planned_evaluations();
  if (planned > budget) {
    throw BudgetExceeded("blackbox test needs " + std::to_string(planned) + " evaluations, budget is " +
                         std::to_string(budget));
  }
  BlackboxVerdict verdict;
  for (const auto& f : plan.shifts) {
    for (const auto& pt : hitting_set(plan.n, plan.d, plan.support_bound, f, plan.t_values)) {
      ++verdict.evaluations;
      if (!eval(pt).is_zero()) {
        verdict.nonzero = true;
        verdict.witness = pt;
        return verdict;
      }
    }
  }
  return verdict;
}

bool isolation_to_concentration_check(const DensePoly& p, const WeightAssignment& w) {
  if (!std::holds_alternative<IsolationCertificate>(verify_isolating(w, p))) {
    throw PreconditionViolation("weights do not isolate a basis of the coefficient space");
  }
  return concentration_level(shift_by_weights(p, w)) <= ceil_log2_plus_one(p.dim());
}

std::optional<WeightAssignment> certify_concentrating_shift(const DensePoly& p, int support_bound, int bound,
                                                            const IsolationSearch& search) {
  auto w = find_isolating(p, bound, search);
  if (!w) return std::nullopt;
  if (concentration_level(shift_by_weights(p, *w)) > support_bound) return std::nullopt;
  return w;
}

DensePoly dot_product(const DensePoly& p, const FieldMatrix& alpha) {
  if (alpha.rows() != p.rows() || alpha.cols() != p.cols()) throw DimensionMismatch("alpha shape differs");
  DensePoly out(p.num_vars());
  for (const auto& [a, c] : p.terms()) {
    Fp s;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * alpha.data()[i];
    out.add_term(a, s);
  }
  return out;
}

}  // namespace roabp
