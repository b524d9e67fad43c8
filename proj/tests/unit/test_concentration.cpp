#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <set>

#include "oracles.hpp"
#include "roabp/concentration.hpp"
#include "roabp/linalg.hpp"

namespace roabp {
namespace {

using testing::Rng;

DensePoly product_poly(int n, bool plus_one) {
  DensePoly p(n);
  for_each_exponent(n, 1, [&](const Exponent& a) {
    if (plus_one || support(a) == n) p.add_term(a, Fp(1));
  });
  return p;
}

// Level by brute force: ranks of coefficient tiers through the independent
// rank oracle.
int oracle_level(const DensePoly& p) {
  std::vector<std::vector<Fp>> all;
  for (const auto& [a, c] : p.terms()) all.push_back(c);
  const std::size_t full = testing::oracle_rank(all);
  for (int l = 1; l <= p.num_vars() + 1; ++l) {
    std::vector<std::vector<Fp>> low;
    for (const auto& [a, c] : p.terms()) {
      if (support(a) < l) low.push_back(c);
    }
    if (testing::oracle_rank(low) == full) return l;
  }
  return p.num_vars() + 1;
}

TEST(ConcentrationLevel, Examples) {
  EXPECT_EQ(concentration_level(product_poly(5, false)), 6);
  EXPECT_EQ(concentration_level(product_poly(5, true)), 1);
  EXPECT_EQ(concentration_level(DensePoly(3)), 1);
}

TEST(ConcentrationLevel, MatchesOracle) {
  Rng rng(testing::test_seed() + 50);
  for (int it = 0; it < 200; ++it) {
    const DensePoly p = testing::random_sparse(rng, 4, 2, 1 + rng() % 6);
    ASSERT_EQ(concentration_level(p), oracle_level(p));
  }
}

TEST(ConcentrationLevel, OverRationalFunctions) {
  ModulusScope scope(1000003);
  // x1*x2 shifted by t: constant term t^2 spans everything.
  const TDensePoly shifted = shift_dense(product_poly(2, false), ShiftTuple::monomial(std::vector<int>{1, 1}));
  EXPECT_EQ(concentration_level(shifted), 1);
  EXPECT_EQ(concentration_level(lift(product_poly(3, false))), 4);
}

TEST(Isolation, Examples) {
  ModulusScope scope(101);
  DensePoly mono(2);
  mono.add_term({1, 2}, Fp(3));
  const auto single = verify_isolating({{5, 7}}, mono);
  ASSERT_TRUE(std::holds_alternative<IsolationCertificate>(single));
  EXPECT_EQ(std::get<IsolationCertificate>(single).basis, (std::vector<Exponent>{Exponent{1, 2}}));

  DensePoly sum(2);
  sum.add_term({1, 0}, Fp(1));
  sum.add_term({0, 1}, Fp(1));
  const auto iso = verify_isolating({{1, 2}}, sum);
  ASSERT_TRUE(std::holds_alternative<IsolationCertificate>(iso));
  const auto& cert = std::get<IsolationCertificate>(iso);
  EXPECT_EQ(cert.basis, (std::vector<Exponent>{Exponent{1, 0}}));
  ASSERT_EQ(cert.expressions.size(), 1u);
  EXPECT_EQ(cert.expressions[0].coefficients, std::vector<Fp>{Fp(1)});

  DensePoly vec(2, 1, 2);
  vec.add_term({1, 0}, std::vector<Fp>{Fp(1), Fp(0)});
  vec.add_term({0, 1}, std::vector<Fp>{Fp(0), Fp(1)});
  const auto clash = verify_isolating({{1, 1}}, vec);
  ASSERT_TRUE(std::holds_alternative<IsolationFailure>(clash));
  EXPECT_EQ(std::get<IsolationFailure>(clash).weight, 1);
  EXPECT_EQ(std::get<IsolationFailure>(clash).candidates.size(), 2u);
}

TEST(Isolation, CertificateIsValid) {
  Rng rng(testing::test_seed() + 51);
  testing::RoabpSpec spec{3, 2, 2};
  spec.out_rows = 2;
  spec.out_cols = 2;
  for (int it = 0; it < 40; ++it) {
    const DensePoly p = expand_dense(testing::random_roabp(rng, spec, testing::random_order(rng, 3)));
    const auto w = find_isolating(p, 64, {testing::test_seed() + it});
    ASSERT_TRUE(w);
    const auto res = verify_isolating(*w, p);
    ASSERT_TRUE(std::holds_alternative<IsolationCertificate>(res));
    const auto& cert = std::get<IsolationCertificate>(res);
    std::set<std::int64_t> distinct(cert.basis_weights.begin(), cert.basis_weights.end());
    EXPECT_EQ(distinct.size(), cert.basis.size());
    EXPECT_TRUE(std::is_sorted(cert.basis_weights.begin(), cert.basis_weights.end()));
    std::vector<std::vector<Fp>> coeffs;
    for (const auto& [a, c] : p.terms()) coeffs.push_back(c);
    EXPECT_EQ(cert.basis.size(), testing::oracle_rank(coeffs));
    for (const auto& ex : cert.expressions) {
      std::vector<Fp> sum(p.dim());
      for (std::size_t i = 0; i < ex.coefficients.size(); ++i) {
        ASSERT_LT(cert.basis_weights[i], w->of(ex.monomial));
        const auto c = p.coefficient(cert.basis[i]);
        for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += ex.coefficients[i] * c[e];
      }
      ASSERT_EQ(sum, p.coefficient(ex.monomial));
    }
  }
}

TEST(Isolation, SearchSucceedsOnScalarPrograms) {
  Rng rng(testing::test_seed() + 52);
  for (int it = 0; it < 100; ++it) {
    const DensePoly p = expand_dense(testing::random_roabp(rng, {4, 2, 2}, testing::random_order(rng, 4)));
    const auto w = find_isolating(p, 64);
    ASSERT_TRUE(w) << it;
    for (int x : w->weights) {
      EXPECT_GE(x, p.is_zero() ? 0 : 1);
      EXPECT_LE(x, 64);
    }
  }
  const auto zero = find_isolating(DensePoly(3), 8);
  ASSERT_TRUE(zero);
  EXPECT_EQ(zero->weights, std::vector<int>(3, 0));
}

TEST(Isolation, KroneckerWeightsAccepted) {
  Rng rng(testing::test_seed() + 53);
  const DensePoly p = testing::random_sparse(rng, 3, 2, 5);
  const WeightAssignment kron{{1, 3, 9}};
  EXPECT_TRUE(std::holds_alternative<IsolationCertificate>(verify_isolating(kron, p)));
}

TEST(ShiftByWeights, Examples) {
  ModulusScope scope(101);
  const TDensePoly ones = shift_by_weights(product_poly(2, false), {{0, 0}});
  EXPECT_EQ(ones, lift(product_poly(2, true)));
  DensePoly sq(1);
  sq.add_term({2}, Fp(1));
  const TDensePoly s = shift_by_weights(sq, {{3}});
  EXPECT_EQ(s.scalar_coefficient({2}), UniPoly(Fp(1)));
  EXPECT_EQ(s.scalar_coefficient({1}), UniPoly::monomial(Fp(2), 3));
  EXPECT_EQ(s.scalar_coefficient({0}), UniPoly::monomial(Fp(1), 6));
  EXPECT_THROW(shift_by_weights(sq, {{-1}}), PreconditionViolation);
  EXPECT_THROW(shift_by_weights(sq, {{1, 2}}), DimensionMismatch);
}

TEST(ShiftByWeights, MatchesSubstitutionAndTransferIdentity) {
  Rng rng(testing::test_seed() + 54);
  for (int it = 0; it < 60; ++it) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const DensePoly p = testing::random_sparse(rng, n, 2, 1 + rng() % 6);
    WeightAssignment w;
    for (int i = 0; i < n; ++i) w.weights.push_back(static_cast<int>(rng() % 4));
    const TDensePoly s = shift_by_weights(p, w);
    ASSERT_EQ(s, shift_dense(p, weights_to_shift(w)));
    for (int t = 1; t < 4; ++t) {
      std::vector<Fp> f;
      for (int x : w.weights) f.push_back(Fp(t).pow(static_cast<unsigned>(x)));
      ASSERT_EQ(evaluate_t(s, Fp(t)), testing::oracle_shift(p, f));
    }
    ASSERT_TRUE(transfer_identity_holds(p, w, 2));
  }
}

TEST(TransferMatrix, Examples) {
  const TransferMatrix t = transfer_matrix(1, 1, 1);
  EXPECT_EQ(t.matrix, FieldMatrix(1, 2, {Fp(1), Fp(1)}));
  EXPECT_THROW(transfer_matrix(6, 3, 2, 100), BudgetExceeded);
  EXPECT_EQ(low_support_exponents(3, 2, 2).size(), 7u);
}

TEST(TransferMatrix, AllThreeColumnSubsetsFullRank) {
  const TransferMatrix t = transfer_matrix(2, 1, 2);
  const std::size_t m = t.col_exponents.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        FieldMatrix sub(t.matrix.rows(), 3);
        for (std::size_t r = 0; r < sub.rows(); ++r) {
          sub(r, 0) = t.matrix(r, a);
          sub(r, 1) = t.matrix(r, b);
          sub(r, 2) = t.matrix(r, c);
        }
        ASSERT_EQ(testing::minor_rank(sub), 3u);
      }
    }
  }
}

TEST(SparseShift, Examples) {
  DensePoly x123(3);
  x123.add_term({1, 1, 1}, Fp(1));
  EXPECT_TRUE(sparse_shift_check(x123, 1));
  DensePoly diff(2);
  diff.add_term({1, 0}, Fp(1));
  diff.add_term({0, 1}, Fp(-1));
  EXPECT_TRUE(sparse_shift_check(diff, 2));
  EXPECT_THROW(sparse_shift_check(DensePoly(2), 2), PreconditionViolation);
  EXPECT_THROW(sparse_shift_check(diff, 1), PreconditionViolation);
}

TEST(Lagrange, Interpolates) {
  ModulusScope scope(1000003);
  const ShiftTuple a{{UniPoly(Fp(3)), UniPoly(Fp(4))}};
  const ShiftTuple b{{UniPoly(Fp(5)), UniPoly(Fp(9))}};
  const LagrangeShift one = lagrange_combine({a}, {Fp(1)}, 2);
  EXPECT_EQ(one.shift.entries, a.entries);
  const LagrangeShift two = lagrange_combine({a, b}, {Fp(1), Fp(2)}, 2);
  EXPECT_EQ(two.at_y(Fp(1)).entries, a.entries);
  EXPECT_EQ(two.at_y(Fp(2)).entries, b.entries);
  EXPECT_THROW(lagrange_combine({a, b}, {Fp(1), Fp(1)}, 2), std::invalid_argument);
}

TEST(Lagrange, CombinedShiftConcentrates) {
  ModulusScope scope(1000003);
  // x1*x2*x3 is not concentrated after the zero shift but is after an all-ones shift.
  const DensePoly p = product_poly(3, false);
  const ShiftTuple bad{std::vector<UniPoly>(3)};
  const ShiftTuple good{std::vector<UniPoly>(3, UniPoly(Fp(1)))};
  EXPECT_EQ(concentration_level(shift_dense(p, bad)), 4);
  const LagrangeShift comb = lagrange_combine({bad, good}, {Fp(1), Fp(2)}, 1);
  EXPECT_LE(concentration_level(shift_dense(p, comb.shift)), 1);
}

TEST(HittingSet, SizeAndZeroPolynomial) {
  ModulusScope scope(101);
  const ShiftTuple zero{std::vector<UniPoly>(3)};
  const std::vector<Fp> ts{Fp(1)};
  const auto h = hitting_set(3, 2, 2, zero, ts);
  EXPECT_EQ(h.size(), 7u);
  EXPECT_EQ(hitting_set_size(3, 2, 2, 1), 7u);
  std::set<std::vector<std::uint64_t>> distinct;
  for (const auto& pt : h) {
    std::vector<std::uint64_t> v;
    for (Fp x : pt) v.push_back(x.value());
    distinct.insert(v);
  }
  EXPECT_EQ(distinct.size(), 7u);
  for (const auto& pt : h) EXPECT_EQ(evaluate(DensePoly(3), std::span<const Fp>(pt))(0, 0), Fp(0));
}

TEST(HittingSet, HitsConcentratedPolynomials) {
  Rng rng(testing::test_seed() + 55);
  const ShiftTuple zero{std::vector<UniPoly>(3)};
  const std::vector<Fp> ts{Fp(1)};
  const auto h = hitting_set(3, 2, 2, zero, ts);
  int checked = 0;
  for (int it = 0; it < 400 && checked < 100; ++it) {
    const DensePoly p = testing::random_sparse(rng, 3, 2, 1 + rng() % 5);
    if (concentration_level(p) > 2) continue;
    ++checked;
    bool hit = false;
    for (const auto& pt : h) hit = hit || !evaluate(p, std::span<const Fp>(pt))(0, 0).is_zero();
    ASSERT_TRUE(hit);
  }
  EXPECT_GE(checked, 50);
}

TEST(SumParameters, HeaderValues) {
  const SumParameters two = sum_parameters(2, 2, 2);
  EXPECT_EQ(two.width_bound, 48u);
  EXPECT_EQ(two.ell, 12);
  EXPECT_EQ(two.support_bound, 24);
  EXPECT_EQ(sum_parameters(2, 2, 3).width_bound, 3u * 256u);
  EXPECT_EQ(sum_parameters(2, 1, 1).width_bound, 8u);
  EXPECT_EQ(ceil_log2_plus_one(1), 1);
  EXPECT_EQ(ceil_log2_plus_one(4), 3);
  EXPECT_EQ(ceil_log2_plus_one(7), 3);
  EXPECT_EQ(ceil_log2_plus_one(48 * 48), 12);
  EXPECT_THROW(sum_parameters(1000, 5, 6), std::overflow_error);
}

TEST(Blackbox, ZeroPolynomialUsesWholePlan) {
  ModulusScope scope(1000003);
  const ShiftTuple ones{std::vector<UniPoly>(4, UniPoly(Fp(1)))};
  const BlackboxPlan plan = make_blackbox_plan(4, 1, 2, 2, {ones}, default_t_values(1), 2);
  std::uint64_t calls = 0;
  const Evaluator zero = [&](std::span<const Fp>) {
    ++calls;
    return Fp(0);
  };
  const BlackboxVerdict v = blackbox_sum_pit(zero, plan, plan.planned_evaluations());
  EXPECT_FALSE(v.nonzero);
  EXPECT_EQ(v.evaluations, plan.planned_evaluations());
  EXPECT_EQ(calls, plan.planned_evaluations());
  EXPECT_EQ(plan.grid_size(), hitting_set_size(4, 1, 2, 1));
  EXPECT_THROW(blackbox_sum_pit(zero, plan, plan.planned_evaluations() - 1), BudgetExceeded);
}

TEST(Blackbox, ShiftRevealsHighSupportPolynomial) {
  ModulusScope scope(1000003);
  const DensePoly p = product_poly(4, false);
  const Evaluator eval = [&](std::span<const Fp> x) { return evaluate(p, x)(0, 0); };
  const ShiftTuple none{std::vector<UniPoly>(4)};
  const ShiftTuple ones{std::vector<UniPoly>(4, UniPoly(Fp(1)))};
  const auto ts = default_t_values(1);
  EXPECT_FALSE(blackbox_sum_pit(eval, make_blackbox_plan(4, 1, 2, 2, {none}, ts, 2), 1000).nonzero);
  const BlackboxVerdict v = blackbox_sum_pit(eval, make_blackbox_plan(4, 1, 2, 2, {ones}, ts, 2), 1000);
  ASSERT_TRUE(v.nonzero);
  EXPECT_NE(eval(v.witness), Fp(0));
}

TEST(IsolationShift, ConcentratesScalarAndMatrixCases) {
  Rng rng(testing::test_seed() + 56);
  testing::RoabpSpec spec{3, 2, 2};
  for (int k : {1, 4}) {
    spec.out_rows = spec.out_cols = k == 1 ? 1 : 2;
    for (int it = 0; it < 20; ++it) {
      const DensePoly p = expand_dense(testing::random_roabp(rng, spec, testing::random_order(rng, 3)));
      const auto w = find_isolating(p, 64);
      ASSERT_TRUE(w);
      ASSERT_TRUE(isolation_to_concentration_check(p, *w));
    }
  }
}

// A random nonzero solution of rows * x = 0, or nullopt when only x = 0 works.
std::optional<std::vector<Fp>> null_vector(std::vector<std::vector<Fp>> rows, std::size_t dim, Rng& rng) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Fp inv = rows[r][c].inverse();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Fp f = rows[i][c];
      for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivots.size() == dim) return std::nullopt;
  std::vector<Fp> x(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) x[c] = testing::random_fp(rng);
  }
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Fp v;
    for (std::size_t c = 0; c < dim; ++c) {
      if (c != pivots[i]) v -= rows[i][c] * x[c];
    }
    x[pivots[i]] = v;
  }
  return x;
}

TEST(DotProduct, ReductionsDetectConcentration) {
  Rng rng(testing::test_seed() + 57);
  testing::RoabpSpec spec{3, 1, 2};
  spec.out_rows = spec.out_cols = 2;
  for (int it = 0; it < 10; ++it) {
    const Roabp r = testing::random_roabp(rng, spec, testing::random_order(rng, 3));
    const DensePoly p = expand_dense(r);
    const int level = concentration_level(p);
    // Every reduction is at least as concentrated.
    for (int s = 0; s < 50; ++s) {
      FieldMatrix alpha(2, 2);
      for (std::size_t e = 0; e < 4; ++e) alpha(e / 2, e % 2) = testing::random_fp(rng);
      const DensePoly reduced = dot_product(p, alpha);
      ASSERT_EQ(expand_dense(dot_product(r, alpha)), reduced);
      ASSERT_LE(concentration_level(reduced), level);
    }
    if (level == 1) continue;
    // An alpha orthogonal to the coefficients below the level but not to all
    // of them gives a reduction that is not (level - 1)-concentrated.
    std::vector<std::vector<Fp>> low, all;
    for (const auto& [a, c] : p.terms()) {
      all.push_back(c);
      if (support(a) < level - 1) low.push_back(c);
    }
    std::optional<std::vector<Fp>> alpha;
    for (int tries = 0; tries < 20; ++tries) {
      alpha = null_vector(low, 4, rng);
      ASSERT_TRUE(alpha);
      bool kills_all = true;
      for (const auto& c : all) {
        Fp dot;
        for (std::size_t e = 0; e < 4; ++e) dot += c[e] * (*alpha)[e];
        kills_all = kills_all && dot.is_zero();
      }
      if (!kills_all) break;
    }
    const DensePoly reduced = dot_product(p, FieldMatrix(2, 2, *alpha));
    ASSERT_FALSE(reduced.is_zero());
    EXPECT_GE(concentration_level(reduced), level);
  }
}

}  // namespace
}  // namespace roabp
