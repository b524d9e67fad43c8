#include <gtest/gtest.h>

#include "oracles.hpp"
#include "roabp/nisan.hpp"

namespace roabp {
namespace {

using testing::Rng;

UniPoly poly(std::initializer_list<int> c) {
  std::vector<Fp> v;
  for (int x : c) v.emplace_back(x);
  return UniPoly(std::move(v));
}

std::vector<Exponent> all_exponents(int n, int d) {
  std::vector<Exponent> out;
  for_each_exponent(n, d, [&](const Exponent& a) { out.push_back(a); });
  return out;
}

void expect_profile_invariants(const Roabp& r, const SpanningProfile& prof) {
  const std::size_t w = r.width();
  const int d = r.degree_bound();
  ASSERT_EQ(prof.levels.size(), r.layer_count() + 1);
  EXPECT_EQ(prof.levels[0].span, std::vector<Exponent>{Exponent{}});
  EXPECT_TRUE(prof.levels[0].dep.empty());
  for (std::size_t k = 1; k < prof.levels.size(); ++k) {
    const auto& lv = prof.levels[k];
    const auto& prev = prof.levels[k - 1];
    ASSERT_EQ(lv.dep.size(), prev.span.size() * static_cast<std::size_t>(d + 1));
    EXPECT_LE(lv.dep.size(), w * static_cast<std::size_t>(d + 1));
    EXPECT_LE(lv.span.size(), w);
    for (std::size_t i = 0; i < lv.span.size(); ++i) EXPECT_EQ(lv.dep[lv.span_positions[i]], lv.span[i]);
    for (std::size_t b = 0; b < lv.dep.size(); ++b) {
      std::vector<Fp> combo(lv.vectors[b].size());
      for (std::size_t a = 0; a < lv.span.size(); ++a) {
        for (std::size_t e = 0; e < combo.size(); ++e) combo[e] += lv.gamma[b][a] * lv.vectors[lv.span_positions[a]][e];
      }
      ASSERT_EQ(combo, lv.vectors[b]) << "level " << k << " dep " << b;
    }
  }
  EXPECT_EQ(prof.levels.back().span.size(), 1u);
}

TEST(Profile, ZeroProgram) {
  ModulusScope scope(101);
  const Roabp zero = product_of_univariates(3, 2, {0, 1, 2}, {poly({1, 1}), UniPoly{}, poly({2})});
  const SpanningProfile prof = build_profile(zero);
  expect_profile_invariants(zero, prof);
  EXPECT_EQ(prof.final_scalar, Fp(0));
  EXPECT_TRUE(zero_test(zero));
  EXPECT_FALSE(nonzero_witness(zero));
}

TEST(Profile, ProductOfLinearFactors) {
  ModulusScope scope(101);
  const Roabp r = product_of_univariates(2, 1, {0, 1}, {poly({1, 1}), poly({1, 1})});
  const SpanningProfile prof = build_profile(r);
  expect_profile_invariants(r, prof);
  EXPECT_EQ(prof.levels[1].span, std::vector<Exponent>{Exponent{0}});
  ASSERT_EQ(prof.levels[1].dep.size(), 2u);
  EXPECT_EQ(prof.levels[1].gamma[1], std::vector<Fp>{Fp(1)});
  EXPECT_FALSE(zero_test(r));
  const auto witness = nonzero_witness(r);
  ASSERT_TRUE(witness);
  EXPECT_NE(r.scalar_coeff(*witness), Fp(0));
}

TEST(Profile, SpanCoversEverySlice) {
  Rng rng(testing::test_seed() + 20);
  for (int it = 0; it < 40; ++it) {
    const int n = 4, d = 2;
    const Roabp r = testing::random_roabp(rng, {n, d, 3}, testing::random_order(rng, n));
    const SpanningProfile prof = build_profile(r);
    expect_profile_invariants(r, prof);
    const DensePoly p = testing::oracle_expand(r);
    const auto all = all_exponents(n, d);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
      const auto vars = prof.prefix_vars(k);
      std::vector<std::vector<Fp>> span_vectors;
      for (const auto& a : prof.levels[k].span) span_vectors.push_back(testing::flatten(slice(p, vars, a), all));
      const std::size_t base = testing::oracle_rank(span_vectors);
      for (const auto& a : all_exponents(static_cast<int>(k), d)) {
        auto with = span_vectors;
        with.push_back(testing::flatten(slice(p, vars, a), all));
        ASSERT_EQ(testing::oracle_rank(with), base) << "k=" << k;
      }
    }
  }
}

TEST(ZeroTest, AgreesWithDenseOracle) {
  Rng rng(testing::test_seed() + 21);
  int zeros = 0;
  for (int it = 0; it < 300; ++it) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int d = static_cast<int>(rng() % 3);
    testing::RoabpSpec spec{n, d, 1 + static_cast<int>(rng() % 4)};
    spec.density = 0.3 + 0.7 * static_cast<double>(rng() % 100) / 100.0;
    Roabp r = testing::random_roabp(rng, spec, testing::random_order(rng, n));
    if (it % 3 == 0) {
      const Roabp parts[] = {r, r};
      const Fp g[] = {Fp(3), Fp(-3)};
      r = linear_combination(parts, g);
    }
    const bool expected = testing::oracle_expand(r).is_zero();
    zeros += expected;
    ASSERT_EQ(zero_test(r), expected) << "instance " << it;
    const auto witness = nonzero_witness(r);
    ASSERT_EQ(witness.has_value(), !expected);
    if (witness) ASSERT_NE(r.scalar_coeff(*witness), Fp(0));
  }
  EXPECT_GE(zeros, 100);
}

TEST(Reconstruct, SingleMonomialHasWidthOne) {
  ModulusScope scope(101);
  // x1*x2 written with a needlessly wide middle.
  PolyMatrix<Fp> l1({FieldMatrix(1, 2), FieldMatrix(1, 2, {Fp(1), Fp(1)})});
  PolyMatrix<Fp> l2({FieldMatrix(2, 1), FieldMatrix(2, 1, {Fp(2), Fp(-1)})});
  const Roabp r(2, 1, {0, 1}, {l1, l2});
  const Roabp rebuilt = reconstruct_trusted(build_profile(r));
  EXPECT_EQ(rebuilt.width(), 1u);
  EXPECT_EQ(expand_dense(rebuilt), expand_dense(r));
}

TEST(Reconstruct, RoundTripAndUnitVectors) {
  Rng rng(testing::test_seed() + 22);
  for (int it = 0; it < 150; ++it) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int d = static_cast<int>(rng() % 3);
    const Roabp r = testing::random_roabp(rng, {n, d, 1 + static_cast<int>(rng() % 4)}, testing::random_order(rng, n));
    const SpanningProfile prof = build_profile(r);
    const auto result = reconstruct(prof, RoabpTarget(r));
    ASSERT_TRUE(std::holds_alternative<Roabp>(result));
    const Roabp& rebuilt = std::get<Roabp>(result);
    ASSERT_EQ(expand_dense(rebuilt), testing::oracle_expand(r));
    EXPECT_LE(rebuilt.width(), r.width());
    EXPECT_EQ(rebuilt.order(), r.order());
    for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
      const auto& span = prof.levels[k].span;
      for (std::size_t l = 0; l < span.size(); ++l) {
        const FieldMatrix pk = prefix_coefficient(rebuilt, k, span[l]);
        if (k == static_cast<std::size_t>(n)) continue;  // the last layer carries the final scalar
        ASSERT_EQ(pk.rows(), 1u);
        ASSERT_EQ(pk.cols(), span.size());
        for (std::size_t j = 0; j < span.size(); ++j) ASSERT_EQ(pk(0, j), Fp(j == l ? 1 : 0));
      }
    }
  }
}

TEST(Reconstruct, ForeignTargetIsRejectedOrMatched) {
  Rng rng(testing::test_seed() + 23);
  for (int it = 0; it < 60; ++it) {
    const Roabp a = testing::random_roabp(rng, {3, 2, 2}, {0, 1, 2});
    const Roabp b = testing::random_roabp(rng, {3, 2, 3}, {2, 1, 0});
    const SpanningProfile prof = build_profile(a);
    const auto via_roabp = reconstruct(prof, RoabpTarget(b));
    const auto via_dense = reconstruct(prof, DenseTarget(testing::oracle_expand(b)));
    ASSERT_EQ(via_roabp.index(), via_dense.index());
    if (const auto* fail = std::get_if<NotRepresentable>(&via_roabp)) {
      EXPECT_EQ(fail->dependency, std::get<NotRepresentable>(via_dense).dependency);
    } else {
      EXPECT_EQ(expand_dense(std::get<Roabp>(via_roabp)), expand_dense(b));
    }
  }
}

TEST(Reconstruct, DenseProfileInAnyOrder) {
  Rng rng(testing::test_seed() + 24);
  for (int it = 0; it < 40; ++it) {
    const DensePoly p = testing::random_sparse(rng, 3, 2, 1 + rng() % 6);
    const auto order = testing::random_order(rng, 3);
    const Roabp r = encode_dense(p, order, 2);
    EXPECT_EQ(r.order(), order);
    ASSERT_EQ(expand_dense(r), p);
    const SpanningProfile prof = build_profile(p, order, 2);
    const auto rebuilt = reconstruct(prof, DenseTarget(p));
    ASSERT_TRUE(std::holds_alternative<Roabp>(rebuilt));
    EXPECT_EQ(expand_dense(std::get<Roabp>(rebuilt)), p);
  }
}

TEST(ReduceWidth, ShrinksToCutRanks) {
  Rng rng(testing::test_seed() + 25);
  for (int it = 0; it < 60; ++it) {
    const Roabp r = testing::random_roabp(rng, {4, 2, 2}, testing::random_order(rng, 4));
    const Roabp parts[] = {r, r, r};
    const Fp g[] = {Fp(1), Fp(2), Fp(5)};
    const Roabp wide = linear_combination(parts, g);
    const Roabp slim = reduce_width(wide);
    EXPECT_EQ(slim.order(), wide.order());
    EXPECT_LE(slim.width(), r.width());
    ASSERT_EQ(expand_dense(slim), expand_dense(wide));
  }
}

TEST(DependencyCombination, MatchesDenseSlices) {
  Rng rng(testing::test_seed() + 26);
  for (int it = 0; it < 30; ++it) {
    const Roabp a = testing::random_roabp(rng, {3, 2, 2}, testing::random_order(rng, 3));
    const Roabp b = testing::random_roabp(rng, {3, 2, 2}, testing::random_order(rng, 3));
    const SpanningProfile prof = build_profile(a);
    const DensePoly pb = testing::oracle_expand(b);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto& lv = prof.levels[k];
      const auto vars = prof.prefix_vars(k);
      for (std::size_t j = 0; j < lv.dep.size(); ++j) {
        DensePoly expected = slice(pb, vars, lv.dep[j]);
        for (std::size_t s = 0; s < lv.span.size(); ++s) expected -= slice(pb, vars, lv.span[s]) * lv.gamma[j][s];
        ASSERT_EQ(expand_dense(dependency_combination(b, prof, k, j)), expected);
      }
    }
  }
}

}  // namespace
}  // namespace roabp
