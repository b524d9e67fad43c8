#pragma once

// Random instance generators and brute-force oracles shared by the unit and
// acceptance tests. Nothing here calls the library's elimination, profile or
// shift code; expected values come from direct expansion.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "roabp/dense.hpp"
#include "roabp/roabp.hpp"

namespace roabp::testing {

using Rng = std::mt19937_64;

/// Seed from ROABP_TEST_SEED when set, else the given default.
std::uint64_t test_seed(std::uint64_t fallback = 20240611);

Fp random_fp(Rng& rng);
/// Mostly small values so that cancellations happen.
Fp random_small(Rng& rng, int spread = 3);

std::vector<int> random_order(Rng& rng, int n);
std::vector<int> identity_order(int n);
std::vector<int> reversed(std::vector<int> order);

struct RoabpSpec {
  int n = 3;
  int d = 2;
  int w = 2;
  /// Probability that an entry is nonzero.
  double density = 0.8;
  /// Output dimensions; 1 x 1 for scalar programs.
  std::size_t out_rows = 1;
  std::size_t out_cols = 1;
  bool small_coefficients = true;
};

/// Random program with inner widths in [1, w].
Roabp random_roabp(Rng& rng, const RoabpSpec& spec, std::vector<int> order);

/// Perturbs one random coefficient of one random layer entry.
Roabp perturb(Rng& rng, const Roabp& r);

/// Rank as the largest nonvanishing minor, minors by cofactor expansion.
std::size_t minor_rank(const FieldMatrix& m);
Fp determinant(const FieldMatrix& m);

/// Dense expansion by multiplying out layer polynomials entry by entry,
/// without per-monomial coefficient products.
DensePoly oracle_expand(const Roabp& r);

/// p(x + f) by substituting into each monomial and multiplying univariate
/// factors.
DensePoly oracle_shift(const DensePoly& p, const std::vector<Fp>& f);

/// Rank of a list of vectors via minor_rank when small, else by an
/// independent reduced-row-echelon routine.
std::size_t oracle_rank(const std::vector<std::vector<Fp>>& vectors);

/// Flattened slice polynomial as a vector over a fixed monomial list.
std::vector<Fp> flatten(const DensePoly& p, const std::vector<Exponent>& monomials);

/// Random sparse polynomial with exactly `terms` distinct monomials.
DensePoly random_sparse(Rng& rng, int n, int d, std::size_t terms);

}  // namespace roabp::testing
