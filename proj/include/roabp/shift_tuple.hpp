#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "roabp/unipoly.hpp"

namespace roabp {

/// One univariate polynomial in t per variable; x_i is shifted to x_i + f_i(t).
struct ShiftTuple {
  std::vector<UniPoly> entries;

  static ShiftTuple constant(std::span<const Fp> values) {
    return ShiftTuple{std::vector<UniPoly>(values.begin(), values.end())};
  }
  /// f_i = t^{weights[i]}.
  static ShiftTuple monomial(std::span<const int> weights) {
    ShiftTuple s;
    for (int w : weights) s.entries.push_back(UniPoly::monomial(Fp(1), static_cast<std::size_t>(w)));
    return s;
  }

  std::size_t size() const noexcept { return entries.size(); }
  /// max deg f_i, with constants (and zero) counting as degree 0.
  int degree_bound() const noexcept {
    int d = 0;
    for (const auto& f : entries) d = std::max(d, f.degree());
    return d;
  }
  std::vector<Fp> at(Fp t) const {
    std::vector<Fp> v;
    v.reserve(entries.size());
    for (const auto& f : entries) v.push_back(f(t));
    return v;
  }

  friend bool operator==(const ShiftTuple&, const ShiftTuple&) = default;
};

}  // namespace roabp
