#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roabp/field.hpp"

namespace roabp {

/// Dense univariate polynomial over the current prime field, lowest degree
/// first. The coefficient list never ends in a zero; the zero polynomial is
/// the empty list.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(Fp c);  // NOLINT(google-explicit-constructor): constants embed
  explicit UniPoly(std::vector<Fp> coeffs);

  static UniPoly monomial(Fp c, std::size_t degree);
  /// The indeterminate itself.
  static UniPoly variable() { return monomial(Fp(1), 1); }

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Fp>& coefficients() const noexcept { return c_; }
  Fp coefficient(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Fp{}; }
  Fp leading() const noexcept { return c_.empty() ? Fp{} : c_.back(); }

  Fp operator()(Fp x) const noexcept;
  UniPoly pow(unsigned e) const;
  /// this(inner(t)).
  UniPoly compose(const UniPoly& inner) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
  UniPoly& operator*=(Fp s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, Fp s) { return a *= s; }
  friend UniPoly operator*(Fp s, UniPoly a) { return a *= s; }
  friend UniPoly operator-(UniPoly a);

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string to_string(std::string_view var = "t") const;

 private:
  void trim() noexcept;
  std::vector<Fp> c_;
};

/// Quotient and remainder; throws std::domain_error on a zero divisor.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// a / b where b is known to divide a; throws std::logic_error otherwise.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);

}  // namespace roabp
