#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace roabp {

/// Exponent vector; entry i is the power of variable x_{i+1}. Lexicographic
/// comparison (std::vector's operator<) is the iteration order everywhere.
using Exponent = std::vector<int>;

/// Number of nonzero entries.
inline int support(const Exponent& a) {
  int s = 0;
  for (int e : a) s += e != 0 ? 1 : 0;
  return s;
}

/// a <= b entrywise.
inline bool dominated_by(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

/// Advances a through {0..d}^n in lexicographic order; false after the last.
inline bool next_exponent(Exponent& a, int d) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] < d) {
      ++a[i];
      return true;
    }
    a[i] = 0;
  }
  return false;
}

/// Calls fn(a) for every a in {0..d}^n, lexicographically.
template <class Fn>
void for_each_exponent(int n, int d, Fn&& fn) {
  Exponent a(static_cast<std::size_t>(n), 0);
  do {
    fn(static_cast<const Exponent&>(a));
  } while (next_exponent(a, d));
}

/// "x1*x3^2", or "1" for the zero exponent. Variables are 1-based.
inline std::string monomial_string(const Exponent& a, std::string_view var = "x") {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += var;
    s += std::to_string(i + 1);
    if (a[i] > 1) s += "^" + std::to_string(a[i]);
  }
  return s.empty() ? "1" : s;
}

/// "(1,0,2)".
inline std::string exponent_string(const Exponent& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i != 0) s += ',';
    s += std::to_string(a[i]);
  }
  return s + ")";
}

}  // namespace roabp
