#include "roabp/dense.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace roabp {
namespace {

template <class T>
bool all_zero(const std::vector<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return x.is_zero(); });
}

std::string coefficient_prefix(Fp c, bool first, bool constant_term) {
  const std::int64_t s = c.symmetric();
  const std::uint64_t mag = s < 0 ? static_cast<std::uint64_t>(-s) : static_cast<std::uint64_t>(s);
  std::string out = first ? (s < 0 ? "-" : "") : (s < 0 ? " - " : " + ");
  if (constant_term) return out + std::to_string(mag);
  if (mag != 1) out += std::to_string(mag) + "*";
  return out;
}

}  // namespace

template <class T>
void BasicDense<T>::add_term(const Exponent& a, const Coefficient& c) {
  if (a.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch("exponent length differs from variable count");
  if (c.size() != dim()) throw DimensionMismatch("coefficient size differs from algebra dimension");
  if (all_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (inserted) return;
  for (std::size_t i = 0; i < c.size(); ++i) it->second[i] += c[i];
  if (all_zero(it->second)) terms_.erase(it);
}

template <class T>
typename BasicDense<T>::Coefficient BasicDense<T>::coefficient(const Exponent& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Coefficient(dim()) : it->second;
}

template <class T>
T BasicDense<T>::scalar_coefficient(const Exponent& a) const {
  if (dim() != 1) throw DimensionMismatch("scalar coefficient of a matrix-valued polynomial");
  auto it = terms_.find(a);
  return it == terms_.end() ? T{} : it->second.front();
}

template <class T>
int BasicDense<T>::max_degree() const {
  int d = 0;
  for (const auto& [a, c] : terms_) {
    for (int e : a) d = std::max(d, e);
  }
  return d;
}

template <class T>
void BasicDense<T>::check_compatible(const BasicDense& o) const {
  if (n_ != o.n_ || rows_ != o.rows_ || cols_ != o.cols_) {
    throw DimensionMismatch("dense polynomials differ in variable count or coefficient shape");
  }
}

template <class T>
BasicDense<T>& BasicDense<T>::operator+=(const BasicDense& o) {
  check_compatible(o);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

template <class T>
BasicDense<T>& BasicDense<T>::operator-=(const BasicDense& o) {
  check_compatible(o);
  for (const auto& [a, c] : o.terms_) {
    Coefficient neg = c;
    for (auto& x : neg) x = -x;
    add_term(a, neg);
  }
  return *this;
}

template <class T>
BasicDense<T>& BasicDense<T>::operator*=(const T& s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    for (auto& x : it->second) x *= s;
    it = all_zero(it->second) ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

template <class T>
Matrix<T> evaluate(const BasicDense<T>& p, std::span<const T> point) {
  if (point.size() != static_cast<std::size_t>(p.num_vars())) throw DimensionMismatch("point length differs from n");
  Matrix<T> acc(p.rows(), p.cols());
  for (const auto& [a, c] : p.terms()) {
    T mono(Fp(1));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (int e = 0; e < a[i]; ++e) mono *= point[i];
    }
    acc += Matrix<T>(p.rows(), p.cols(), c) * mono;
  }
  return acc;
}

template <class T>
BasicDense<T> slice(const BasicDense<T>& p, std::span<const int> vars, std::span<const int> exps) {
  if (vars.size() != exps.size()) throw DimensionMismatch("slice variables and exponents differ in length");
  BasicDense<T> out(p.num_vars(), p.rows(), p.cols());
  for (const auto& [a, c] : p.terms()) {
    bool match = true;
    for (std::size_t i = 0; i < vars.size() && match; ++i) match = a[static_cast<std::size_t>(vars[i])] == exps[i];
    if (!match) continue;
    Exponent rest = a;
    for (int v : vars) rest[static_cast<std::size_t>(v)] = 0;
    out.add_term(rest, c);
  }
  return out;
}

template <class T>
BasicDense<T> entry(const BasicDense<T>& p, std::size_t i, std::size_t j) {
  BasicDense<T> out(p.num_vars());
  for (const auto& [a, c] : p.terms()) out.add_term(a, c[i * p.cols() + j]);
  return out;
}

template <class T>
BasicDense<T> multiply(const BasicDense<T>& a, const BasicDense<T>& b) {
  if (a.num_vars() != b.num_vars()) throw DimensionMismatch("dense product over different variable counts");
  if (a.cols() != b.rows()) throw DimensionMismatch("dense product with incompatible coefficient shapes");
  BasicDense<T> out(a.num_vars(), a.rows(), b.cols());
  for (const auto& [ea, ca] : a.terms()) {
    const Matrix<T> ma(a.rows(), a.cols(), ca);
    for (const auto& [eb, cb] : b.terms()) {
      Exponent e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ma * Matrix<T>(b.rows(), b.cols(), cb));
    }
  }
  return out;
}

TDensePoly lift(const DensePoly& p) {
  TDensePoly out(p.num_vars(), p.rows(), p.cols());
  for (const auto& [a, c] : p.terms()) out.add_term(a, std::vector<UniPoly>(c.begin(), c.end()));
  return out;
}

DensePoly evaluate_t(const TDensePoly& p, Fp t) {
  DensePoly out(p.num_vars(), p.rows(), p.cols());
  for (const auto& [a, c] : p.terms()) {
    std::vector<Fp> v;
    v.reserve(c.size());
    for (const auto& e : c) v.push_back(e(t));
    out.add_term(a, v);
  }
  return out;
}

namespace {

// Expands prod_i (x_i + f_i)^{a_i} times the coefficient c into out.
template <class T>
void add_shifted_monomial(BasicDense<T>& out, const Exponent& a, const std::vector<T>& c, const std::vector<T>& f) {
  const std::size_t n = a.size();
  // Per variable: powers f_i^{a_i - j} * C(a_i, j) for j = 0..a_i.
  std::vector<std::vector<T>> factor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ai = static_cast<unsigned>(a[i]);
    std::vector<T> pw(ai + 1, T(Fp(1)));
    for (unsigned e = 1; e <= ai; ++e) pw[e] = pw[e - 1] * f[i];
    factor[i].resize(ai + 1);
    for (unsigned j = 0; j <= ai; ++j) factor[i][j] = pw[ai - j] * T(binomial(ai, j));
  }
  Exponent b(n, 0);
  while (true) {
    T scale(Fp(1));
    for (std::size_t i = 0; i < n; ++i) scale *= factor[i][static_cast<std::size_t>(b[i])];
    if (!scale.is_zero()) {
      std::vector<T> term = c;
      for (auto& x : term) x *= scale;
      out.add_term(b, term);
    }
    std::size_t i = n;
    while (i > 0 && b[i - 1] == a[i - 1]) {
      b[i - 1] = 0;
      --i;
    }
    if (i == 0) return;
    ++b[i - 1];
  }
}

}  // namespace

DensePoly shift_dense(const DensePoly& p, std::span<const Fp> f) {
  if (f.size() != static_cast<std::size_t>(p.num_vars())) throw DimensionMismatch("shift length differs from n");
  DensePoly out(p.num_vars(), p.rows(), p.cols());
  const std::vector<Fp> fv(f.begin(), f.end());
  for (const auto& [a, c] : p.terms()) add_shifted_monomial(out, a, c, fv);
  return out;
}

TDensePoly shift_dense(const DensePoly& p, const ShiftTuple& f) {
  if (f.size() != static_cast<std::size_t>(p.num_vars())) throw DimensionMismatch("shift length differs from n");
  TDensePoly out(p.num_vars(), p.rows(), p.cols());
  for (const auto& [a, c] : p.terms()) {
    add_shifted_monomial(out, a, std::vector<UniPoly>(c.begin(), c.end()), f.entries);
  }
  return out;
}

template <class T>
Matrix<T> coefficient_matrix(const BasicDense<T>& p) {
  Matrix<T> m(p.size(), p.dim());
  std::size_t r = 0;
  for (const auto& [a, c] : p.terms()) {
    for (std::size_t j = 0; j < c.size(); ++j) m(r, j) = c[j];
    ++r;
  }
  return m;
}

std::string to_string(const DensePoly& p) {
  if (p.dim() != 1) throw DimensionMismatch("to_string expects a scalar polynomial");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    const bool constant = support(a) == 0;
    out += coefficient_prefix(c.front(), first, constant);
    if (!constant) out += monomial_string(a);
    first = false;
  }
  return out;
}

std::string to_string(const TDensePoly& p) {
  if (p.dim() != 1) throw DimensionMismatch("to_string expects a scalar polynomial");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    const bool constant = support(a) == 0;
    out += "(" + c.front().to_string() + ")";
    if (!constant) out += "*" + monomial_string(a);
  }
  return out;
}

template class BasicDense<Fp>;
template class BasicDense<UniPoly>;
template Matrix<Fp> evaluate(const DensePoly&, std::span<const Fp>);
template Matrix<UniPoly> evaluate(const TDensePoly&, std::span<const UniPoly>);
template DensePoly slice(const DensePoly&, std::span<const int>, std::span<const int>);
template TDensePoly slice(const TDensePoly&, std::span<const int>, std::span<const int>);
template DensePoly entry(const DensePoly&, std::size_t, std::size_t);
template TDensePoly entry(const TDensePoly&, std::size_t, std::size_t);
template DensePoly multiply(const DensePoly&, const DensePoly&);
template TDensePoly multiply(const TDensePoly&, const TDensePoly&);
template FieldMatrix coefficient_matrix(const DensePoly&);
template TMatrix coefficient_matrix(const TDensePoly&);

}  // namespace roabp
