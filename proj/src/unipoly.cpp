#include "roabp/unipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace roabp {

UniPoly::UniPoly(Fp c) {
  if (!c.is_zero()) c_.push_back(c);
}

UniPoly::UniPoly(std::vector<Fp> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(Fp c, std::size_t degree) {
  if (c.is_zero()) return {};
  std::vector<Fp> v(degree + 1);
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() noexcept {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Fp UniPoly::operator()(Fp x) const noexcept {
  Fp acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::pow(unsigned e) const {
  UniPoly result(Fp(1));
  UniPoly base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
  UniPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + UniPoly(*it);
  return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(Fp s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const PrimeField& f = field();
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const std::uint64_t ai = a.c_[i].value();
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      acc[i + j] = f.add(acc[i + j], f.mul(ai, b.c_[j].value()));
    }
  }
  std::vector<Fp> out(acc.size());
  std::transform(acc.begin(), acc.end(), out.begin(), Fp::from_residue);
  return UniPoly(std::move(out));
}

UniPoly operator-(UniPoly a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

std::string UniPoly::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const std::int64_t s = c_[i].symmetric();
    if (s == 0) continue;
    const std::uint64_t mag = s < 0 ? static_cast<std::uint64_t>(-s) : static_cast<std::uint64_t>(s);
    if (first) {
      if (s < 0) os << "-";
    } else {
      os << (s < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly{}, a};
  std::vector<Fp> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const Fp lead_inv = bc.back().inverse();
  std::vector<Fp> quo(rem.size() - db);
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Fp q = rem[k + db] * lead_inv;
    quo[k] = q;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * bc[j];
  }
  rem.resize(db);
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: divisor does not divide dividend");
  return q;
}

}  // namespace roabp
