#include "roabp/roabp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace roabp {

std::string to_string(Shape s) {
  switch (s) {
    case Shape::scalar: return "scalar";
    case Shape::row: return "row";
    case Shape::column: return "column";
    case Shape::matrix: return "matrix";
  }
  return "matrix";
}

template <class T>
BasicRoabp<T>::BasicRoabp(int n, int d, std::vector<int> order, std::vector<PolyMatrix<T>> layers)
    : n_(n), d_(d), order_(std::move(order)), layers_(std::move(layers)) {
  if (n_ < 1) throw std::invalid_argument("an ROABP needs at least one variable");
  if (d_ < 0) throw std::invalid_argument("degree bound must be non-negative");
  if (layers_.empty()) throw std::invalid_argument("an ROABP needs at least one layer");
  if (layers_.size() != order_.size()) throw DimensionMismatch("layer count differs from the length of the order");
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  for (int v : order_) {
    if (v < 0 || v >= n_) throw std::invalid_argument("variable " + std::to_string(v + 1) + " out of range");
    if (seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("variable " + std::to_string(v + 1) + " is read twice");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (layers_[k].degree() > d_) {
      throw std::invalid_argument("layer " + std::to_string(k + 1) + " has degree " +
                                  std::to_string(layers_[k].degree()) + " above the bound " + std::to_string(d_));
    }
    if (layers_[k].rows() == 0 || layers_[k].cols() == 0) {
      throw DimensionMismatch("layer " + std::to_string(k + 1) + " has an empty dimension");
    }
    if (k > 0 && layers_[k - 1].cols() != layers_[k].rows()) {
      throw DimensionMismatch("layers " + std::to_string(k) + " and " + std::to_string(k + 1) + " do not compose");
    }
  }
}

template <class T>
std::size_t BasicRoabp<T>::width() const noexcept {
  std::size_t w = 0;
  for (const auto& l : layers_) w = std::max({w, l.rows(), l.cols()});
  return w;
}

template <class T>
std::size_t BasicRoabp<T>::max_layer_entries() const noexcept {
  std::size_t e = 0;
  for (const auto& l : layers_) e = std::max(e, l.rows() * l.cols());
  return e;
}

template <class T>
Shape BasicRoabp<T>::shape() const noexcept {
  if (rows() == 1) return cols() == 1 ? Shape::scalar : Shape::row;
  return cols() == 1 ? Shape::column : Shape::matrix;
}

template <class T>
Matrix<T> BasicRoabp<T>::evaluate(std::span<const T> point) const {
  if (point.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch("point length differs from n");
  Matrix<T> acc = layers_.front()(point[static_cast<std::size_t>(order_.front())]);
  for (std::size_t k = 1; k < layers_.size(); ++k) acc = acc * layers_[k](point[static_cast<std::size_t>(order_[k])]);
  return acc;
}

template <class T>
Matrix<T> BasicRoabp<T>::coeff(const Exponent& a) const {
  if (a.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch("exponent length differs from n");
  std::vector<bool> read(static_cast<std::size_t>(n_), false);
  for (int v : order_) read[static_cast<std::size_t>(v)] = true;
  for (int v = 0; v < n_; ++v) {
    if (!read[static_cast<std::size_t>(v)] && a[static_cast<std::size_t>(v)] != 0) return Matrix<T>(rows(), cols());
  }
  Matrix<T> acc = layers_.front().coefficient(a[static_cast<std::size_t>(order_.front())]);
  for (std::size_t k = 1; k < layers_.size(); ++k) {
    acc = acc * layers_[k].coefficient(a[static_cast<std::size_t>(order_[k])]);
  }
  return acc;
}

template <class T>
BasicDense<T> expand_dense(const BasicRoabp<T>& r, std::size_t budget) {
  std::size_t monomials = 1;
  for (std::size_t k = 0; k < r.layer_count(); ++k) {
    monomials *= static_cast<std::size_t>(r.degree_bound() + 1);
    if (monomials > budget) {
      throw BudgetExceeded("dense expansion needs more than " + std::to_string(budget) + " monomials");
    }
  }
  std::map<Exponent, Matrix<T>> partial;
  partial.emplace(Exponent(static_cast<std::size_t>(r.num_vars()), 0), Matrix<T>::identity(r.rows()));
  for (std::size_t k = 0; k < r.layer_count(); ++k) {
    const auto var = static_cast<std::size_t>(r.order()[k]);
    const auto& coeffs = r.layers()[k].coefficients();
    std::map<Exponent, Matrix<T>> next;
    for (const auto& [e, m] : partial) {
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].is_zero()) continue;
        Matrix<T> prod = m * coeffs[j];
        if (prod.is_zero()) continue;
        Exponent e2 = e;
        e2[var] = static_cast<int>(j);
        next.emplace(std::move(e2), std::move(prod));
      }
    }
    partial = std::move(next);
  }
  BasicDense<T> out(r.num_vars(), r.rows(), r.cols());
  for (const auto& [e, m] : partial) out.add_term(e, m);
  return out;
}

template <class T>
BasicRoabp<T> coeff_operator(const BasicRoabp<T>& r, std::span<const int> vars, std::span<const int> exps) {
  if (vars.size() != exps.size()) throw DimensionMismatch("coefficient operator variables and exponents differ");
  std::vector<int> target(static_cast<std::size_t>(r.num_vars()), -1);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] < 0 || vars[i] >= r.num_vars()) throw std::invalid_argument("variable out of range");
    if (exps[i] < 0 || exps[i] > r.degree_bound()) throw std::invalid_argument("exponent outside [0, d]");
    target[static_cast<std::size_t>(vars[i])] = exps[i];
  }
  std::vector<PolyMatrix<T>> layers = r.layers();
  bool annihilated = false;
  std::vector<bool> read(static_cast<std::size_t>(r.num_vars()), false);
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto v = static_cast<std::size_t>(r.order()[k]);
    read[v] = true;
    if (target[v] >= 0) layers[k] = PolyMatrix<T>::constant(layers[k].coefficient(target[v]));
  }
  // A requested positive power of a variable the program never reads.
  for (std::size_t v = 0; v < read.size(); ++v) annihilated |= !read[v] && target[v] > 0;
  if (annihilated) layers.front() = PolyMatrix<T>(layers.front().rows(), layers.front().cols());
  return BasicRoabp<T>(r.num_vars(), r.degree_bound(), r.order(), std::move(layers));
}

namespace {

template <class T>
PolyMatrix<T> shift_layer(const PolyMatrix<T>& layer, const T& f) {
  const auto& m = layer.coefficients();
  if (m.empty()) return layer;
  std::vector<T> fpow(m.size(), T(Fp(1)));
  for (std::size_t e = 1; e < m.size(); ++e) fpow[e] = fpow[e - 1] * f;
  std::vector<Matrix<T>> out(m.size(), Matrix<T>(layer.rows(), layer.cols()));
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t i = j; i < m.size(); ++i) {
      const T scale = T(binomial(static_cast<unsigned>(i), static_cast<unsigned>(j))) * fpow[i - j];
      if (!scale.is_zero()) out[j] += m[i] * scale;
    }
  }
  return PolyMatrix<T>(std::move(out));
}

template <class T>
BasicRoabp<T> shift_impl(const BasicRoabp<T>& r, const std::vector<T>& f) {
  if (f.size() != static_cast<std::size_t>(r.num_vars())) throw DimensionMismatch("shift length differs from n");
  std::vector<PolyMatrix<T>> layers;
  layers.reserve(r.layer_count());
  for (std::size_t k = 0; k < r.layer_count(); ++k) {
    layers.push_back(shift_layer(r.layers()[k], f[static_cast<std::size_t>(r.order()[k])]));
  }
  return BasicRoabp<T>(r.num_vars(), r.degree_bound(), r.order(), std::move(layers));
}

PolyMatrix<UniPoly> lift_layer(const PolyMatrix<Fp>& l) {
  PolyMatrix<UniPoly> out(l.rows(), l.cols());
  for (std::size_t j = 0; j < l.coefficients().size(); ++j) out.set_coefficient(static_cast<int>(j), lift(l.coefficients()[j]));
  return out;
}

// Copies src into dst at offset (r0, c0).
void place(FieldMatrix& dst, const FieldMatrix& src, std::size_t r0, std::size_t c0) {
  for (std::size_t i = 0; i < src.rows(); ++i) {
    for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) = src(i, j);
  }
}

}  // namespace

Roabp shift(const Roabp& r, std::span<const Fp> f) { return shift_impl(r, std::vector<Fp>(f.begin(), f.end())); }

TRoabp shift(const Roabp& r, const ShiftTuple& f) { return shift_impl(lift(r), f.entries); }

TRoabp shift(const TRoabp& r, const ShiftTuple& f) { return shift_impl(r, f.entries); }

Roabp linear_combination(std::span<const Roabp> rs, std::span<const Fp> gammas) {
  if (rs.empty()) throw std::invalid_argument("linear combination of no programs");
  if (rs.size() != gammas.size()) throw DimensionMismatch("one coefficient per program is required");
  const Roabp& first = rs.front();
  for (const auto& r : rs) {
    if (!r.is_scalar()) throw std::invalid_argument("linear combination needs scalar-output programs");
    if (r.num_vars() != first.num_vars() || r.degree_bound() != first.degree_bound()) {
      throw DimensionMismatch("programs differ in n or d");
    }
    if (r.order() != first.order()) throw std::invalid_argument("programs read their variables in different orders");
  }
  const std::size_t m = first.layer_count();
  const int d = first.degree_bound();
  std::vector<PolyMatrix<Fp>> layers;
  if (m == 1) {
    std::vector<FieldMatrix> coeffs(static_cast<std::size_t>(d) + 1, FieldMatrix(1, 1));
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (int j = 0; j <= d; ++j) coeffs[static_cast<std::size_t>(j)] += rs[i].layers()[0].coefficient(j) * gammas[i];
    }
    layers.emplace_back(std::move(coeffs));
    return Roabp(first.num_vars(), d, first.order(), std::move(layers));
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (const auto& r : rs) {
      rows += r.layers()[k].rows();
      cols += r.layers()[k].cols();
    }
    if (k == 0) rows = 1;
    if (k + 1 == m) cols = 1;
    std::vector<FieldMatrix> coeffs(static_cast<std::size_t>(d) + 1, FieldMatrix(rows, cols));
    std::size_t r0 = 0;
    std::size_t c0 = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const auto& layer = rs[i].layers()[k];
      for (int j = 0; j <= d; ++j) {
        FieldMatrix block = layer.coefficient(j);
        if (k == 0) block *= gammas[i];
        place(coeffs[static_cast<std::size_t>(j)], block, k == 0 ? 0 : r0, k + 1 == m ? 0 : c0);
      }
      r0 += layer.rows();
      c0 += layer.cols();
    }
    layers.emplace_back(std::move(coeffs));
  }
  return Roabp(first.num_vars(), d, first.order(), std::move(layers));
}

template <class T>
BasicRoabp<T> negate(const BasicRoabp<T>& r) {
  std::vector<PolyMatrix<T>> layers = r.layers();
  layers.front() *= T(Fp(-1));
  return BasicRoabp<T>(r.num_vars(), r.degree_bound(), r.order(), std::move(layers));
}

TRoabp lift(const Roabp& r) {
  std::vector<PolyMatrix<UniPoly>> layers;
  for (const auto& l : r.layers()) layers.push_back(lift_layer(l));
  return TRoabp(r.num_vars(), r.degree_bound(), r.order(), std::move(layers));
}

Roabp evaluate_t(const TRoabp& r, Fp t0) {
  std::vector<PolyMatrix<Fp>> layers;
  for (const auto& l : r.layers()) {
    PolyMatrix<Fp> out(l.rows(), l.cols());
    for (std::size_t j = 0; j < l.coefficients().size(); ++j) {
      out.set_coefficient(static_cast<int>(j), evaluate_at(l.coefficients()[j], t0));
    }
    layers.push_back(std::move(out));
  }
  return Roabp(r.num_vars(), r.degree_bound(), r.order(), std::move(layers));
}

int max_t_degree(const TRoabp& r) {
  int deg = 0;
  for (const auto& l : r.layers()) {
    for (const auto& m : l.coefficients()) deg = std::max(deg, max_degree(m));
  }
  return deg;
}

template <class T>
BasicRoabp<T> reverse_transpose(const BasicRoabp<T>& r) {
  std::vector<PolyMatrix<T>> layers;
  std::vector<int> order(r.order().rbegin(), r.order().rend());
  for (auto it = r.layers().rbegin(); it != r.layers().rend(); ++it) layers.push_back(it->transpose());
  return BasicRoabp<T>(r.num_vars(), r.degree_bound(), std::move(order), std::move(layers));
}

Roabp dot_product(const Roabp& r, const FieldMatrix& alpha) {
  if (alpha.rows() != r.rows() || alpha.cols() != r.cols()) throw DimensionMismatch("alpha shape differs from output");
  const std::size_t m = r.layer_count();
  const std::size_t R = r.rows();
  const int d = r.degree_bound();
  std::vector<PolyMatrix<Fp>> layers;
  if (m == 1) {
    std::vector<FieldMatrix> coeffs(static_cast<std::size_t>(d) + 1, FieldMatrix(1, 1));
    for (int j = 0; j <= d; ++j) {
      const FieldMatrix c = r.layers()[0].coefficient(j);
      for (std::size_t a = 0; a < R; ++a) {
        for (std::size_t b = 0; b < r.cols(); ++b) coeffs[static_cast<std::size_t>(j)](0, 0) += alpha(a, b) * c(a, b);
      }
    }
    layers.emplace_back(std::move(coeffs));
    return Roabp(r.num_vars(), d, r.order(), std::move(layers));
  }
  for (std::size_t k = 0; k < m; ++k) {
    const auto& layer = r.layers()[k];
    const std::size_t lr = layer.rows();
    const std::size_t lc = layer.cols();
    std::vector<FieldMatrix> coeffs;
    for (int j = 0; j <= d; ++j) {
      const FieldMatrix c = layer.coefficient(j);
      if (k == 0) {
        // New start node: row a of D_1 feeds block a.
        FieldMatrix out(1, R * lc);
        for (std::size_t a = 0; a < R; ++a) {
          for (std::size_t b = 0; b < lc; ++b) out(0, a * lc + b) = c(a, b);
        }
        coeffs.push_back(std::move(out));
      } else if (k + 1 == m) {
        // New end node: block a is weighted by row a of alpha.
        FieldMatrix out(R * lr, 1);
        for (std::size_t a = 0; a < R; ++a) {
          for (std::size_t i = 0; i < lr; ++i) {
            Fp s;
            for (std::size_t b = 0; b < lc; ++b) s += c(i, b) * alpha(a, b);
            out(a * lr + i, 0) = s;
          }
        }
        coeffs.push_back(std::move(out));
      } else {
        FieldMatrix out(R * lr, R * lc);
        for (std::size_t a = 0; a < R; ++a) place(out, c, a * lr, a * lc);
        coeffs.push_back(std::move(out));
      }
    }
    layers.emplace_back(std::move(coeffs));
  }
  return Roabp(r.num_vars(), d, r.order(), std::move(layers));
}

Roabp product_of_univariates(int n, int d, std::vector<int> order, const std::vector<UniPoly>& factors) {
  if (factors.size() != order.size()) throw DimensionMismatch("one factor per layer is required");
  std::vector<PolyMatrix<Fp>> layers;
  for (const auto& f : factors) {
    PolyMatrix<Fp> l(1, 1);
    for (std::size_t j = 0; j < f.coefficients().size(); ++j) {
      l.set_coefficient(static_cast<int>(j), FieldMatrix(1, 1, {f.coefficients()[j]}));
    }
    layers.push_back(std::move(l));
  }
  return Roabp(n, d, std::move(order), std::move(layers));
}

template class BasicRoabp<Fp>;
template class BasicRoabp<UniPoly>;
template DensePoly expand_dense(const Roabp&, std::size_t);
template TDensePoly expand_dense(const TRoabp&, std::size_t);
template Roabp coeff_operator(const Roabp&, std::span<const int>, std::span<const int>);
template TRoabp coeff_operator(const TRoabp&, std::span<const int>, std::span<const int>);
template Roabp negate(const Roabp&);
template TRoabp negate(const TRoabp&);
template Roabp reverse_transpose(const Roabp&);
template TRoabp reverse_transpose(const TRoabp&);

}  // namespace roabp
