#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace roabp::testing {

std::uint64_t test_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("ROABP_TEST_SEED"); s != nullptr && *s != '\0') {
    return std::strtoull(s, nullptr, 10);
  }
  return fallback;
}

Fp random_fp(Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> u(0, field().modulus() - 1);
  return Fp::from_residue(u(rng));
}

Fp random_small(Rng& rng, int spread) {
  std::uniform_int_distribution<int> u(-spread, spread);
  return Fp(u(rng));
}

std::vector<int> identity_order(int n) {
  std::vector<int> o(static_cast<std::size_t>(n));
  std::iota(o.begin(), o.end(), 0);
  return o;
}

std::vector<int> random_order(Rng& rng, int n) {
  std::vector<int> o = identity_order(n);
  std::shuffle(o.begin(), o.end(), rng);
  return o;
}

std::vector<int> reversed(std::vector<int> order) {
  std::reverse(order.begin(), order.end());
  return order;
}

Roabp random_roabp(Rng& rng, const RoabpSpec& spec, std::vector<int> order) {
  const std::size_t m = order.size();
  std::uniform_int_distribution<int> width(1, spec.w);
  std::bernoulli_distribution keep(spec.density);
  std::vector<std::size_t> dims(m + 1);
  dims[0] = spec.out_rows;
  dims[m] = spec.out_cols;
  for (std::size_t k = 1; k < m; ++k) dims[k] = static_cast<std::size_t>(width(rng));
  std::vector<PolyMatrix<Fp>> layers;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<FieldMatrix> coeffs;
    for (int j = 0; j <= spec.d; ++j) {
      FieldMatrix c(dims[k], dims[k + 1]);
      for (std::size_t r = 0; r < c.rows(); ++r) {
        for (std::size_t s = 0; s < c.cols(); ++s) {
          if (keep(rng)) c(r, s) = spec.small_coefficients ? random_small(rng) : random_fp(rng);
        }
      }
      coeffs.push_back(std::move(c));
    }
    layers.emplace_back(std::move(coeffs));
  }
  return Roabp(spec.n, spec.d, std::move(order), std::move(layers));
}

Roabp perturb(Rng& rng, const Roabp& r) {
  std::vector<PolyMatrix<Fp>> layers = r.layers();
  std::uniform_int_distribution<std::size_t> pick_layer(0, layers.size() - 1);
  auto& l = layers[pick_layer(rng)];
  std::uniform_int_distribution<std::size_t> pr(0, l.rows() - 1), pc(0, l.cols() - 1);
  std::uniform_int_distribution<int> pj(0, r.degree_bound());
  const int j = pj(rng);
  FieldMatrix c = l.coefficient(j);
  c(pr(rng), pc(rng)) += Fp(1 + static_cast<int>(rng() % 5));
  l.set_coefficient(j, std::move(c));
  return Roabp(r.num_vars(), r.degree_bound(), r.order(), std::move(layers));
}

Fp determinant(const FieldMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Fp(1);
  if (n == 1) return m(0, 0);
  Fp det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    FieldMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) minor(r - 1, cc++) = m(r, c);
      }
    }
    const Fp term = m(0, j) * determinant(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

namespace {

// Calls fn on every k-subset of {0..n-1}.
template <class Fn>
bool any_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t echelon_rank(std::vector<std::vector<Fp>> rows) {
  // Reduced row echelon with pivot search by row, independent of the library's
  // column-first routine.
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<bool> used(rows.size(), false);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!used[r] && !rows[r][c].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == rows.size()) continue;
    used[piv] = true;
    ++rank;
    const Fp inv = rows[piv][c].inverse();
    for (auto& x : rows[piv]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == piv || rows[r][c].is_zero()) continue;
      const Fp f = rows[r][c];
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= f * rows[piv][j];
    }
  }
  return rank;
}

}  // namespace

std::size_t minor_rank(const FieldMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    const bool found = any_subset(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
      return any_subset(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
        FieldMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        }
        return !determinant(sub).is_zero();
      });
    });
    if (found) return k;
  }
  return 0;
}

std::size_t oracle_rank(const std::vector<std::vector<Fp>>& vectors) { return echelon_rank(vectors); }

DensePoly oracle_expand(const Roabp& r) {
  // Entries of the running product are kept as dense polynomials.
  const int n = r.num_vars();
  auto univariate = [&](const PolyMatrix<Fp>& layer, std::size_t i, std::size_t j, int var) {
    DensePoly p(n);
    for (std::size_t e = 0; e < layer.coefficients().size(); ++e) {
      Exponent a(static_cast<std::size_t>(n), 0);
      a[static_cast<std::size_t>(var)] = static_cast<int>(e);
      p.add_term(a, layer.coefficients()[e](i, j));
    }
    return p;
  };
  const auto& first = r.layers().front();
  std::vector<std::vector<DensePoly>> acc(first.rows(), std::vector<DensePoly>(first.cols(), DensePoly(n)));
  for (std::size_t i = 0; i < first.rows(); ++i) {
    for (std::size_t j = 0; j < first.cols(); ++j) acc[i][j] = univariate(first, i, j, r.order()[0]);
  }
  for (std::size_t k = 1; k < r.layer_count(); ++k) {
    const auto& l = r.layers()[k];
    std::vector<std::vector<DensePoly>> next(acc.size(), std::vector<DensePoly>(l.cols(), DensePoly(n)));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::size_t j = 0; j < l.cols(); ++j) {
        for (std::size_t s = 0; s < l.rows(); ++s) next[i][j] += multiply(acc[i][s], univariate(l, s, j, r.order()[k]));
      }
    }
    acc = std::move(next);
  }
  DensePoly out(n, r.rows(), r.cols());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    for (std::size_t j = 0; j < acc[i].size(); ++j) {
      for (const auto& [a, c] : acc[i][j].terms()) {
        std::vector<Fp> v(r.rows() * r.cols());
        v[i * r.cols() + j] = c.front();
        out.add_term(a, v);
      }
    }
  }
  return out;
}

DensePoly oracle_shift(const DensePoly& p, const std::vector<Fp>& f) {
  const int n = p.num_vars();
  DensePoly out(n, p.rows(), p.cols());
  for (const auto& [a, c] : p.terms()) {
    // Multiply (x_i + f_i) factor by factor.
    DensePoly term(n, p.rows(), p.cols());
    term.add_term(Exponent(static_cast<std::size_t>(n), 0), c);
    for (int i = 0; i < n; ++i) {
      for (int e = 0; e < a[static_cast<std::size_t>(i)]; ++e) {
        DensePoly lin(n);
        Exponent xi(static_cast<std::size_t>(n), 0);
        xi[static_cast<std::size_t>(i)] = 1;
        lin.add_term(xi, Fp(1));
        lin.add_term(Exponent(static_cast<std::size_t>(n), 0), f[static_cast<std::size_t>(i)]);
        // term * lin with lin scalar: scale each coefficient.
        DensePoly next(n, p.rows(), p.cols());
        for (const auto& [b, cb] : term.terms()) {
          for (const auto& [l, cl] : lin.terms()) {
            Exponent s = b;
            for (std::size_t q = 0; q < s.size(); ++q) s[q] += l[q];
            std::vector<Fp> v = cb;
            for (auto& x : v) x *= cl.front();
            next.add_term(s, v);
          }
        }
        term = std::move(next);
      }
    }
    out += term;
  }
  return out;
}

std::vector<Fp> flatten(const DensePoly& p, const std::vector<Exponent>& monomials) {
  std::vector<Fp> v;
  for (const auto& a : monomials) {
    const auto c = p.coefficient(a);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

DensePoly random_sparse(Rng& rng, int n, int d, std::size_t terms) {
  std::uniform_int_distribution<int> e(0, d);
  std::set<Exponent> chosen;
  std::size_t total = 1;
  for (int i = 0; i < n && total < terms; ++i) total *= static_cast<std::size_t>(d + 1);
  terms = std::min(terms, total);
  while (chosen.size() < terms) {
    Exponent a(static_cast<std::size_t>(n));
    for (auto& x : a) x = e(rng);
    chosen.insert(a);
  }
  DensePoly p(n);
  for (const auto& a : chosen) {
    Fp c;
    while (c.is_zero()) c = random_fp(rng);
    p.add_term(a, c);
  }
  return p;
}

}  // namespace roabp::testing
