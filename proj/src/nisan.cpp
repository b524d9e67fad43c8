#include "roabp/nisan.hpp"

#include <algorithm>
#include <map>

#include "roabp/linalg.hpp"

namespace roabp {

bool ProfileLevel::is_span_member(std::size_t dep_index) const {
  return std::find(span_positions.begin(), span_positions.end(), dep_index) != span_positions.end();
}

std::size_t SpanningProfile::width() const noexcept {
  std::size_t w = 0;
  for (const auto& l : levels) w = std::max(w, l.span.size());
  return w;
}

std::size_t SpanningProfile::dependency_count() const noexcept {
  std::size_t c = 0;
  for (const auto& l : levels) c += l.dep.size() - std::min(l.dep.size(), l.span.size());
  return c;
}

Exponent SpanningProfile::full_exponent(const Exponent& prefix) const {
  Exponent a(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < prefix.size(); ++i) a[static_cast<std::size_t>(order[i])] = prefix[i];
  return a;
}

std::vector<int> SpanningProfile::prefix_vars(std::size_t k) const {
  return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)};
}

namespace {

// Shared greedy construction; vectors_of(k, previous level, dep) supplies the
// coefficient vector of every dep member at cut k.
template <class VectorsOf>
SpanningProfile build_generic(int n, int d, std::vector<int> order, VectorsOf&& vectors_of) {
  SpanningProfile prof;
  prof.n = n;
  prof.d = d;
  prof.order = std::move(order);
  ProfileLevel root;
  root.span = {Exponent{}};
  root.span_positions = {0};
  prof.levels.push_back(std::move(root));
  for (std::size_t k = 1; k <= prof.order.size(); ++k) {
    const ProfileLevel& prev = prof.levels.back();
    ProfileLevel level;
    for (const auto& a : prev.span) {
      for (int j = 0; j <= d; ++j) {
        Exponent b = a;
        b.push_back(j);
        level.dep.push_back(std::move(b));
      }
    }
    level.vectors = vectors_of(k, prev, level.dep);
    const std::size_t dim = level.vectors.empty() ? 0 : level.vectors.front().size();
    RowBasis basis(dim);
    for (std::size_t i = 0; i < level.dep.size(); ++i) {
      if (basis.insert(level.vectors[i])) level.span_positions.push_back(i);
    }
    // All vectors vanish: keep one member so every cut stays nonempty.
    const bool degenerate = level.span_positions.empty();
    if (degenerate) level.span_positions.push_back(0);
    for (std::size_t pos : level.span_positions) level.span.push_back(level.dep[pos]);
    level.gamma.resize(level.dep.size());
    for (std::size_t i = 0; i < level.dep.size(); ++i) {
      auto it = std::find(level.span_positions.begin(), level.span_positions.end(), i);
      if (it != level.span_positions.end()) {
        std::vector<Fp> e(level.span.size());
        e[static_cast<std::size_t>(it - level.span_positions.begin())] = Fp(1);
        level.gamma[i] = std::move(e);
      } else if (degenerate) {
        level.gamma[i] = std::vector<Fp>(1);
      } else {
        level.gamma[i] = *basis.express(level.vectors[i]);
      }
    }
    prof.levels.push_back(std::move(level));
  }
  const ProfileLevel& last = prof.levels.back();
  const auto& v = last.vectors[last.span_positions.front()];
  prof.final_scalar = v.empty() ? Fp{} : v.front();
  return prof;
}

}  // namespace

SpanningProfile build_profile(const Roabp& r) {
  if (!r.is_scalar()) throw PreconditionViolation("spanning profiles need a scalar-output program");
  return build_generic(r.num_vars(), r.degree_bound(), r.order(),
                       [&r](std::size_t k, const ProfileLevel& prev, const std::vector<Exponent>& dep) {
                         std::vector<std::vector<Fp>> prev_vectors;
                         if (k == 1) {
                           prev_vectors.push_back({Fp(1)});
                         } else {
                           for (std::size_t pos : prev.span_positions) prev_vectors.push_back(prev.vectors[pos]);
                         }
                         const auto& layer = r.layers()[k - 1];
                         std::vector<std::vector<Fp>> out;
                         out.reserve(dep.size());
                         for (const auto& b : dep) {
                           const std::size_t parent = out.size() / static_cast<std::size_t>(r.degree_bound() + 1);
                           const auto& pv = prev_vectors[parent];
                           FieldMatrix row(1, pv.size(), pv);
                           out.push_back((row * layer.coefficient(b.back())).data());
                         }
                         return out;
                       });
}

SpanningProfile build_profile(const DensePoly& p, std::vector<int> order, int d) {
  if (p.dim() != 1) throw PreconditionViolation("spanning profiles need a scalar polynomial");
  if (order.size() != static_cast<std::size_t>(p.num_vars())) {
    throw PreconditionViolation("dense profiles need an order over all variables");
  }
  const std::vector<int> ord = order;
  return build_generic(p.num_vars(), d, std::move(order),
                       [&p, &ord](std::size_t k, const ProfileLevel&, const std::vector<Exponent>& dep) {
                         // Split every term into its prefix on ord[0..k) and the rest.
                         std::map<Exponent, std::size_t> suffix_index;
                         std::map<Exponent, std::vector<std::pair<Exponent, Fp>>> by_prefix;
                         for (const auto& [a, c] : p.terms()) {
                           Exponent prefix(k);
                           Exponent rest = a;
                           for (std::size_t i = 0; i < k; ++i) {
                             const auto v = static_cast<std::size_t>(ord[i]);
                             prefix[i] = a[v];
                             rest[v] = 0;
                           }
                           suffix_index.emplace(rest, 0);
                           by_prefix[prefix].emplace_back(rest, c.front());
                         }
                         std::size_t next = 0;
                         for (auto& [rest, idx] : suffix_index) idx = next++;
                         std::vector<std::vector<Fp>> out;
                         out.reserve(dep.size());
                         for (const auto& b : dep) {
                           std::vector<Fp> v(suffix_index.size());
                           auto it = by_prefix.find(b);
                           if (it != by_prefix.end()) {
                             for (const auto& [rest, c] : it->second) v[suffix_index.at(rest)] = c;
                           }
                           out.push_back(std::move(v));
                         }
                         return out;
                       });
}

bool zero_test(const Roabp& r) { return build_profile(r).final_scalar.is_zero(); }

std::optional<Exponent> nonzero_witness(const Roabp& r) {
  const SpanningProfile prof = build_profile(r);
  if (prof.final_scalar.is_zero()) return std::nullopt;
  return prof.full_exponent(prof.final_monomial_prefix());
}

Roabp dependency_combination(const Roabp& r, const SpanningProfile& profile, std::size_t level,
                             std::size_t dep_index) {
  const ProfileLevel& l = profile.levels.at(level);
  const std::vector<int> vars = profile.prefix_vars(level);
  std::vector<Roabp> parts;
  std::vector<Fp> weights;
  parts.push_back(coeff_operator(r, vars, l.dep.at(dep_index)));
  weights.push_back(Fp(1));
  const auto& g = l.gamma[dep_index];
  for (std::size_t h = 0; h < l.span.size(); ++h) {
    if (g[h].is_zero()) continue;
    parts.push_back(coeff_operator(r, vars, l.span[h]));
    weights.push_back(-g[h]);
  }
  return linear_combination(parts, weights);
}

bool RoabpTarget::dependency_holds(const SpanningProfile& profile, std::size_t level, std::size_t dep_index) const {
  return zero_test(dependency_combination(r_, profile, level, dep_index));
}

bool DenseTarget::dependency_holds(const SpanningProfile& profile, std::size_t level, std::size_t dep_index) const {
  const ProfileLevel& l = profile.levels.at(level);
  const std::vector<int> vars = profile.prefix_vars(level);
  DensePoly acc = slice(p_, vars, l.dep.at(dep_index));
  const auto& g = l.gamma[dep_index];
  for (std::size_t h = 0; h < l.span.size(); ++h) {
    if (!g[h].is_zero()) acc -= slice(p_, vars, l.span[h]) * g[h];
  }
  return acc.is_zero();
}

std::vector<PolyMatrix<Fp>> profile_layers(const SpanningProfile& profile) {
  std::vector<PolyMatrix<Fp>> layers;
  const auto d1 = static_cast<std::size_t>(profile.d + 1);
  for (std::size_t k = 1; k <= profile.depth(); ++k) {
    const ProfileLevel& prev = profile.levels[k - 1];
    const ProfileLevel& cur = profile.levels[k];
    std::vector<FieldMatrix> coeffs(d1, FieldMatrix(prev.span.size(), cur.span.size()));
    for (std::size_t i = 0; i < prev.span.size(); ++i) {
      for (std::size_t j = 0; j < d1; ++j) {
        const auto& g = cur.gamma[i * d1 + j];
        for (std::size_t h = 0; h < cur.span.size(); ++h) coeffs[j](i, h) = g[h];
      }
    }
    layers.emplace_back(std::move(coeffs));
  }
  return layers;
}

Roabp reconstruct_trusted(const SpanningProfile& profile, Fp final_scalar) {
  std::vector<PolyMatrix<Fp>> layers = profile_layers(profile);
  layers.back() *= final_scalar;
  return Roabp(profile.n, profile.d, profile.order, std::move(layers));
}

Roabp reconstruct_trusted(const SpanningProfile& profile) { return reconstruct_trusted(profile, profile.final_scalar); }

std::variant<Roabp, NotRepresentable> reconstruct(const SpanningProfile& profile, const PolynomialTarget& target) {
  for (std::size_t k = 1; k <= profile.depth(); ++k) {
    const ProfileLevel& l = profile.levels[k];
    for (std::size_t i = 0; i < l.dep.size(); ++i) {
      if (l.is_span_member(i)) continue;
      if (!target.dependency_holds(profile, k, i)) return NotRepresentable{k, l.dep[i]};
    }
  }
  return reconstruct_trusted(profile, target.coefficient(profile.full_exponent(profile.final_monomial_prefix())));
}

FieldMatrix prefix_coefficient(const Roabp& r, std::size_t k, const Exponent& prefix) {
  FieldMatrix acc = FieldMatrix::identity(r.rows());
  for (std::size_t i = 0; i < k; ++i) acc = acc * r.layers()[i].coefficient(prefix[i]);
  return acc;
}

Roabp reduce_width(const Roabp& r) {
  const Roabp forward = reconstruct_trusted(build_profile(r));
  return reverse_transpose(reconstruct_trusted(build_profile(reverse_transpose(forward))));
}

Roabp encode_dense(const DensePoly& p, std::vector<int> order, int d) {
  return reconstruct_trusted(build_profile(p, std::move(order), d));
}

}  // namespace roabp
