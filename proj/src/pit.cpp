#include "roabp/pit.hpp"

#include <atomic>
#include <exception>
#include <thread>

namespace roabp {

void PitStats::merge(const PitStats& o) {
  if (dependencies_per_depth.size() < o.dependencies_per_depth.size()) {
    dependencies_per_depth.resize(o.dependencies_per_depth.size());
  }
  for (std::size_t i = 0; i < o.dependencies_per_depth.size(); ++i) {
    dependencies_per_depth[i] += o.dependencies_per_depth[i];
  }
  max_width = std::max(max_width, o.max_width);
}

namespace {

void check_compatible(std::span<const Roabp> rs) {
  for (const auto& r : rs) {
    if (!r.is_scalar()) throw PreconditionViolation("identity tests need scalar-output programs");
    if (r.num_vars() != rs.front().num_vars() || r.degree_bound() != rs.front().degree_bound()) {
      throw DimensionMismatch("programs differ in n or d");
    }
  }
}

PitReport sum_is_zero(std::span<const Roabp> summands, const PitOptions& opts, PitStats& stats, std::size_t depth);

// Whether the dependency (level, i) of profile holds for sum(rest).
bool dependency_holds_for_sum(const SpanningProfile& profile, std::size_t level, std::size_t i,
                              std::span<const Roabp> rest, const PitOptions& opts, PitStats& stats,
                              std::size_t depth) {
  if (stats.dependencies_per_depth.size() <= depth) stats.dependencies_per_depth.resize(depth + 1);
  ++stats.dependencies_per_depth[depth];
  std::vector<Roabp> combos;
  combos.reserve(rest.size());
  for (const auto& r : rest) {
    Roabp c = dependency_combination(r, profile, level, i);
    stats.max_width = std::max(stats.max_width, c.width());
    if (c.max_layer_entries() > opts.width_cap_entries) {
      throw RecursionBudgetExceeded("dependency combination of width " + std::to_string(c.width()) +
                                    " exceeds the cap of " + std::to_string(opts.width_cap_entries) +
                                    " entries per layer");
    }
    combos.push_back(opts.reduce_widths ? reduce_width(c) : std::move(c));
  }
  return sum_is_zero(combos, opts, stats, depth + 1).holds;
}

// Whether a == sum(rest), by checking rest against a's profile.
PitReport follows(const Roabp& a, std::span<const Roabp> rest, const PitOptions& opts, PitStats& stats,
                  std::size_t depth) {
  const SpanningProfile profile = build_profile(a);
  struct Task {
    std::size_t level, index;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 1; k <= profile.depth(); ++k) {
    const ProfileLevel& l = profile.levels[k];
    for (std::size_t i = 0; i < l.dep.size(); ++i) {
      if (!l.is_span_member(i)) tasks.push_back({k, i});
    }
  }
  auto failure = [&](const Task& t) {
    PitReport rep;
    rep.holds = false;
    rep.reason = PitReport::Reason::dependency;
    rep.level = t.level;
    rep.monomial = profile.full_exponent(profile.levels[t.level].dep[t.index]);
    return rep;
  };
  const unsigned jobs = depth == 0 ? std::max(1U, opts.jobs) : 1U;
  if (jobs == 1 || tasks.size() < 2) {
    for (const Task& t : tasks) {
      if (!dependency_holds_for_sum(profile, t.level, t.index, rest, opts, stats, depth)) return failure(t);
    }
  } else {
    // Workers claim tasks in order; the earliest failing task is reported.
    std::vector<char> ok(tasks.size(), 1);
    std::vector<PitStats> local(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{tasks.size()};
    const PrimeField f = field();
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        ModulusScope scope(f);
        try {
          for (std::size_t t = next++; t < tasks.size() && t < first_failure.load(); t = next++) {
            if (!dependency_holds_for_sum(profile, tasks[t].level, tasks[t].index, rest, opts, local[w], depth)) {
              ok[t] = 0;
              std::size_t cur = first_failure.load();
              while (t < cur && !first_failure.compare_exchange_weak(cur, t)) {
              }
            }
          }
        } catch (...) {
          errors[w] = std::current_exception();
          first_failure.store(0);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (const auto& s : local) stats.merge(s);
    const std::size_t t = first_failure.load();
    if (t < tasks.size()) return failure(tasks[t]);
  }
  PitReport rep;
  rep.monomial = profile.full_exponent(profile.final_monomial_prefix());
  rep.expected = profile.final_scalar;
  for (const auto& r : rest) rep.actual += r.scalar_coeff(rep.monomial);
  if (rep.expected != rep.actual) {
    rep.holds = false;
    rep.reason = PitReport::Reason::final_scalar;
    rep.level = profile.depth();
  }
  return rep;
}

PitReport sum_is_zero(std::span<const Roabp> summands, const PitOptions& opts, PitStats& stats, std::size_t depth) {
  if (summands.empty()) return PitReport{};
  if (summands.size() == 1) {
    PitReport rep;
    const SpanningProfile profile = build_profile(summands.front());
    rep.monomial = profile.full_exponent(profile.final_monomial_prefix());
    rep.actual = profile.final_scalar;
    if (!rep.actual.is_zero()) {
      rep.holds = false;
      rep.reason = PitReport::Reason::final_scalar;
      rep.level = profile.depth();
    }
    return rep;
  }
  return follows(negate(summands.front()), summands.subspan(1), opts, stats, depth);
}

}  // namespace

PitReport equivalence_report(const Roabp& a, const Roabp& b, const PitOptions& opts, PitStats* stats) {
  const Roabp pair[] = {a, b};
  check_compatible(pair);
  PitStats local;
  PitReport rep = follows(a, std::span<const Roabp>(&b, 1), opts, local, 0);
  if (stats != nullptr) stats->merge(local);
  return rep;
}

bool equivalence_test(const Roabp& a, const Roabp& b, const PitOptions& opts) {
  return equivalence_report(a, b, opts).holds;
}

PitReport sum_zero_report(std::span<const Roabp> summands, const PitOptions& opts, PitStats* stats) {
  if (summands.empty()) throw PreconditionViolation("a sum needs at least one summand");
  check_compatible(summands);
  PitStats local;
  PitReport rep = sum_is_zero(summands, opts, local, 0);
  if (stats != nullptr) stats->merge(local);
  return rep;
}

bool sum_zero_test(std::span<const Roabp> summands, const PitOptions& opts) {
  return sum_zero_report(summands, opts).holds;
}

bool SumTarget::dependency_holds(const SpanningProfile& profile, std::size_t level, std::size_t dep_index) const {
  PitStats stats;
  return dependency_holds_for_sum(profile, level, dep_index, summands_, opts_, stats, 0);
}

Fp SumTarget::coefficient(const Exponent& full) const {
  Fp acc;
  for (const auto& r : summands_) acc += r.scalar_coeff(full);
  return acc;
}

std::variant<Decomposition, Representable> decompose(const Roabp& a, std::span<const Roabp> b_summands,
                                                     const PitOptions& opts) {
  if (b_summands.empty()) throw PreconditionViolation("B needs at least one summand");
  std::vector<Roabp> all{a};
  all.insert(all.end(), b_summands.begin(), b_summands.end());
  check_compatible(all);

  const SpanningProfile profile = build_profile(a);
  const SumTarget target(std::vector<Roabp>(b_summands.begin(), b_summands.end()), opts);
  for (std::size_t k = 1; k <= profile.depth(); ++k) {
    const ProfileLevel& l = profile.levels[k];
    for (std::size_t i = 0; i < l.dep.size(); ++i) {
      if (l.is_span_member(i) || target.dependency_holds(profile, k, i)) continue;

      const std::size_t s = profile.levels[k - 1].span.size();
      const auto d1 = static_cast<std::size_t>(profile.d + 1);
      std::vector<FieldMatrix> e(d1, FieldMatrix(s, s * d1));
      for (std::size_t row = 0; row < s; ++row) {
        for (std::size_t j = 0; j < d1; ++j) e[j](row, row * d1 + j) = Fp(1);
      }
      PolyMatrix<Fp> expander(std::move(e));

      std::vector<PolyMatrix<Fp>> layers = profile_layers(profile);
      layers.resize(k - 1);
      layers.push_back(expander);
      Decomposition dec{k, l.dep[i], Roabp(profile.n, profile.d, profile.prefix_vars(k), std::move(layers)),
                        {}, {}, {}, std::move(expander)};

      const std::vector<int> vars = profile.prefix_vars(k);
      for (const auto& b : l.dep) {
        dec.left.push_back(expand_dense(coeff_operator(a, vars, b)));
        DensePoly q(profile.n);
        for (const auto& r : b_summands) q += expand_dense(coeff_operator(r, vars, b));
        dec.right.push_back(std::move(q));
      }

      dec.gamma.assign(l.dep.size(), Fp{});
      dec.gamma[i] = Fp(1);
      for (std::size_t h = 0; h < l.span.size(); ++h) dec.gamma[l.span_positions[h]] = -l.gamma[i][h];
      return dec;
    }
  }
  return Representable{};
}

}  // namespace roabp
