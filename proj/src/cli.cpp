#include "roabp/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "roabp/concentration.hpp"
#include "roabp/io.hpp"
#include "roabp/nisan.hpp"
#include "roabp/pit.hpp"

namespace roabp {
namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kError = 2;

struct Global {
  bool porcelain = false;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

// Key/value report that prints "key=value" under --porcelain and
// "key: value" otherwise.
class Report {
 public:
  Report(std::ostream& out, bool porcelain) : out_(out), porcelain_(porcelain) {}
  template <class V>
  void put(std::string_view key, const V& value) {
    out_ << key << (porcelain_ ? "=" : ": ") << value << '\n';
  }

 private:
  std::ostream& out_;
  bool porcelain_;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size()) throw CLI::ValidationError(std::string(what) + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

// Reads all files and checks they share modulus, n and d.
std::vector<RoabpFile> read_compatible(const std::vector<std::string>& paths) {
  std::vector<RoabpFile> files;
  for (const auto& p : paths) files.push_back(read_roabp_file(p));
  for (std::size_t i = 1; i < files.size(); ++i) {
    if (files[i].modulus != files[0].modulus) {
      throw ParseError(paths[i] + ": modulus " + std::to_string(files[i].modulus) + " differs from " +
                       std::to_string(files[0].modulus) + " in " + paths[0]);
    }
    if (files[i].roabp.num_vars() != files[0].roabp.num_vars() ||
        files[i].roabp.degree_bound() != files[0].roabp.degree_bound()) {
      throw ParseError(paths[i] + ": n or d differs from " + paths[0]);
    }
  }
  return files;
}

int cmd_zero(const std::string& path, const Global& g, std::ostream& out) {
  const RoabpFile file = read_roabp_file(path);
  ModulusScope scope(file.modulus);
  Report rep(out, g.porcelain);
  const auto witness = nonzero_witness(file.roabp);
  rep.put("verdict", witness ? "nonzero" : "zero");
  if (witness) {
    rep.put("witness", g.porcelain ? exponent_string(*witness) : monomial_string(*witness));
    rep.put("coefficient", file.roabp.scalar_coeff(*witness).symmetric());
  }
  return witness ? kFails : kHolds;
}

void put_pit_failure(Report& rep, const PitReport& r, bool porcelain) {
  if (r.reason == PitReport::Reason::dependency) {
    rep.put("failing_level", r.level);
    rep.put("failing_dependency", porcelain ? exponent_string(r.monomial) : monomial_string(r.monomial));
  } else {
    rep.put("final_monomial", porcelain ? exponent_string(r.monomial) : monomial_string(r.monomial));
    rep.put("expected", r.expected.symmetric());
    rep.put("actual", r.actual.symmetric());
  }
}

int cmd_equiv(const std::string& a, const std::string& b, const Global& g, std::ostream& out) {
  const auto files = read_compatible({a, b});
  ModulusScope scope(files[0].modulus);
  PitOptions opts;
  opts.jobs = g.jobs;
  const PitReport r = equivalence_report(files[0].roabp, files[1].roabp, opts);
  Report rep(out, g.porcelain);
  rep.put("verdict", r.holds ? "equivalent" : "different");
  if (!r.holds) put_pit_failure(rep, r, g.porcelain);
  return r.holds ? kHolds : kFails;
}

int cmd_sum_zero(const std::vector<std::string>& paths, const Global& g, std::ostream& out) {
  const auto files = read_compatible(paths);
  ModulusScope scope(files[0].modulus);
  std::vector<Roabp> summands;
  for (const auto& f : files) summands.push_back(f.roabp);
  PitOptions opts;
  opts.jobs = g.jobs;
  PitStats stats;
  const PitReport r = sum_zero_report(summands, opts, &stats);
  Report rep(out, g.porcelain);
  rep.put("verdict", r.holds ? "zero" : "nonzero");
  rep.put("summands", summands.size());
  if (!r.holds) put_pit_failure(rep, r, g.porcelain);
  return r.holds ? kHolds : kFails;
}

struct HittingArgs {
  int n = 0, d = 0, c = 0;
  std::uint64_t w = 0;
  std::optional<int> ell;
  std::string shift_file;
  std::size_t t_count = 1;
};

int cmd_hitting_set(const HittingArgs& a, std::ostream& out) {
  ShiftTuple f{std::vector<UniPoly>(static_cast<std::size_t>(a.n))};
  if (!a.shift_file.empty()) f = read_shift_file(a.shift_file, a.n);
  const SumParameters params = sum_parameters(a.w, a.d, a.c);
  const int bound = a.ell.value_or(params.support_bound);
  const std::vector<Fp> ts = default_t_values(a.t_count);
  const auto points = hitting_set(a.n, a.d, bound, f, ts);
  out << "# W=" << params.width_bound << '\n';
  out << "# ell=" << params.ell << '\n';
  out << "# support_bound=" << bound << '\n';
  out << "# t_values=" << ts.size() << '\n';
  out << "# points=" << points.size() << '\n';
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i].value();
    out << '\n';
  }
  return kHolds;
}

int cmd_report_concentration(const std::string& path, const std::optional<std::string>& weights,
                             std::optional<int> search_bound, const Global& g, std::ostream& out) {
  const RoabpFile file = read_roabp_file(path);
  ModulusScope scope(file.modulus);
  const DensePoly p = expand_dense(file.roabp);
  Report rep(out, g.porcelain);
  rep.put("terms", p.size());
  rep.put("algebra_dim", p.dim());
  rep.put("level_before", concentration_level(p));
  if (!weights && !search_bound) return kHolds;

  WeightAssignment w;
  if (weights) {
    w.weights = parse_int_list(*weights, "--weights");
  } else {
    IsolationSearch search;
    search.seed = g.seed;
    const auto found = find_isolating(p, *search_bound, search);
    if (!found) {
      rep.put("isolating", "not found");
      return kFails;
    }
    w = *found;
  }
  if (w.weights.size() != static_cast<std::size_t>(p.num_vars())) {
    throw CLI::ValidationError("--weights needs " + std::to_string(p.num_vars()) + " entries");
  }
  if (std::any_of(w.weights.begin(), w.weights.end(), [](int x) { return x < 0; })) {
    throw CLI::ValidationError("--weights must be non-negative");
  }
  std::ostringstream ws;
  for (std::size_t i = 0; i < w.weights.size(); ++i) ws << (i ? "," : "") << w.weights[i];
  rep.put("weights", ws.str());
  const auto verdict = verify_isolating(w, p);
  const int after = concentration_level(shift_by_weights(p, w));
  const int bound = ceil_log2_plus_one(p.dim());
  if (const auto* cert = std::get_if<IsolationCertificate>(&verdict)) {
    rep.put("isolating", "yes");
    std::string s;
    for (std::size_t i = 0; i < cert->basis.size(); ++i) {
      if (i) s += g.porcelain ? ";" : ", ";
      s += g.porcelain ? exponent_string(cert->basis[i]) : monomial_string(cert->basis[i]);
    }
    rep.put("basis", s.empty() ? "(empty)" : s);
  } else {
    const auto& fail = std::get<IsolationFailure>(verdict);
    rep.put("isolating", "no");
    rep.put("collision_weight", fail.weight);
  }
  rep.put("level_after", after);
  rep.put("bound", bound);
  if (std::holds_alternative<IsolationCertificate>(verdict)) rep.put("check", after <= bound ? "PASS" : "FAIL");
  return kHolds;
}

int cmd_coeff(const std::string& path, const std::optional<std::string>& exponent,
              const std::optional<std::string>& vars, const std::optional<std::string>& exps, const Global& g,
              std::ostream& out) {
  const RoabpFile file = read_roabp_file(path);
  ModulusScope scope(file.modulus);
  const Roabp& r = file.roabp;
  if (!r.is_scalar()) throw CLI::ValidationError("coeff needs a scalar program");
  Report rep(out, g.porcelain);
  rep.put("polynomial", to_string(expand_dense(r)));
  if (exponent) {
    const Exponent a = parse_int_list(*exponent, "--exponent");
    if (a.size() != static_cast<std::size_t>(r.num_vars())) throw CLI::ValidationError("--exponent needs n entries");
    rep.put("coefficient of " + monomial_string(a), r.scalar_coeff(a).symmetric());
  }
  if (vars || exps) {
    if (!vars || !exps) throw CLI::ValidationError("--vars and --exps go together");
    std::vector<int> v = parse_int_list(*vars, "--vars");
    const std::vector<int> e = parse_int_list(*exps, "--exps");
    if (v.size() != e.size()) throw CLI::ValidationError("--vars and --exps differ in length");
    Exponent shown(static_cast<std::size_t>(r.num_vars()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 1 || v[i] > r.num_vars()) throw CLI::ValidationError("--vars entry out of range");
      shown[static_cast<std::size_t>(v[i] - 1)] = e[i];
      v[i] -= 1;
    }
    rep.put("coefficient operator for " + monomial_string(shown), to_string(expand_dense(coeff_operator(r, v, e))));
  }
  return kHolds;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identity tests for read-once oblivious algebraic branching programs", "roabp"};
  app.require_subcommand(1);
  Global g;
  app.add_flag("--porcelain", g.porcelain, "Stable key=value output");
  app.add_option("--seed", g.seed, "Seed for randomized subroutines");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1U, 256U));

  std::string file_a, file_b;
  std::vector<std::string> files;
  auto* zero = app.add_subcommand("zero", "Decide whether one program computes zero");
  zero->add_option("file", file_a)->required();
  auto* equiv = app.add_subcommand("equiv", "Decide whether two programs compute the same polynomial");
  equiv->add_option("a", file_a)->required();
  equiv->add_option("b", file_b)->required();
  auto* sum = app.add_subcommand("sum-zero", "Decide whether a sum of programs is zero");
  sum->add_option("files", files)->required();

  HittingArgs hit;
  auto* hs = app.add_subcommand("hitting-set", "Print the shifted low-support grid");
  hs->add_option("--n", hit.n)->required()->check(CLI::PositiveNumber);
  hs->add_option("--d", hit.d)->required()->check(CLI::PositiveNumber);
  hs->add_option("--w", hit.w)->required()->check(CLI::PositiveNumber);
  hs->add_option("--c", hit.c)->required()->check(CLI::PositiveNumber);
  hs->add_option("--ell", hit.ell, "Override the support bound")->check(CLI::PositiveNumber);
  hs->add_option("--shift-file", hit.shift_file, "JSON shift; default is the zero shift");
  hs->add_option("--t-count", hit.t_count, "Use t = 1..count")->check(CLI::PositiveNumber);

  std::optional<std::string> weights;
  auto* rc = app.add_subcommand("report-concentration", "Support concentration before and after a t^w shift");
  rc->add_option("file", file_a)->required();
  std::optional<int> search_bound;
  rc->add_option("--weights", weights, "Comma-separated weights w1,...,wn");
  rc->add_option("--search-bound", search_bound, "Search isolating weights in [1, B] (uses --seed)")
      ->check(CLI::PositiveNumber)
      ->excludes("--weights");

  std::optional<std::string> exponent, vars, exps;
  auto* co = app.add_subcommand("coeff", "Coefficients and coefficient operators");
  co->add_option("file", file_a)->required();
  co->add_option("--exponent", exponent, "Full exponent e1,...,en");
  co->add_option("--vars", vars, "Variables (1-based) of the coefficient operator");
  co->add_option("--exps", exps, "Their exponents");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*zero) return cmd_zero(file_a, g, out);
    if (*equiv) return cmd_equiv(file_a, file_b, g, out);
    if (*sum) return cmd_sum_zero(files, g, out);
    if (*hs) return cmd_hitting_set(hit, out);
    if (*rc) return cmd_report_concentration(file_a, weights, search_bound, g, out);
    if (*co) return cmd_coeff(file_a, exponent, vars, exps, g, out);
  } catch (const std::exception& e) {
    err << "roabp: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace roabp
