#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <tuple>

#include "roabp/concentration.hpp"
#include "roabp/io.hpp"
#include "roabp/nisan.hpp"
#include "roabp/pit.hpp"

namespace py = pybind11;

namespace roabp {
namespace {

// A program bundled with the modulus it was read under; every method runs
// under that modulus.
class Program {
 public:
  explicit Program(RoabpFile f) : file_(std::move(f)) {}

  static Program from_json(const std::string& text) { return Program(parse_roabp(text, "<python>")); }
  static Program load(const std::string& path) { return Program(read_roabp_file(path)); }

  std::uint64_t modulus() const { return file_.modulus; }
  const Roabp& roabp() const { return file_.roabp; }

  template <class Fn>
  auto with_field(Fn&& fn) const {
    ModulusScope scope(file_.modulus);
    return fn(file_.roabp);
  }

 private:
  RoabpFile file_;
};

std::vector<Fp> to_points(const std::vector<std::int64_t>& xs) {
  std::vector<Fp> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

const Program& same_field(const std::vector<Program>& ps) {
  if (ps.empty()) throw std::invalid_argument("need at least one program");
  for (const auto& p : ps) {
    if (p.modulus() != ps.front().modulus()) throw std::invalid_argument("programs use different moduli");
  }
  return ps.front();
}

// {exponent tuple: residue}; tuples so the keys are hashable.
py::dict scalar_terms(const DensePoly& p) {
  py::dict out;
  for (const auto& [a, c] : p.terms()) out[py::tuple(py::cast(a))] = c.front().value();
  return out;
}

DensePoly from_terms(int n, const std::map<std::vector<int>, std::int64_t>& terms) {
  DensePoly p(n);
  for (const auto& [a, c] : terms) {
    if (a.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("exponent length differs from n");
    p.add_term(a, Fp(c));
  }
  return p;
}

}  // namespace
}  // namespace roabp

PYBIND11_MODULE(_core, m) {
  using namespace roabp;
  m.doc() = "Identity tests for read-once oblivious algebraic branching programs";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<RecursionBudgetExceeded>(m, "RecursionBudgetExceeded", PyExc_RuntimeError);

  py::class_<Program>(m, "Program")
      .def_static("from_json", &Program::from_json, py::arg("text"))
      .def_static("load", &Program::load, py::arg("path"))
      .def_property_readonly("modulus", &Program::modulus)
      .def_property_readonly("n", [](const Program& p) { return p.roabp().num_vars(); })
      .def_property_readonly("d", [](const Program& p) { return p.roabp().degree_bound(); })
      .def_property_readonly("width", [](const Program& p) { return p.roabp().width(); })
      .def_property_readonly("order", [](const Program& p) {
        std::vector<int> one_based;
        for (int v : p.roabp().order()) one_based.push_back(v + 1);
        return one_based;
      })
      .def("to_json", [](const Program& p) { return p.with_field([](const Roabp& r) { return serialize(r); }); })
      .def("evaluate",
           [](const Program& p, const std::vector<std::int64_t>& x) {
             return p.with_field([&](const Roabp& r) {
               if (!r.is_scalar()) throw std::invalid_argument("evaluate needs a scalar program");
               const auto pt = to_points(x);
               return r.evaluate(pt)(0, 0).value();
             });
           })
      .def("coefficient",
           [](const Program& p, const std::vector<int>& a) {
             return p.with_field([&](const Roabp& r) { return r.scalar_coeff(a).value(); });
           })
      .def("expand",
           [](const Program& p) { return p.with_field([](const Roabp& r) { return scalar_terms(expand_dense(r)); }); })
      .def("is_zero", [](const Program& p) { return p.with_field([](const Roabp& r) { return zero_test(r); }); })
      .def("nonzero_witness",
           [](const Program& p) { return p.with_field([](const Roabp& r) { return nonzero_witness(r); }); })
      .def("concentration_level",
           [](const Program& p) {
             return p.with_field([](const Roabp& r) { return concentration_level(expand_dense(r)); });
           })
      .def("equivalent",
           [](const Program& a, const Program& b) {
             same_field({a, b});
             return a.with_field([&](const Roabp& r) { return equivalence_test(r, b.roabp()); });
           })
      .def("__repr__", [](const Program& p) {
        return "<roabp.Program n=" + std::to_string(p.roabp().num_vars()) +
               " d=" + std::to_string(p.roabp().degree_bound()) + " width=" + std::to_string(p.roabp().width()) +
               ">";
      });

  m.def(
      "sum_is_zero",
      [](const std::vector<Program>& ps, unsigned jobs) {
        const Program& first = same_field(ps);
        ModulusScope scope(first.modulus());
        std::vector<Roabp> rs;
        for (const auto& p : ps) rs.push_back(p.roabp());
        PitOptions opts;
        opts.jobs = jobs;
        py::gil_scoped_release release;
        return sum_zero_test(rs, opts);
      },
      py::arg("programs"), py::arg("jobs") = 1);

  m.def(
      "concentration_level",
      [](int n, const std::map<std::vector<int>, std::int64_t>& terms, std::uint64_t modulus) {
        ModulusScope scope(modulus);
        return concentration_level(from_terms(n, terms));
      },
      py::arg("n"), py::arg("terms"), py::arg("modulus") = PrimeField::kDefaultModulus,
      "Concentration level of a scalar polynomial given as {exponent tuple: coefficient}.");

  m.def(
      "sum_parameters",
      [](std::uint64_t w, int d, int c) {
        const SumParameters s = sum_parameters(w, d, c);
        return std::make_tuple(s.width_bound, s.ell, s.support_bound);
      },
      py::arg("w"), py::arg("d"), py::arg("c"), "(W, ell, support bound) for sums of c programs of width w.");

  m.def(
      "hitting_set",
      [](int n, int d, int ell, const std::vector<int>& weights, std::size_t t_count, std::uint64_t modulus) {
        ModulusScope scope(modulus);
        const ShiftTuple f = weights.empty() ? ShiftTuple{std::vector<UniPoly>(static_cast<std::size_t>(n))}
                                             : weights_to_shift(WeightAssignment{weights});
        const auto ts = default_t_values(t_count);
        std::vector<std::vector<std::uint64_t>> out;
        for (const auto& pt : hitting_set(n, d, ell, f, ts)) {
          std::vector<std::uint64_t> row;
          for (Fp x : pt) row.push_back(x.value());
          out.push_back(std::move(row));
        }
        return out;
      },
      py::arg("n"), py::arg("d"), py::arg("ell"), py::arg("weights") = std::vector<int>{}, py::arg("t_count") = 1,
      py::arg("modulus") = PrimeField::kDefaultModulus,
      "Points h + t^weights over support-below-ell grids; empty weights mean no shift.");
}
