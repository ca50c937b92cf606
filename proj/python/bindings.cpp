#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psl2/arith.hpp"
#include "psl2/bhc.hpp"
#include "psl2/errors.hpp"
#include "psl2/heathbrown.hpp"
#include "psl2/invariants.hpp"
#include "psl2/oracle.hpp"
#include "psl2/search.hpp"

namespace py = pybind11;
using namespace psl2;

namespace {

search::CaseId case_from(const std::string& name) {
  const auto id = search::parse_case(name);
  if (!id) throw InvalidArgument("case must be one of a, b, c, d");
  return *id;
}

py::tuple as_tuple(const Invariants& v) { return py::make_tuple(v.i, v.c, v.s, v.n); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Subgroup-class counts of PSL2(p) and the prime-triple search";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_AssertionError);

  py::class_<InvariantProfile>(m, "InvariantProfile")
      .def_readonly("p", &InvariantProfile::p)
      .def_readonly("delta", &InvariantProfile::delta)
      .def_readonly("epsilon", &InvariantProfile::epsilon)
      .def_readonly("k", &InvariantProfile::k)
      .def_readonly("l", &InvariantProfile::l)
      .def_readonly("sigma", &InvariantProfile::sigma)
      .def_readonly("alpha", &InvariantProfile::alpha)
      .def("__repr__", [](const InvariantProfile& q) {
        return py::str("InvariantProfile(p={}, delta={}, epsilon={}, k={}, l={}, sigma={}, alpha={})")
            .format(q.p, q.delta, q.epsilon, q.k, q.l, q.sigma, q.alpha);
      });

  py::class_<ClassEntry>(m, "ClassEntry")
      .def_readonly("label", &ClassEntry::label)
      .def_readonly("order", &ClassEntry::order)
      .def_readonly("num_classes", &ClassEntry::num_classes)
      .def_readonly("self_normalising", &ClassEntry::self_normalising);

  m.def("is_prime", &arith::is_prime, py::arg("n"));
  m.def("factorize", [](u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (const auto& f : arith::factorize(n).factors) out.emplace_back(f.prime, f.exponent);
    return out;
  }, py::arg("n"));
  m.def("big_omega", py::overload_cast<u64>(&arith::big_omega), py::arg("n"));
  m.def("tau", py::overload_cast<u64>(&arith::tau), py::arg("n"));

  m.def("profile", &invariants::profile, py::arg("p"));
  m.def("invariants", [](u64 p) { return as_tuple(invariants::evaluate(invariants::profile(p))); }, py::arg("p"),
        "(i, c, s, n) for a prime p >= 5");
  m.def("census", [](u64 p) { return invariants::census(p).entries; }, py::arg("p"));
  m.def("oracle_census", [](u64 p, bool allow_large) {
    oracle::OracleOptions opts;
    opts.allow_large = allow_large;
    const ClassCensus c = oracle::oracle_census(p, opts);
    return py::make_tuple(c.entries, as_tuple(c.aggregates()));
  }, py::arg("p"), py::arg("allow_large") = false, "Brute-force census; returns (entries, (i, c, s, n))");

  m.def("verify_table", [](bool oracle_rows) {
    invariants::GoldenOptions opts;
    opts.oracle_rows = oracle_rows;
    const auto report = invariants::verify_golden(opts);
    py::dict d;
    d["match"] = report.count(invariants::CellStatus::Match);
    d["mismatch"] = report.count(invariants::CellStatus::Mismatch);
    d["known_issue"] = report.count(invariants::CellStatus::KnownIssue);
    d["passed"] = report.passed(false);
    d["passed_strict"] = report.passed(true);
    return d;
  }, py::arg("oracle_rows") = false);

  m.def("search", [](const std::string& case_name, u64 t_max, unsigned threads, u64 hit_cap) {
    search::ScanOptions opts;
    opts.threads = threads;
    opts.hit_cap = hit_cap;
    search::SearchSummary s;
    {
      py::gil_scoped_release release;
      s = search::scan(search::case_spec(case_from(case_name)), t_max, opts);
    }
    py::list hits;
    for (const auto& h : s.hits) {
      py::dict d;
      d["t"] = h.t;
      d["p"] = h.p;
      d["s"] = h.s;
      d["r"] = h.r;
      d["values"] = as_tuple(h.values);
      d["attains"] = h.attains_all();
      hits.append(d);
    }
    py::dict d;
    d["q_count"] = s.q_count;
    d["sigma_alpha_zero"] = s.sigma_alpha_zero_count;
    d["hits"] = hits;
    return d;
  }, py::arg("case"), py::arg("t_max"), py::arg("threads") = 0, py::arg("hit_cap") = 100);

  m.def("bhc", [](const std::string& case_name, double x, u64 trunc) {
    const bhc::PolynomialFamily family = search::case_spec(case_from(case_name)).family();
    py::gil_scoped_release release;
    const bhc::HlConstant c = bhc::hl_constant(family, trunc);
    const bhc::BhcEstimate e = bhc::estimate_E(family, x, c);
    return std::make_tuple(c.value, e.integral, e.e_value);
  }, py::arg("case"), py::arg("x"), py::arg("trunc") = 10'000'000, "Returns (C, integral, E)");

  m.def("hb_scan", [](u64 limit) {
    std::vector<std::tuple<u64, unsigned, unsigned>> out;
    for (const auto& c : heathbrown::scan_hb(limit)) out.emplace_back(c.p, c.omega_minus, c.omega_plus);
    return out;
  }, py::arg("limit"));
  m.def("hb_bounds", [] { return as_tuple(heathbrown::derive_upper_bounds().bounds); });
}
