#include "psl2/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "psl2/errors.hpp"

namespace psl2::io {

double round_sig(double v, int digits) {
  if (v == 0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json profile_json(const InvariantProfile& prof, const Invariants& v) {
  return {{"p", prof.p},         {"delta", prof.delta}, {"epsilon", prof.epsilon}, {"k", prof.k},
          {"l", prof.l},         {"sigma", prof.sigma}, {"alpha", prof.alpha},     {"i", v.i},
          {"c", v.c},            {"s", v.s},            {"n", v.n}};
}

std::string profile_csv(const InvariantProfile& prof, const Invariants& v) {
  std::string out;
  for (u64 x : {prof.p, prof.delta, prof.epsilon, u64{prof.k}, u64{prof.l}, u64{prof.sigma},
                u64{prof.alpha}, v.i, v.c, v.s, v.n}) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

json census_json(const ClassCensus& census) {
  json entries = json::array();
  for (const auto& e : census.entries)
    entries.push_back({{"label", e.label},
                       {"order", e.order},
                       {"classes", e.num_classes},
                       {"self_normalising", e.self_normalising}});
  const Invariants v = census.aggregates();
  return {{"p", census.p}, {"entries", entries}, {"i", v.i}, {"c", v.c}, {"s", v.s}, {"n", v.n}};
}

ClassCensus census_from_json(const json& j) {
  ClassCensus c;
  c.p = j.at("p").get<u64>();
  const u64 plus = (c.p + 1) / 2;
  for (const auto& e : j.at("entries")) {
    ClassEntry entry;
    entry.label = e.at("label").get<std::string>();
    entry.order = e.at("order").get<u64>();
    entry.num_classes = e.at("classes").get<unsigned>();
    entry.self_normalising = e.at("self_normalising").get<bool>();
    const char head = entry.label.empty() ? '?' : entry.label[0];
    if (entry.label == "A4") entry.kind = SubgroupKind::A4;
    else if (entry.label == "S4") entry.kind = SubgroupKind::S4;
    else if (entry.label == "A5") entry.kind = SubgroupKind::A5;
    else if (head == 'E') entry.kind = SubgroupKind::Affine;
    else if (head == 'C') entry.kind = plus % entry.order == 0 ? SubgroupKind::CyclicPlus : SubgroupKind::CyclicMinus;
    else if (head == 'D') entry.kind = plus % (entry.order / 2) == 0 ? SubgroupKind::DihedralPlus : SubgroupKind::DihedralMinus;
    else throw InvalidArgument("census_from_json: unknown label " + entry.label);
    c.entries.push_back(std::move(entry));
  }
  return c;
}

json lattice_json(const std::vector<oracle::OracleClass>& classes) {
  json out = json::array();
  for (const auto& cls : classes)
    out.push_back({{"order", cls.representative.order()},
                   {"class_size", cls.class_size},
                   {"normaliser_order", cls.normaliser_order},
                   {"label", cls.label}});
  return out;
}

json summary_json(const search::SearchSummary& summary, std::size_t max_hits) {
  json hits = json::array();
  for (std::size_t i = 0; i < summary.hits.size() && i < max_hits; ++i) {
    const auto& h = summary.hits[i];
    hits.push_back({{"t", h.t}, {"p", h.p}, {"s", h.s}, {"r", h.r}, {"attains", h.attains}});
  }
  return {{"case", std::string(search::to_string(summary.case_id))},
          {"t_max", summary.t_max},
          {"q_count", summary.q_count},
          {"sigma_alpha_zero", summary.sigma_alpha_zero_count},
          {"first_hits", hits}};
}

ScanRecord scan_record_from_json(const json& j) {
  const auto id = search::parse_case(j.at("case").get<std::string>());
  if (!id) throw InvalidArgument("scan record: unknown case");
  return {*id, j.at("t_max").get<u64>(), j.at("q_count").get<u64>()};
}

json estimate_json(const bhc::PolynomialFamily& family, const bhc::BhcEstimate& est) {
  json fam = json::array();
  for (const auto& f : family.polys()) fam.push_back(f.coeffs());
  return {{"family", fam},
          {"x", round_sig(est.x)},
          {"a", round_sig(est.a)},
          {"P", est.constant.truncation_bound},
          {"C", round_sig(est.constant.value)},
          {"integral", round_sig(est.integral)},
          {"E", round_sig(est.e_value)},
          {"tail_bound", round_sig(est.constant.tail_bound_estimate)}};
}

bhc::PolynomialFamily family_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("family: expected a non-empty array of coefficient arrays");
  std::vector<bhc::Polynomial> polys;
  for (const auto& coeffs : j) {
    if (!coeffs.is_array()) throw InvalidArgument("family: each member must be an array of integers");
    for (const auto& c : coeffs)
      if (!c.is_number_integer()) throw InvalidArgument("family: coefficients must be integers");
    polys.emplace_back(coeffs.get<std::vector<bhc::i64>>());
  }
  return bhc::PolynomialFamily(std::move(polys));
}

std::string hb_csv(const heathbrown::HbCandidate& c) {
  const Invariants v = c.values.value_or(Invariants{});
  return std::to_string(c.p) + ',' + std::to_string(c.omega_minus) + ',' + std::to_string(c.omega_plus) + ',' +
         std::to_string(v.i) + ',' + std::to_string(v.c) + ',' + std::to_string(v.s) + ',' + std::to_string(v.n);
}

json golden_report_json(const invariants::GoldenReport& report) {
  json cells = json::array();
  for (const auto& c : report.cells)
    cells.push_back({{"p", c.p},
                     {"column", c.column},
                     {"printed", c.printed},
                     {"computed", c.computed},
                     {"status", std::string(invariants::to_string(c.status))},
                     {"source", c.source}});
  return {{"formula_rows", report.formula_rows},
          {"oracle_rows", report.oracle_rows},
          {"matches", report.count(invariants::CellStatus::Match)},
          {"mismatches", report.count(invariants::CellStatus::Mismatch)},
          {"known_issues", report.count(invariants::CellStatus::KnownIssue)},
          {"not_validated", report.count(invariants::CellStatus::NotValidated)},
          {"cells", cells}};
}

}  // namespace psl2::io
