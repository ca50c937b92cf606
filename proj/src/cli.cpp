#include "psl2/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <optional>
#include <string>

#include "psl2/arith.hpp"
#include "psl2/bhc.hpp"
#include "psl2/errors.hpp"
#include "psl2/heathbrown.hpp"
#include "psl2/invariants.hpp"
#include "psl2/oracle.hpp"
#include "psl2/search.hpp"
#include "psl2/serialize.hpp"

namespace psl2::cli {

namespace {

using io::json;

enum class Format { Table, Json, Csv };

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Table;
}

// Accepts plain integers and scientific shorthands such as 1e9.
u64 parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  try {
    if (text.find_first_of("eE.") == std::string::npos) {
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size()) return v;
    } else {
      const long double v = std::stold(text, &used);
      if (used == text.size() && v >= 0 && v < 1.8e19L && std::floor(v) == v) return static_cast<u64>(v);
    }
  } catch (const std::exception&) {
  }
  throw InvalidArgument(std::string(what) + ": expected a non-negative integer, got '" + text + "'");
}

double parse_real(const std::string& text, const char* what) {
  std::size_t used = 0;
  try {
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument(std::string(what) + ": expected a real number, got '" + text + "'");
}

void print_census_table(std::ostream& out, const ClassCensus& c, const char* title) {
  fmt::print(out, "{} census of PSL2({})\n", title, c.p);
  fmt::print(out, "  {:<12} {:>8} {:>8}  {}\n", "type", "order", "classes", "self-normalising");
  for (const auto& e : c.entries)
    fmt::print(out, "  {:<12} {:>8} {:>8}  {}\n", e.label, e.order, e.num_classes, e.self_normalising ? "yes" : "no");
  const Invariants v = c.aggregates();
  fmt::print(out, "  i={} c={} s={} n={}\n", v.i, v.c, v.s, v.n);
}

void print_census_csv(std::ostream& out, const ClassCensus& c, const char* source) {
  for (const auto& e : c.entries)
    fmt::print(out, "{},{},{},{},{}\n", source, e.label, e.order, e.num_classes, e.self_normalising ? 1 : 0);
}

struct Common {
  std::string format;
  unsigned threads = 0;
};

void add_format(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format: table, json or csv (hb defaults to csv)")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->envname("PSL2_FORMAT");
}

void add_threads(CLI::App* sub, Common& common) {
  sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)")->envname("PSL2_THREADS");
}

// ---------------------------------------------------------------- commands

int oracle_redirect(u64 p, Format fmt, std::ostream& out, std::ostream& err) {
  err << "notice: the closed forms need p >= 5; computing PSL2(" << p << ") by brute force\n";
  const ClassCensus c = oracle::oracle_census(p);
  const Invariants v = c.aggregates();
  switch (fmt) {
    case Format::Json: out << io::census_json(c).dump() << '\n'; break;
    case Format::Csv: out << "p,i,c,s,n\n" << p << ',' << v.i << ',' << v.c << ',' << v.s << ',' << v.n << '\n'; break;
    case Format::Table: print_census_table(out, c, "Brute-force"); break;
  }
  return kOk;
}

int cmd_invariants(u64 p, Format fmt, std::ostream& out, std::ostream& err) {
  if (p == 3) return oracle_redirect(p, fmt, out, err);
  const InvariantProfile prof = invariants::profile(p);
  const Invariants v = invariants::evaluate(prof);
  switch (fmt) {
    case Format::Json: out << io::profile_json(prof, v).dump() << '\n'; break;
    case Format::Csv: out << io::profile_csv(prof, v) << '\n'; break;
    case Format::Table:
      fmt::print(out, "PSL2({}): delta={} epsilon={} k={} l={} sigma={} alpha={}\n", p, prof.delta, prof.epsilon,
                 prof.k, prof.l, prof.sigma, prof.alpha);
      fmt::print(out, "i={} c={} s={} n={}\n", v.i, v.c, v.s, v.n);
      break;
  }
  return kOk;
}

struct CensusArgs {
  u64 p = 0;
  bool oracle = false;
  bool allow_large = false;
  bool lattice = false;
};

int cmd_census(const CensusArgs& a, Format fmt, std::ostream& out) {
  if (!a.oracle) {
    if (a.p == 3) throw InvalidArgument("census: p = 3 is only available with --oracle");
    const ClassCensus c = invariants::census(a.p);
    switch (fmt) {
      case Format::Json: out << io::census_json(c).dump() << '\n'; break;
      case Format::Csv:
        out << "source,label,order,classes,self_normalising\n";
        print_census_csv(out, c, "formula");
        break;
      case Format::Table: print_census_table(out, c, "Formula"); break;
    }
    return kOk;
  }

  oracle::OracleOptions opts;
  opts.allow_large = a.allow_large;
  // Range problems are usage errors; surface them before any work.
  if (a.p < 3 || a.p > (a.allow_large ? 19u : 13u) || !arith::is_prime(a.p))
    throw InvalidArgument("census --oracle: p must be a prime in [3, 13], or up to 19 with --allow-large");
  std::optional<ClassCensus> formula;
  if (a.p >= 5) formula = invariants::census(a.p);
  const oracle::OracleRun run = oracle::run(a.p, opts);
  const std::vector<std::string> diff = formula ? census_diff(*formula, run.census) : std::vector<std::string>{};

  switch (fmt) {
    case Format::Json: {
      json j{{"formula", formula ? io::census_json(*formula) : json(nullptr)},
             {"oracle", io::census_json(run.census)},
             {"diff", diff}};
      if (a.lattice) j["lattice"] = io::lattice_json(run.classes);
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "source,label,order,classes,self_normalising\n";
      if (formula) print_census_csv(out, *formula, "formula");
      print_census_csv(out, run.census, "oracle");
      for (const auto& d : diff) out << "diff," << d << ",,,\n";
      break;
    case Format::Table:
      if (formula) print_census_table(out, *formula, "Formula");
      print_census_table(out, run.census, "Brute-force");
      if (a.lattice) {
        fmt::print(out, "lattice ({} subgroups, {} classes)\n", run.subgroups.size(), run.classes.size());
        for (const auto& cls : run.classes)
          fmt::print(out, "  {:<12} order={:<6} class_size={:<6} normaliser={}\n", cls.label,
                     cls.representative.order(), cls.class_size, cls.normaliser_order);
      }
      fmt::print(out, "diff: {}\n", diff.empty() ? "none" : "");
      for (const auto& d : diff) fmt::print(out, "  {}\n", d);
      break;
  }
  return diff.empty() ? kOk : kMismatch;
}

int cmd_verify_table(bool strict, bool oracle_rows, Format fmt, std::ostream& out) {
  invariants::GoldenOptions opts;
  opts.oracle_rows = oracle_rows;
  const invariants::GoldenReport report = invariants::verify_golden(opts);
  switch (fmt) {
    case Format::Json: out << io::golden_report_json(report).dump() << '\n'; break;
    case Format::Csv:
      out << "p,column,printed,computed,status,source\n";
      for (const auto& c : report.cells)
        fmt::print(out, "{},{},{},{},{},{}\n", c.p, c.column, c.printed, c.computed, invariants::to_string(c.status),
                   c.source);
      break;
    case Format::Table: {
      u64 current = 0;
      for (const auto& c : report.cells) {
        if (c.status == invariants::CellStatus::Match || c.status == invariants::CellStatus::NotValidated) continue;
        current = c.p;
        fmt::print(out, "p={:<3} {:<8} printed={:<4} computed={:<4} {} ({})\n", current, c.column, c.printed,
                   c.computed, invariants::to_string(c.status), c.source);
      }
      fmt::print(out, "{} formula rows, {} brute-force rows: {} cells match, {} known-issue, {} mismatch\n",
                 report.formula_rows, report.oracle_rows, report.count(invariants::CellStatus::Match),
                 report.count(invariants::CellStatus::KnownIssue), report.count(invariants::CellStatus::Mismatch));
      break;
    }
  }
  return report.passed(strict) ? kOk : kMismatch;
}

struct SearchArgs {
  std::string case_id;
  std::string t_max;
  std::string hit_cap = "10000";
  std::size_t first_hits = 20;
  std::string presieve = "32768";
  bool quiet = false;
};

search::CaseId require_case(const std::string& name) {
  const auto id = search::parse_case(name);
  if (!id) throw InvalidArgument("case must be one of a, b, c, d (got '" + name + "')");
  return *id;
}

int cmd_search(const SearchArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  const search::CaseSpec spec = search::case_spec(require_case(a.case_id));
  search::ScanOptions opts;
  opts.threads = common.threads;
  opts.hit_cap = parse_count(a.hit_cap, "--hit-cap");
  opts.presieve_bound = parse_count(a.presieve, "--presieve");
  const u64 t_max = parse_count(a.t_max, "--t-max");
  if (!a.quiet && t_max >= 10'000'000) {
    opts.progress = [&err, last = u64{0}](u64 done, u64 total) mutable {
      const u64 pct = done * 100 / total;
      if (pct >= last + 5 || done == total) {
        last = pct;
        err << "search: " << pct << "% (" << done << "/" << total << ")\n";
      }
    };
  }
  const search::SearchSummary summary = search::scan(spec, t_max, opts);
  const Format fmt = parse_format(common.format);
  switch (fmt) {
    case Format::Json: out << io::summary_json(summary, a.first_hits).dump() << '\n'; break;
    case Format::Csv:
      out << "t,p,s,r,i,c,s_G,n,attains_all\n";
      for (std::size_t i = 0; i < summary.hits.size() && i < a.first_hits; ++i) {
        const auto& h = summary.hits[i];
        fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", h.t, h.p, h.s, h.r, h.values.i, h.values.c, h.values.s,
                   h.values.n, h.attains_all() ? 1 : 0);
      }
      break;
    case Format::Table:
      fmt::print(out, "case {}  t_max={}  Q={}  sigma=alpha=0: {}\n", search::to_string(summary.case_id),
                 summary.t_max, summary.q_count, summary.sigma_alpha_zero_count);
      fmt::print(out, "  {:>10} {:>14} {:>12} {:>12}  {:<14} {}\n", "t", "p", "s", "r", "(i,c,s,n)", "bounds");
      for (std::size_t i = 0; i < summary.hits.size() && i < a.first_hits; ++i) {
        const auto& h = summary.hits[i];
        fmt::print(out, "  {:>10} {:>14} {:>12} {:>12}  {:<14} {}\n", h.t, h.p, h.s, h.r,
                   fmt::format("({},{},{},{})", h.values.i, h.values.c, h.values.s, h.values.n),
                   h.attains_all() ? "attained" : (h.above_floor ? "not attained" : "p <= 37"));
      }
      break;
  }
  return kOk;
}

struct BhcArgs {
  std::string case_id;
  std::string family;
  std::string x = "1e9";
  std::string trunc = "1e7";
  std::string q_file;
};

int cmd_bhc(const BhcArgs& a, const Common& common, std::ostream& out) {
  bhc::PolynomialFamily family;
  std::optional<search::CaseId> id;
  if (!a.family.empty()) {
    try {
      family = io::family_from_json(json::parse(a.family));
    } catch (const json::exception& e) {
      throw InvalidArgument(std::string("--family: ") + e.what());
    }
  } else {
    if (a.case_id.empty()) throw InvalidArgument("bhc: give a case (a, b, c, d) or --family");
    id = require_case(a.case_id);
    family = search::case_spec(*id).family();
  }
  const double x = parse_real(a.x, "--x");
  const u64 trunc = parse_count(a.trunc, "--trunc");

  std::optional<u64> q;
  if (!a.q_file.empty()) {
    std::ifstream in(a.q_file);
    if (!in) throw InvalidArgument("--q-file: cannot open " + a.q_file);
    io::ScanRecord rec{};
    try {
      rec = io::scan_record_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw InvalidArgument(std::string("--q-file: ") + e.what());
    }
    if (!id || rec.case_id != *id) throw InvalidArgument("--q-file: scan is for a different case");
    if (static_cast<double>(rec.t_max) != x) throw InvalidArgument("--q-file: scan t_max does not match --x");
    q = rec.q_count;
  }

  const bhc::HlConstant c = bhc::hl_constant(family, trunc, common.threads);
  const bhc::BhcEstimate est = bhc::estimate_E(family, x, c);
  const double rel = q ? bhc::compare(*q, est) : 0.0;

  switch (parse_format(common.format)) {
    case Format::Json: {
      json j = io::estimate_json(family, est);
      if (q) {
        j["q"] = *q;
        j["rel_error"] = io::round_sig(rel);
      }
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "x,a,P,C,integral,E,tail_bound" << (q ? ",q,rel_error" : "") << '\n';
      out << io::format_real(est.x) << ',' << io::format_real(est.a) << ',' << trunc << ','
          << io::format_real(c.value) << ',' << io::format_real(est.integral) << ',' << io::format_real(est.e_value)
          << ',' << io::format_real(c.tail_bound_estimate);
      if (q) out << ',' << *q << ',' << io::format_real(rel);
      out << '\n';
      break;
    case Format::Table:
      fmt::print(out, "C = {} (primes <= {}, tail ~ {})\n", io::format_real(c.value), trunc,
                 io::format_real(c.tail_bound_estimate));
      fmt::print(out, "integral over [{}, {}] = {} (+- {})\n", io::format_real(est.a), io::format_real(x),
                 io::format_real(est.integral), io::format_real(est.quadrature_error_estimate));
      fmt::print(out, "E = {}\n", io::format_real(est.e_value));
      if (q) fmt::print(out, "Q = {}  relative error (E-Q)/Q = {}\n", *q, io::format_real(rel));
      break;
  }
  return kOk;
}

int cmd_hb(const std::string& limit_text, const Common& common, std::ostream& out) {
  const u64 limit = parse_count(limit_text, "--limit");
  const std::vector<heathbrown::HbCandidate> found = heathbrown::scan_hb(limit, common.threads);
  const heathbrown::UpperBounds ub = heathbrown::derive_upper_bounds();
  bool within = true;
  for (const auto& c : found) {
    const Invariants& v = *c.values;
    within = within && v.i <= ub.bounds.i && v.c <= ub.bounds.c && v.s <= ub.bounds.s && v.n <= ub.bounds.n;
  }
  switch (parse_format(common.format)) {
    case Format::Csv:
      out << io::kHbCsvHeader << '\n';
      for (const auto& c : found) out << io::hb_csv(c) << '\n';
      break;
    case Format::Json: {
      json list = json::array();
      for (const auto& c : found) {
        const Invariants& v = *c.values;
        list.push_back({{"p", c.p}, {"omega_minus", c.omega_minus}, {"omega_plus", c.omega_plus},
                        {"i", v.i}, {"c", v.c}, {"s", v.s}, {"n", v.n}});
      }
      out << json{{"limit", limit},
                  {"count", found.size()},
                  {"bounds", {{"i", ub.bounds.i}, {"c", ub.bounds.c}, {"s", ub.bounds.s}, {"n", ub.bounds.n}}},
                  {"within_bounds", within},
                  {"candidates", list}}
                 .dump()
          << '\n';
      break;
    }
    case Format::Table:
      fmt::print(out, "{} qualifying primes <= {}; bounds (i,c,s,n) <= ({},{},{},{}): {}\n", found.size(), limit,
                 ub.bounds.i, ub.bounds.c, ub.bounds.s, ub.bounds.n, within ? "all within" : "VIOLATED");
      fmt::print(out, "  {:>10} {:>8} {:>8} {:>5} {:>5} {:>5} {:>5}\n", "p", "O(p-1)", "O(p+1)", "i", "c", "s", "n");
      for (const auto& c : found) {
        const Invariants& v = *c.values;
        fmt::print(out, "  {:>10} {:>8} {:>8} {:>5} {:>5} {:>5} {:>5}\n", c.p, c.omega_minus, c.omega_plus, v.i, v.c,
                   v.s, v.n);
      }
      break;
  }
  return within ? kOk : kMismatch;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subgroup-class invariants of PSL2(p), prime-triple search and Bateman-Horn estimates", "psl2"};
  app.require_subcommand(1);

  Common common;

  u64 inv_p = 0;
  auto* inv = app.add_subcommand("invariants", "Profile and (i, c, s, n) for a prime p");
  inv->add_option("p", inv_p, "Prime p >= 5 (p = 3 is computed by brute force)")->required();
  add_format(inv, common);

  CensusArgs census_args;
  auto* census = app.add_subcommand("census", "Subgroup-class census of PSL2(p)");
  census->add_option("p", census_args.p, "Prime p")->required();
  census->add_flag("--oracle", census_args.oracle, "Also enumerate the subgroup lattice and diff the two censuses");
  census->add_flag("--allow-large", census_args.allow_large, "Permit p = 17, 19 for --oracle (minutes)")
      ->envname("PSL2_ALLOW_LARGE");
  census->add_flag("--lattice", census_args.lattice, "Dump every conjugacy class of the lattice (with --oracle)");
  add_format(census, common);

  bool strict = false, oracle_rows = false;
  auto* verify = app.add_subcommand("verify-table", "Check the published table for p = 3..61");
  verify->add_flag("--strict", strict, "Treat known issues as failures");
  verify->add_flag("--oracle-rows", oracle_rows, "Also check p in {5, 7, 11, 13} by brute force");
  add_format(verify, common);

  SearchArgs search_args;
  auto* srch = app.add_subcommand("search", "Count t <= t_max with all three case polynomials prime");
  srch->add_option("case", search_args.case_id, "Case a, b, c or d")->required();
  srch->add_option("--t-max", search_args.t_max, "Largest t")->required()->envname("PSL2_T_MAX");
  srch->add_option("--hit-cap", search_args.hit_cap, "Hits kept in memory")->envname("PSL2_HIT_CAP");
  srch->add_option("--first-hits", search_args.first_hits, "Hits printed")->envname("PSL2_FIRST_HITS");
  srch->add_option("--presieve", search_args.presieve, "Pre-sieve prime bound")->envname("PSL2_PRESIEVE");
  srch->add_flag("--quiet", search_args.quiet, "No progress on standard error");
  add_format(srch, common);
  add_threads(srch, common);

  BhcArgs bhc_args;
  auto* bhc_cmd = app.add_subcommand("bhc", "Hardy-Littlewood constant and Bateman-Horn estimate");
  bhc_cmd->add_option("case", bhc_args.case_id, "Case a, b, c or d");
  bhc_cmd->add_option("--family", bhc_args.family, "Family as JSON, ascending coefficients: [[5,12],[1,3]]")
      ->envname("PSL2_FAMILY");
  bhc_cmd->add_option("--x", bhc_args.x, "Upper limit x")->envname("PSL2_X")->capture_default_str();
  bhc_cmd->add_option("--trunc", bhc_args.trunc, "Euler product over primes <= P")
      ->envname("PSL2_TRUNC")
      ->capture_default_str();
  bhc_cmd->add_option("--q-file", bhc_args.q_file, "JSON output of a matching search run")->envname("PSL2_Q_FILE");
  add_format(bhc_cmd, common);
  add_threads(bhc_cmd, common);

  std::string hb_limit = "1000000";
  auto* hb = app.add_subcommand("hb", "Primes p = 5 mod 72 with Omega(p-1) + Omega(p+1) <= 11");
  hb->add_option("--limit", hb_limit, "Scan primes up to this bound")->envname("PSL2_LIMIT")->capture_default_str();
  add_format(hb, common);
  add_threads(hb, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (common.format.empty()) common.format = hb->parsed() ? "csv" : "table";
  try {
    const Format fmt = parse_format(common.format);
    if (inv->parsed()) return cmd_invariants(inv_p, fmt, out, err);
    if (census->parsed()) return cmd_census(census_args, fmt, out);
    if (verify->parsed()) return cmd_verify_table(strict, oracle_rows, fmt, out);
    if (srch->parsed()) return cmd_search(search_args, common, out, err);
    if (bhc_cmd->parsed()) return cmd_bhc(bhc_args, common, out);
    if (hb->parsed()) return cmd_hb(hb_limit, common, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMismatch;
  }
  return kUsage;
}

}  // namespace psl2::cli
