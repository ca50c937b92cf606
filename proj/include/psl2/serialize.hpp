#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "psl2/bhc.hpp"
#include "psl2/heathbrown.hpp"
#include "psl2/invariants.hpp"
#include "psl2/oracle.hpp"
#include "psl2/search.hpp"

namespace psl2::io {

using nlohmann::json;

// Reals are emitted with 10 significant digits.
double round_sig(double v, int digits = 10);
std::string format_real(double v);

// {"p", "delta", "epsilon", "k", "l", "sigma", "alpha", "i", "c", "s", "n"}
json profile_json(const InvariantProfile& prof, const Invariants& v);
inline constexpr const char* kProfileCsvHeader = "p,delta,epsilon,k,l,sigma,alpha,i,c,s,n";
std::string profile_csv(const InvariantProfile& prof, const Invariants& v);

// {"p", "entries": [{"label", "order", "classes", "self_normalising"}], "i", "c", "s", "n"}
json census_json(const ClassCensus& census);
// Inverse of census_json; kinds are inferred from labels.
ClassCensus census_from_json(const json& j);

// [{"order", "class_size", "normaliser_order", "label"}], trivial and G included.
json lattice_json(const std::vector<oracle::OracleClass>& classes);

// {"case", "t_max", "q_count", "sigma_alpha_zero", "first_hits": [{"t", "p", "s", "r", "attains"}]}
json summary_json(const search::SearchSummary& summary, std::size_t max_hits);

struct ScanRecord {
  search::CaseId case_id;
  u64 t_max;
  u64 q_count;
};
ScanRecord scan_record_from_json(const json& j);

// {"family": [[coeffs]...], "x", "a", "P", "C", "integral", "E", "tail_bound"}
json estimate_json(const bhc::PolynomialFamily& family, const bhc::BhcEstimate& est);
bhc::PolynomialFamily family_from_json(const json& j);

inline constexpr const char* kHbCsvHeader = "p,omega_minus,omega_plus,i,c,s,n";
std::string hb_csv(const heathbrown::HbCandidate& c);

json golden_report_json(const invariants::GoldenReport& report);

}  // namespace psl2::io
