#include "psl2/search.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>

#include "psl2/errors.hpp"
#include "psl2/parallel.hpp"

namespace psl2::search {

namespace {

struct BlockResult {
  u64 q_count = 0;
  u64 sigma_alpha_zero = 0;
  std::vector<TripleHit> hits;
};

bool sigma_alpha_zero(u64 p) {
  const u64 m8 = p % 8, m5 = p % 5;
  return (m8 == 3 || m8 == 5) && (m5 == 2 || m5 == 3);
}

}  // namespace

std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::A: return "a";
    case CaseId::B: return "b";
    case CaseId::C: return "c";
    case CaseId::D: return "d";
  }
  return "?";
}

std::optional<CaseId> parse_case(std::string_view name) {
  if (name == "a") return CaseId::A;
  if (name == "b") return CaseId::B;
  if (name == "c") return CaseId::C;
  if (name == "d") return CaseId::D;
  return std::nullopt;
}

bhc::PolynomialFamily CaseSpec::family() const { return bhc::PolynomialFamily::from_linear(forms); }

CaseSpec case_spec(CaseId id) {
  CaseSpec spec;
  spec.id = id;
  switch (id) {
    case CaseId::A:  // p = 12t+5, r = 3t+1, s = 2t+1
      spec.forms = {{{12, 5}, {3, 1}, {2, 1}}};
      spec.s_index = 2;
      spec.r_index = 1;
      spec.plus_multiplier = 3;
      spec.minus_multiplier = 2;
      break;
    case CaseId::B:  // p = 12t+7, s = 3t+2, r = 2t+1
      spec.forms = {{{12, 7}, {3, 2}, {2, 1}}};
      spec.plus_multiplier = 2;
      spec.minus_multiplier = 3;
      break;
    case CaseId::C:  // p = 12t+11, s = t+1, r = 6t+5
      spec.forms = {{{12, 11}, {1, 1}, {6, 5}}};
      spec.plus_multiplier = 6;
      spec.minus_multiplier = 1;
      break;
    case CaseId::D:  // p = 12t+1, s = 6t+1, r = t
      spec.forms = {{{12, 1}, {6, 1}, {1, 0}}};
      spec.plus_multiplier = 1;
      spec.minus_multiplier = 6;
      break;
  }
  for (u64 t = 0; t <= 1000; ++t) {
    const u64 p = spec.p_form().at(t);
    if ((p + 1) / 2 != spec.plus_multiplier * spec.s_form().at(t) ||
        (p - 1) / 2 != spec.minus_multiplier * spec.r_form().at(t) || p % 2 == 0)
      throw IntegrityError("case_spec: defining identity fails for case " + std::string(to_string(id)) +
                           " at t = " + std::to_string(t));
  }
  return spec;
}

u64 max_t(const CaseSpec& spec) {
  u64 best = ~u64{0};
  for (const auto& f : spec.forms) best = std::min(best, (~u64{0} - f.b) / f.a);
  return best;
}

TripleHit make_hit(const CaseSpec& spec, u64 t) {
  TripleHit hit;
  hit.case_id = spec.id;
  hit.t = t;
  hit.p = spec.p_form().at(t);
  hit.s = spec.s_form().at(t);
  hit.r = spec.r_form().at(t);
  hit.profile = invariants::profile(hit.p);
  hit.values = invariants::evaluate(hit.profile);
  hit.attains = {hit.values.i == kLowerBounds.i, hit.values.c == kLowerBounds.c,
                 hit.values.s == kLowerBounds.s, hit.values.n == kLowerBounds.n};
  hit.above_floor = hit.p > spec.p_floor;
  return hit;
}

SearchSummary scan(const CaseSpec& spec, u64 t_max, const ScanOptions& opts) {
  if (t_max < 1) throw InvalidArgument("scan: t_max must be at least 1");
  if (t_max > max_t(spec)) throw InvalidArgument("scan: t_max overflows 64-bit form values");
  if (opts.block_size == 0) throw InvalidArgument("scan: block size must be positive");

  const arith::LinearFormSieve sieve({spec.forms.begin(), spec.forms.end()},
                                     std::max<u64>(opts.presieve_bound, 2));
  const std::size_t n_blocks = static_cast<std::size_t>((t_max - 1) / opts.block_size + 1);
  std::vector<BlockResult> results(n_blocks);
  std::mutex progress_mutex;
  u64 done = 0;

  for_each_block(n_blocks, opts.threads, [&](std::size_t b) {
    const u64 t_lo = 1 + b * opts.block_size;
    const u64 t_hi = std::min(t_max, t_lo + opts.block_size - 1) + 1;
    std::vector<std::uint8_t> alive;
    sieve.sieve_block(t_lo, t_hi, alive);
    BlockResult& out = results[b];
    const std::uint8_t* base = alive.data();
    const std::uint8_t* end = base + alive.size();
    for (const std::uint8_t* it = base; (it = static_cast<const std::uint8_t*>(std::memchr(it, 1, end - it)));
         ++it) {
      const u64 t = t_lo + static_cast<u64>(it - base);
      if (!arith::is_prime(spec.forms[0].at(t)) || !arith::is_prime(spec.forms[1].at(t)) ||
          !arith::is_prime(spec.forms[2].at(t)))
        continue;
      ++out.q_count;
      const u64 p = spec.p_form().at(t);
      if (p > spec.p_floor && sigma_alpha_zero(p)) ++out.sigma_alpha_zero;
      if (out.hits.size() < opts.hit_cap) out.hits.push_back(make_hit(spec, t));
    }
    if (opts.progress) {
      std::lock_guard lock(progress_mutex);
      done += t_hi - t_lo;
      opts.progress(done, t_max);
    }
  });

  SearchSummary summary;
  summary.case_id = spec.id;
  summary.t_max = t_max;
  for (auto& block : results) {
    summary.q_count += block.q_count;
    summary.sigma_alpha_zero_count += block.sigma_alpha_zero;
    for (auto& hit : block.hits) {
      if (summary.hits.size() >= opts.hit_cap) break;
      summary.hits.push_back(std::move(hit));
    }
  }
  summary.hits_truncated = summary.hits.size() < summary.q_count;
  return summary;
}

std::array<bool, 4> verify_attainment(const TripleHit& hit) {
  const std::array<bool, 4> flags = attainment_for_prime(hit.p);
  if ((hit.case_id == CaseId::A || hit.case_id == CaseId::B) && hit.s >= 7 && hit.r >= 7) {
    const InvariantProfile prof = invariants::profile(hit.p);
    if (prof.sigma != 0 || prof.alpha != 0)
      throw IntegrityError("verify_attainment: |G| = 12psr yet sigma or alpha is nonzero at p = " +
                           std::to_string(hit.p));
  }
  return flags;
}

std::array<bool, 4> attainment_for_prime(u64 p) {
  const Invariants v = invariants::evaluate(invariants::profile(p));
  return {v.i == kLowerBounds.i, v.c == kLowerBounds.c, v.s == kLowerBounds.s, v.n == kLowerBounds.n};
}

}  // namespace psl2::search
