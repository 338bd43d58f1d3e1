#ifndef PCOMP_PRIVACY_AUDIT_HPP
#define PCOMP_PRIVACY_AUDIT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <pcomp/field.hpp>
#include <pcomp/mvpoly.hpp>
#include <pcomp/rational.hpp>
#include <pcomp/scheme_general.hpp>
#include <pcomp/scheme_systematic.hpp>
#include <pcomp/simnet.hpp>
#include <pcomp/unipoly.hpp>

namespace pcomp {

struct EnumerationGuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AuditOptions {
  // Negative controls; each provably breaks the corresponding hypothesis.
  bool reuse_masks = false;        // reuse psi across rounds (general)
  bool non_mds_retrieval = false;  // replace D by a non-MDS code (systematic)
  bool collide_beta = false;       // beta_1 = alpha_1 (data privacy)
  // Audit each round's transcript separately instead of the joint one.
  bool per_round = false;
  // Explicit secret tuples; by default every secret tuple is enumerated.
  std::optional<std::vector<std::vector<MultiPoly>>> secrets;
  std::uint64_t guard = 100'000'000;  // max enumeration states
};

struct SubsetVerdict {
  std::vector<std::size_t> subset;
  std::size_t round = 0;  // 0 = joint transcript over all rounds
  bool identical = true;
  Rational max_total_variation;
};

struct AuditReport {
  bool pass = true;
  std::vector<SubsetVerdict> verdicts;

  std::string str() const {
    std::string out;
    for (const auto& v : verdicts) {
      out += "subset={";
      for (std::size_t i = 0; i < v.subset.size(); ++i)
        out += (i ? "," : "") + std::to_string(v.subset[i]);
      out += "}";
      if (v.round > 0) out += " round=" + std::to_string(v.round);
      out += std::string(" distributions identical: ") +
             (v.identical ? "yes" : "no") +
             " max_tv=" + v.max_total_variation.str() + "\n";
    }
    out += std::string("verdict: ") + (pass ? "PASS" : "FAIL") + "\n";
    return out;
  }
};

namespace audit_detail {

// Odometer over `digits` base-q slots; invokes fn for every assignment.
inline void for_each_assignment(
    u64 q, std::size_t digits,
    const std::function<void(const std::vector<u64>&)>& fn) {
  std::vector<u64> v(digits, 0);
  for (;;) {
    fn(v);
    std::size_t i = 0;
    while (i < digits && ++v[i] == q) v[i++] = 0;
    if (i == digits) return;
  }
}

inline std::uint64_t ipow_checked(u64 base, std::size_t exp, u64 guard) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > guard / base) return guard + 1;
    r *= base;
  }
  return r;
}

inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n,
                                                             std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == t) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

using Histogram = std::map<std::string, long long>;

// Max total-variation distance of each histogram to the first; all
// histograms carry the same total count. Exact rational arithmetic.
inline SubsetVerdict compare(const std::vector<std::size_t>& subset,
                             std::size_t round,
                             const std::vector<Histogram>& per_secret,
                             long long total) {
  SubsetVerdict v;
  v.subset = subset;
  v.round = round;
  long long worst = 0;
  for (std::size_t i = 1; i < per_secret.size(); ++i) {
    long long dist = 0;
    const Histogram &a = per_secret[0], &b = per_secret[i];
    for (const auto& [key, c] : a) {
      auto it = b.find(key);
      const long long other = it == b.end() ? 0 : it->second;
      dist += c > other ? c - other : other - c;
    }
    for (const auto& [key, c] : b)
      if (a.find(key) == a.end()) dist += c;
    worst = std::max(worst, dist);
  }
  v.max_total_variation = Rational(worst, 2 * total);
  v.identical = worst == 0;
  return v;
}

inline std::vector<std::vector<MultiPoly>> all_secret_tuples(
    const FieldCtx& ctx, std::size_t arity, std::uint32_t bound,
    std::size_t count, u64 guard) {
  const std::size_t dim = MultiPoly::dimension(arity, bound);
  if (ipow_checked(ctx.modulus(), dim * count, guard) > guard)
    throw EnumerationGuardExceeded("secret enumeration exceeds guard");
  std::vector<std::vector<MultiPoly>> out;
  for_each_assignment(
      ctx.modulus(), dim * count, [&](const std::vector<u64>& digits) {
        std::vector<MultiPoly> tuple;
        for (std::size_t b = 0; b < count; ++b)
          tuple.push_back(MultiPoly::from_basis_coeffs(
              ctx, arity, bound,
              {digits.begin() + static_cast<long long>(b * dim),
               digits.begin() + static_cast<long long>((b + 1) * dim)}));
        out.push_back(std::move(tuple));
      });
  return out;
}

}  // namespace audit_detail

// Exhaustive T-function-privacy audit of the general scheme: for every
// secret tuple (phi_1..phi_B) and every T-subset, enumerate all mask draws
// and tabulate the exact transcript distribution. Pass iff the conditional
// distributions coincide across secrets.
inline AuditReport audit_function_privacy_general(const SchemeConfig& c,
                                                  const AuditOptions& opt = {}) {
  c.validate();
  const auto d = derive_params(c);
  const QueryPlan plan = build_query_plan(d);
  const std::size_t dim =
      MultiPoly::dimension(c.M, static_cast<std::uint32_t>(c.G));
  const std::size_t mask_slots =
      c.T * dim * (opt.reuse_masks ? 1 : d.S);

  const auto secrets =
      opt.secrets ? *opt.secrets
                  : audit_detail::all_secret_tuples(
                        *c.ctx, c.M, static_cast<std::uint32_t>(c.G), d.B,
                        opt.guard);
  const std::uint64_t states =
      audit_detail::ipow_checked(c.ctx->modulus(), mask_slots, opt.guard);
  if (states > opt.guard || states * secrets.size() > opt.guard)
    throw EnumerationGuardExceeded("function-privacy enumeration too large");

  const auto subsets = audit_detail::subsets_of_size(c.N, c.T);
  const std::size_t num_rounds = opt.per_round ? d.S : 1;
  // histograms[subset][round_slot][secret]
  std::vector<std::vector<std::vector<audit_detail::Histogram>>> hist(
      subsets.size(),
      std::vector<std::vector<audit_detail::Histogram>>(
          num_rounds,
          std::vector<audit_detail::Histogram>(secrets.size())));

  for (std::size_t sec = 0; sec < secrets.size(); ++sec) {
    audit_detail::for_each_assignment(
        c.ctx->modulus(), mask_slots, [&](const std::vector<u64>& digits) {
          std::vector<std::vector<MultiPoly>> queries_by_round;
          for (std::size_t s = 1; s <= d.S; ++s) {
            std::vector<MultiPoly> psis;
            const std::size_t base =
                opt.reuse_masks ? 0 : (s - 1) * c.T * dim;
            for (std::size_t t = 0; t < c.T; ++t)
              psis.push_back(MultiPoly::from_basis_coeffs(
                  *c.ctx, c.M, static_cast<std::uint32_t>(c.G),
                  {digits.begin() +
                       static_cast<long long>(base + t * dim),
                   digits.begin() +
                       static_cast<long long>(base + (t + 1) * dim)}));
            queries_by_round.push_back(
                make_queries_with_masks(plan, c, secrets[sec], s, psis));
          }
          for (std::size_t sub = 0; sub < subsets.size(); ++sub) {
            if (opt.per_round) {
              for (std::size_t s = 1; s <= d.S; ++s) {
                const std::vector<std::vector<MultiPoly>> one{
                    queries_by_round[s - 1]};
                ++hist[sub][s - 1][sec]
                      [canonical_transcript(one, subsets[sub])];
              }
            } else {
              ++hist[sub][0][sec]
                    [canonical_transcript(queries_by_round, subsets[sub])];
            }
          }
        });
  }

  AuditReport report;
  for (std::size_t sub = 0; sub < subsets.size(); ++sub) {
    for (std::size_t r = 0; r < num_rounds; ++r) {
      auto v = audit_detail::compare(subsets[sub], opt.per_round ? r + 1 : 0,
                                     hist[sub][r],
                                     static_cast<long long>(states));
      report.pass = report.pass && v.identical;
      report.verdicts.push_back(std::move(v));
    }
  }
  return report;
}

// Exhaustive T-function-privacy audit of the systematic scheme, enumerating
// all retrieval-code draws. The non-MDS control replaces D = RS_T(alpha) by
// the code spanned by (1, 0, ..., 0), which voids Lemma-style MDS masking.
inline AuditReport audit_function_privacy_systematic(
    const SysParams& p, const AuditOptions& opt = {}) {
  p.validate();
  const IndexSchedule sched = build_schedule(p);
  const std::size_t S = p.S(), B = p.B();
  const std::size_t dim =
      MultiPoly::dimension(p.M, static_cast<std::uint32_t>(p.G));
  const std::size_t slots_per_codeword = opt.non_mds_retrieval ? 1 : p.T;
  const std::size_t slots = S * dim * slots_per_codeword;

  const auto secrets =
      opt.secrets ? *opt.secrets
                  : audit_detail::all_secret_tuples(
                        *p.ctx, p.M, static_cast<std::uint32_t>(p.G), B,
                        opt.guard);
  const std::uint64_t states =
      audit_detail::ipow_checked(p.ctx->modulus(), slots, opt.guard);
  if (states > opt.guard || states * secrets.size() > opt.guard)
    throw EnumerationGuardExceeded("function-privacy enumeration too large");

  const auto subsets = audit_detail::subsets_of_size(p.N, p.T);
  const std::size_t num_rounds = opt.per_round ? S : 1;
  std::vector<std::vector<std::vector<audit_detail::Histogram>>> hist(
      subsets.size(),
      std::vector<std::vector<audit_detail::Histogram>>(
          num_rounds,
          std::vector<audit_detail::Histogram>(secrets.size())));

  for (std::size_t sec = 0; sec < secrets.size(); ++sec) {
    audit_detail::for_each_assignment(
        p.ctx->modulus(), slots, [&](const std::vector<u64>& digits) {
          std::vector<std::vector<MultiPoly>> queries_by_round;
          for (std::size_t s = 1; s <= S; ++s) {
            std::vector<std::vector<u64>> cw;
            for (std::size_t j = 0; j < dim; ++j) {
              const std::size_t base =
                  ((s - 1) * dim + j) * slots_per_codeword;
              if (opt.non_mds_retrieval) {
                std::vector<u64> word(p.N, 0);
                word[0] = digits[base];
                cw.push_back(std::move(word));
              } else {
                std::vector<u64> coeffs(
                    digits.begin() + static_cast<long long>(base),
                    digits.begin() + static_cast<long long>(base + p.T));
                cw.push_back(
                    UniPoly(*p.ctx, std::move(coeffs)).eval_vector(p.alphas));
              }
            }
            queries_by_round.push_back(make_sys_queries_with_codewords(
                p, sched, secrets[sec], s, cw));
          }
          for (std::size_t sub = 0; sub < subsets.size(); ++sub) {
            if (opt.per_round) {
              for (std::size_t s = 1; s <= S; ++s) {
                const std::vector<std::vector<MultiPoly>> one{
                    queries_by_round[s - 1]};
                ++hist[sub][s - 1][sec]
                      [canonical_transcript(one, subsets[sub])];
              }
            } else {
              ++hist[sub][0][sec]
                    [canonical_transcript(queries_by_round, subsets[sub])];
            }
          }
        });
  }

  AuditReport report;
  for (std::size_t sub = 0; sub < subsets.size(); ++sub) {
    for (std::size_t r = 0; r < num_rounds; ++r) {
      auto v = audit_detail::compare(subsets[sub], opt.per_round ? r + 1 : 0,
                                     hist[sub][r],
                                     static_cast<long long>(states));
      report.pass = report.pass && v.identical;
      report.verdicts.push_back(std::move(v));
    }
  }
  return report;
}

// Exhaustive E-data-privacy audit: for every data matrix X and every
// subset of servers of size subset_size (default E), enumerate all padding
// draws and tabulate the distribution of the stored shares. Subset sizes
// above E are expected to leak (Shamir threshold behavior).
inline AuditReport audit_data_privacy(
    const SchemeConfig& c, const AuditOptions& opt = {},
    std::optional<std::size_t> subset_size = std::nullopt) {
  if (c.E < 1)
    throw std::invalid_argument("audit_data_privacy: requires E >= 1");
  std::vector<u64> betas = c.betas;
  if (opt.collide_beta) betas[0] = c.alphas[0];

  const std::size_t data_slots = c.K * c.M;
  const std::size_t pad_slots = c.E * c.M;
  const std::uint64_t num_secrets =
      audit_detail::ipow_checked(c.ctx->modulus(), data_slots, opt.guard);
  const std::uint64_t states =
      audit_detail::ipow_checked(c.ctx->modulus(), pad_slots, opt.guard);
  if (num_secrets > opt.guard || states > opt.guard ||
      num_secrets * states > opt.guard)
    throw EnumerationGuardExceeded("data-privacy enumeration too large");

  const std::size_t size = subset_size.value_or(c.E);
  const auto subsets = audit_detail::subsets_of_size(c.N, size);
  std::vector<std::vector<audit_detail::Histogram>> hist(
      subsets.size(),
      std::vector<audit_detail::Histogram>(
          static_cast<std::size_t>(num_secrets)));

  std::size_t sec = 0;
  audit_detail::for_each_assignment(
      c.ctx->modulus(), data_slots, [&](const std::vector<u64>& xd) {
        audit_detail::for_each_assignment(
            c.ctx->modulus(), pad_slots, [&](const std::vector<u64>& td) {
              // encode directly (the collide_beta control would fail
              // SchemeConfig validation by design)
              std::vector<std::vector<u64>> y;
              std::vector<UniPoly> comps;
              for (std::size_t m = 0; m < c.M; ++m) {
                std::vector<std::pair<u64, u64>> pts;
                for (std::size_t k = 0; k < c.K; ++k)
                  pts.emplace_back(betas[k], xd[k * c.M + m]);
                for (std::size_t e = 0; e < c.E; ++e)
                  pts.emplace_back(betas[c.K + e], td[e * c.M + m]);
                comps.push_back(UniPoly::interpolate(*c.ctx, pts));
              }
              for (std::size_t sub = 0; sub < subsets.size(); ++sub) {
                std::string key;
                for (std::size_t n : subsets[sub]) {
                  key += "y" + std::to_string(n) + "=(";
                  for (std::size_t m = 0; m < c.M; ++m)
                    key += std::to_string(
                               comps[m].eval(c.ctx->reduce(c.alphas[n - 1]))) +
                           (m + 1 < c.M ? "," : ")");
                }
                ++hist[sub][sec][key];
              }
            });
        ++sec;
      });

  AuditReport report;
  for (std::size_t sub = 0; sub < subsets.size(); ++sub) {
    auto v = audit_detail::compare(subsets[sub], 0, hist[sub],
                                   static_cast<long long>(states));
    report.pass = report.pass && v.identical;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace pcomp

#endif
