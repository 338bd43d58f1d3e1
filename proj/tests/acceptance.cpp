// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Finite-field results are compared exactly; the only
// tolerance is 1e-12 on the real-valued asymptotic table.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <pcomp/experiment.hpp>
#include <pcomp/field.hpp>
#include <pcomp/linalg.hpp>
#include <pcomp/mvpoly.hpp>
#include <pcomp/privacy_audit.hpp>
#include <pcomp/rational.hpp>
#include <pcomp/rng.hpp>
#include <pcomp/rscode.hpp>
#include <pcomp/scheme_general.hpp>
#include <pcomp/scheme_systematic.hpp>
#include <pcomp/simnet.hpp>
#include <pcomp/unipoly.hpp>

using pcomp::FieldCtx;
using pcomp::MultiPoly;
using pcomp::Rational;
using pcomp::ReceivedWord;
using pcomp::RSCode;
using pcomp::SchemeConfig;
using pcomp::SysParams;
using pcomp::UniPoly;
using pcomp::u64;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& title, double budget_seconds,
               const std::function<bool(std::string&)>& fn) {
  std::string note;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = fn(note);
  } catch (const std::exception& e) {
    ok = false;
    note = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (secs > budget_seconds) {
    ok = false;
    note += (note.empty() ? "" : "; ") + std::string("over time budget");
  }
  if (!ok) ++g_failures;
  std::printf("criterion %d: %s - %s (%.2fs)%s%s\n", n,
              ok ? "PASS" : "FAIL", title.c_str(), secs,
              note.empty() ? "" : " | ", note.c_str());
  std::fflush(stdout);
}

bool expect(bool cond, const std::string& what, std::string& note) {
  if (!cond && note.size() < 400) note += what + " failed; ";
  return cond;
}

pcomp::ExperimentConfig worked_config(u64 seed) {
  pcomp::ExperimentConfig cfg;
  cfg.scheme = "general";
  cfg.q = 23;
  cfg.N = 14;
  cfg.K = 2;
  cfg.M = 4;
  cfg.G = 2;
  cfg.T = 1;
  cfg.E = 2;
  cfg.P = 1;
  cfg.A = 1;
  cfg.seed = seed;
  return cfg;
}

// ---- criterion 1 ----
bool c1_worked_example(std::string& note) {
  bool ok = true;
  const auto d = pcomp::derive_params(14, 2, 2, 1, 2, 1, 1);
  ok &= expect(d.Nprime == 11 && d.H == 4 && d.L == 7 && d.B == 4 &&
                   d.S == 7,
               "derived params", note);

  const pcomp::QueryPlan plan = pcomp::build_query_plan(d);
  using Row = std::vector<std::optional<long long>>;
  const std::vector<Row> expected{
      {0, std::nullopt, std::nullopt, std::nullopt},
      {-4, 3, std::nullopt, std::nullopt},
      {std::nullopt, -1, std::nullopt, std::nullopt},
      {std::nullopt, -5, 2, std::nullopt},
      {std::nullopt, std::nullopt, -2, std::nullopt},
      {std::nullopt, std::nullopt, -6, 1},
      {std::nullopt, std::nullopt, std::nullopt, -3}};
  ok &= expect(plan.exponent == expected, "schedule matrix", note);

  // 1 straggler + 1 corrupted server per round at randomized positions
  for (u64 seed : {1ull, 2ull, 3ull}) {
    const auto result = pcomp::run_experiment(worked_config(seed));
    ok &= expect(result.success, "end-to-end run", note);
    ok &= expect(result.achieved_rate == Rational(4, 49), "rate 4/49", note);
    ok &= expect(result.evaluations.size() == 4 &&
                     result.evaluations[0].size() == 2,
                 "8 evaluations", note);
  }
  return ok;
}

// ---- criterion 2 ----
bool c2_rate_consistency(std::string& note) {
  bool ok = true;
  std::size_t checked = 0;
  for (std::size_t N = 1; N <= 30; ++N)
    for (std::size_t K = 1; K <= 5; ++K)
      for (std::size_t G = 1; G <= 3; ++G)
        for (std::size_t T = 0; T <= 3; ++T)
          for (std::size_t E = 0; E <= 2; ++E)
            for (std::size_t P = 0; P <= 2; ++P)
              for (std::size_t A = 0; A <= 2; ++A) {
                const std::size_t deg = G * (K + E - 1);
                if (N <= deg + T + P + 2 * A) continue;
                const auto d = pcomp::derive_params(N, K, G, T, E, P, A);
                const Rational closed =
                    Rational(static_cast<long long>(N - deg - T - P - 2 * A),
                             static_cast<long long>(N)) *
                    Rational(static_cast<long long>(K),
                             static_cast<long long>(deg + 1));
                const Rational via_bs(static_cast<long long>(K * d.B),
                                      static_cast<long long>(N * d.S));
                if (closed != via_bs) {
                  ok = expect(false, "rate mismatch", note);
                }
                ++checked;
              }
  ok &= expect(checked > 10000, "sweep size", note);
  return ok;
}

// ---- criterion 3 ----
bool c3_retrieval_specialization(std::string& note) {
  bool ok = true;
  pcomp::ExperimentConfig cfg;
  cfg.scheme = "general";
  cfg.q = 17;
  cfg.N = 8;
  cfg.K = 2;
  cfg.M = 3;
  cfg.G = 1;
  cfg.T = 2;
  cfg.P = 1;
  cfg.A = 1;
  cfg.seed = 11;
  cfg.phi_mode = "projections";
  cfg.data = std::vector<std::vector<u64>>{{5, 9, 13}, {2, 4, 8}};
  const auto result = pcomp::run_experiment(cfg);
  ok &= expect(result.success, "retrieval run", note);
  // [N - (K+T+P+2A-1)]/N with (N,K,T,P,A) = (8,2,2,1,1)
  ok &= expect(result.achieved_rate ==
                   Rational(8 - (2 + 2 + 1 + 2 - 1), 8),
               "retrieval rate", note);
  for (std::size_t b = 0; b < result.evaluations.size(); ++b)
    for (std::size_t k = 0; k < 2; ++k)
      ok &= expect(result.evaluations[b][k] == (*cfg.data)[k][b],
                   "retrieved row", note);
  return ok;
}

// ---- criterion 4 ----
bool c4_systematic_and_crossover(std::string& note) {
  bool ok = true;
  FieldCtx f(11);
  const SysParams p = SysParams::make(f, 10, 6, 1, 1, 1);
  ok &= expect(p.F() == 4 && p.S() == 3 && p.B() == 2, "F=4 K=6 shape",
               note);
  const auto sched = pcomp::build_schedule(p);
  using Set = std::vector<std::size_t>;
  ok &= expect(sched.sets[0][0] == Set{1, 2, 3, 4} &&
                   sched.sets[0][1] == Set{} &&
                   sched.sets[1][0] == Set{5, 6} &&
                   sched.sets[1][1] == Set{1, 2} &&
                   sched.sets[2][0] == Set{} &&
                   sched.sets[2][1] == Set{3, 4, 5, 6},
               "index sets", note);
  ok &= expect(pcomp::sys_rate(p) == Rational(4, 10), "rate min{F,K}/N",
               note);

  for (std::size_t N = 2; N <= 40; ++N)
    for (std::size_t K = 1; K <= 6; ++K)
      for (std::size_t G = 1; G <= 3; ++G)
        for (std::size_t T = 0; T <= 4; ++T) {
          if (N <= G * (K - 1) + T) continue;
          const auto d = pcomp::derive_params(N, K, G, T, 0, 0, 0);
          const Rational general(static_cast<long long>(K * d.B),
                                 static_cast<long long>(N * d.S));
          const std::size_t F = N - G * (K - 1) - T;
          const Rational systematic(
              static_cast<long long>(std::min(F, K)),
              static_cast<long long>(N));
          const std::size_t boundary = 2 * G * (K - 1) + T + 1;
          ok &= expect((general > systematic) == (N > boundary),
                       "crossover", note);
          if (N == boundary)
            ok &= expect(general == systematic, "boundary equality", note);
        }
  return ok;
}

// ---- criterion 5 ----
bool c5_star_products(std::string& note) {
  bool ok = true;
  pcomp::SeededSource rng(21, "acceptance-star");
  auto random_eval = [&](const FieldCtx& f, const std::vector<u64>& alphas,
                         std::size_t k) {
    std::vector<u64> c(k);
    for (u64& v : c) v = f.sample(rng);
    return UniPoly(f, std::move(c)).eval_vector(alphas);
  };
  struct Case {
    std::size_t n, k, t, g;  // t = 0 or g = 0 means "not used"
  };
  for (const Case cs : {Case{8, 3, 2, 0}, Case{10, 2, 0, 3},
                        Case{14, 4, 3, 2}}) {
    FieldCtx f(cs.n == 8 ? 11 : cs.n == 10 ? 11 : 17);
    std::vector<u64> alphas;
    for (std::size_t i = 1; i <= cs.n; ++i) alphas.push_back(i);
    if (cs.t > 0) {  // pairwise star: dim = min{K+T-1, N}
      pcomp::Matrix rows;
      for (int i = 0; i < 200; ++i)
        rows.push_back(pcomp::star(random_eval(f, alphas, cs.k),
                                   random_eval(f, alphas, cs.t), f));
      ok &= expect(pcomp::rank(f, rows) ==
                       std::min(cs.k + cs.t - 1, cs.n),
                   "pair star dim", note);
    }
    if (cs.g > 0) {  // star power: dim = min{G(K-1)+1, N}
      pcomp::Matrix rows;
      for (int i = 0; i < 200; ++i) {
        std::vector<u64> prod(cs.n, 1);
        for (std::size_t rep = 0; rep < cs.g; ++rep)
          prod = pcomp::star(prod, random_eval(f, alphas, cs.k), f);
        rows.push_back(std::move(prod));
      }
      ok &= expect(pcomp::rank(f, rows) ==
                       pcomp::star_power_dim(cs.n, cs.k, cs.g),
                   "star power dim", note);
    }
  }
  return ok;
}

// ---- criterion 6 ----
bool c6_decoder_oracle(std::string& note) {
  bool ok = true;
  FieldCtx f(11);
  const std::vector<u64> alphas{1, 2, 3, 4, 5, 6, 7};
  RSCode code(f, alphas, 3);
  pcomp::SeededSource rng(31, "acceptance-decode");

  for (int trial = 0; trial < 50 && ok; ++trial) {
    std::vector<u64> msg(3);
    for (u64& v : msg) v = f.sample(rng);
    const UniPoly poly(f, msg);
    const std::vector<u64> cw = code.encode(poly);
    for (std::size_t p = 0; p <= 4 && ok; ++p) {
      for (std::size_t a = 0; p + 2 * a <= 4 && ok; ++a) {
        for (std::uint32_t em = 0; em < 128 && ok; ++em) {
          if (static_cast<std::size_t>(std::popcount(em)) != p) continue;
          for (std::uint32_t fm = 0; fm < 128 && ok; ++fm) {
            if (static_cast<std::size_t>(std::popcount(fm)) != a) continue;
            if (em & fm) continue;
            ReceivedWord w;
            for (std::size_t i = 0; i < 7; ++i) {
              if (em & (1u << i)) {
                w.emplace_back(std::nullopt);
              } else if (fm & (1u << i)) {
                w.emplace_back(f.add(cw[i], 1 + rng.next_u64() % 10));
              } else {
                w.emplace_back(cw[i]);
              }
            }
            ok &= expect(code.decode(w, a) == poly, "round trip", note);
          }
        }
      }
    }

    // one error beyond the budget: 3 equal-offset errors against A = 2.
    // no [7,3] codeword lies within distance 2 of this pattern, so the
    // failure is always detected rather than miscorrected.
    ReceivedWord w;
    for (std::size_t i = 0; i < 7; ++i)
      w.emplace_back(i < 3 ? f.add(cw[i], 1) : cw[i]);
    bool detected = false;
    try {
      const UniPoly r = code.decode(w, 2);
      ok &= expect(r != poly, "over-budget must not succeed", note);
    } catch (const pcomp::DecodeFailure&) {
      detected = true;
    }
    ok &= expect(detected, "over-budget detection", note);
  }
  return ok;
}

// ---- criterion 7 ----
bool c7_privacy_audits(std::string& note) {
  bool ok = true;

  // (a) a q=3, N=3, K=1, T=1 instance is unconstructible: the scheme needs
  // N+K+E distinct field points, so q >= 5 is forced and the validator
  // must say so.
  bool rejected = false;
  try {
    FieldCtx f3(3);
    SchemeConfig::make(f3, 3, 1, 1, 1, 1, 0, 0, 0);
  } catch (const pcomp::InfeasibleParameters&) {
    rejected = true;
  }
  ok &= expect(rejected, "q=3 N=3 rejected as infeasible", note);

  // smallest constructible analog: q=5, N=3, K=1, M=1, G=1, T=1
  FieldCtx f5(5);
  const SchemeConfig small = SchemeConfig::make(f5, 3, 1, 1, 1, 1, 0, 0, 0);
  const auto general_report = pcomp::audit_function_privacy_general(small);
  ok &= expect(general_report.pass, "general function privacy", note);
  for (const auto& v : general_report.verdicts)
    ok &= expect(v.identical && v.max_total_variation == Rational(0),
                 "identical distributions", note);

  const SysParams sys_small = SysParams::make(f5, 3, 1, 1, 1, 1);
  ok &= expect(pcomp::audit_function_privacy_systematic(sys_small).pass,
               "systematic function privacy", note);

  // (b) data privacy: q=5, E=1, K=1, M=1
  const SchemeConfig data_cfg =
      SchemeConfig::make(f5, 3, 1, 1, 1, 0, 1, 0, 0);
  ok &= expect(pcomp::audit_data_privacy(data_cfg).pass, "data privacy",
               note);
  for (u64 x1 = 0; x1 < 5 && ok; ++x1) {
    for (std::size_t n = 0; n < 3; ++n) {
      std::set<u64> values;
      for (u64 t = 0; t < 5; ++t)
        values.insert(UniPoly::interpolate(
                          f5, {{data_cfg.betas[0], x1},
                               {data_cfg.betas[1], t}})
                          .eval(data_cfg.alphas[n]));
      ok &= expect(values.size() == 5, "stored value uniform", note);
    }
  }

  // (c) negative controls
  {
    FieldCtx f7(7);
    const SchemeConfig c = SchemeConfig::make(f7, 5, 2, 1, 1, 1, 0, 0, 0);
    std::vector<MultiPoly> zeros(3, MultiPoly::zero(f7, 1, 1));
    std::vector<MultiPoly> with_x1 = zeros;
    with_x1[0].add_term({1}, 1);
    pcomp::AuditOptions opt;
    opt.secrets = std::vector<std::vector<MultiPoly>>{zeros, with_x1};
    ok &= expect(pcomp::audit_function_privacy_general(c, opt).pass,
                 "fresh masks pass", note);
    opt.reuse_masks = true;
    ok &= expect(!pcomp::audit_function_privacy_general(c, opt).pass,
                 "mask reuse detected", note);
  }
  {
    pcomp::AuditOptions opt;
    opt.collide_beta = true;
    ok &= expect(!pcomp::audit_data_privacy(data_cfg, opt).pass,
                 "node collision detected", note);
  }
  return ok;
}

// ---- criterion 8 ----
bool c8_schedule_partition(std::string& note) {
  bool ok = true;
  pcomp::SeededSource rng(41, "acceptance-partition");
  for (int trial = 0; trial < 50; ++trial) {
    pcomp::DerivedParams d;
    d.H = 1 + rng.next_u64() % 25;
    d.L = 1 + rng.next_u64() % 25;
    const std::size_t g = std::gcd(d.L, d.H);
    d.B = d.H / g;
    d.S = d.L / g;
    d.Nprime = d.H + d.L;
    const auto plan = pcomp::build_query_plan(d);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t s = 0; s < d.S; ++s) {
      ok &= expect(plan.decoded[s].size() == d.H, "round size H", note);
      for (const auto& bl : plan.decoded[s])
        ok &= expect(seen.insert(bl).second, "disjoint rounds", note);
    }
    ok &= expect(seen.size() == d.B * d.L, "union covers BL", note);
  }
  return ok;
}

// ---- criterion 9 ----
bool c9_asymptotic_table(std::string& note) {
  bool ok = true;
  const double beta = 0.05;
  const std::size_t G = 2;
  for (int i = 1; i <= 9; ++i) {
    const double alpha = 0.05 * i;
    const auto [general, systematic] =
        pcomp::asymptotic_rates(alpha, beta, G);
    const double want_general = (1.0 - beta) / static_cast<double>(G) - alpha;
    const double want_systematic =
        std::min(1.0 - alpha * static_cast<double>(G) - beta, alpha);
    ok &= expect(std::fabs(general - want_general) < 1e-12,
                 "general column", note);
    ok &= expect(std::fabs(systematic - want_systematic) < 1e-12,
                 "systematic column", note);
  }
  const double astar = (1.0 - beta) / (static_cast<double>(G) + 1.0);
  ok &= expect(std::fabs((1.0 - astar * G - beta) - astar) < 1e-12,
               "crossover solves 1-aG-b = a", note);
  return ok;
}

}  // namespace

int main() {
  criterion(1, "worked-example reproduction (N=14, rate 4/49)", 1.0,
            c1_worked_example);
  criterion(2, "closed-form rate equals KB/NS over the full sweep", 5.0,
            c2_rate_consistency);
  criterion(3, "retrieval specialization (E=0, G=1, projections)", 1.0,
            c3_retrieval_specialization);
  criterion(4, "systematic schedule, rate, and crossover sweep", 10.0,
            c4_systematic_and_crossover);
  criterion(5, "star-product dimension law", 1.0, c5_star_products);
  criterion(6, "[7,3] decoder over all in-budget corruption patterns", 30.0,
            c6_decoder_oracle);
  criterion(7, "exhaustive privacy audits and negative controls", 60.0,
            c7_privacy_audits);
  criterion(8, "coefficient-schedule partition for 50 random (H,L)", 1.0,
            c8_schedule_partition);
  criterion(9, "asymptotic rate table to 12 digits", 1.0,
            c9_asymptotic_table);

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria PASSED\n");
  return 0;
}
