#ifndef PCOMP_EXPERIMENT_HPP
#define PCOMP_EXPERIMENT_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <pcomp/field.hpp>
#include <pcomp/mvpoly.hpp>
#include <pcomp/privacy_audit.hpp>
#include <pcomp/rational.hpp>
#include <pcomp/rng.hpp>
#include <pcomp/scheme_general.hpp>
#include <pcomp/scheme_systematic.hpp>
#include <pcomp/simnet.hpp>

namespace pcomp {

// Experiment description as read from a config file. All randomness flows
// from named streams derived from `seed`, so identical configs reproduce
// byte-identical results.
struct ExperimentConfig {
  int schema_version = 1;
  std::string scheme = "general";  // "general" | "systematic"
  u64 q = 0;
  std::size_t N = 0, K = 0, M = 0, G = 0, T = 0, E = 0, P = 0, A = 0;
  u64 seed = 0;
  std::string adversary = "random";  // "random" | "fixed" | "offset"
  u64 adversary_param = 1;
  std::string phi_mode = "random";  // "random" | "projections"
  std::optional<std::vector<std::vector<u64>>> data;  // K rows of length M

  static ExperimentConfig from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.schema_version = j.value("schema_version", 1);
    if (c.schema_version != 1)
      throw std::invalid_argument("config: unsupported schema_version");
    c.scheme = j.value("scheme", std::string("general"));
    c.q = j.at("q").get<u64>();
    c.N = j.at("N").get<std::size_t>();
    c.K = j.at("K").get<std::size_t>();
    c.M = j.at("M").get<std::size_t>();
    c.G = j.at("G").get<std::size_t>();
    c.T = j.value("T", std::size_t{0});
    c.E = j.value("E", std::size_t{0});
    c.P = j.value("P", std::size_t{0});
    c.A = j.value("A", std::size_t{0});
    c.seed = j.value("seed", u64{0});
    c.adversary = j.value("adversary", std::string("random"));
    c.adversary_param = j.value("adversary_param", u64{1});
    c.phi_mode = j.value("phi_mode", std::string("random"));
    if (j.contains("data"))
      c.data = j.at("data").get<std::vector<std::vector<u64>>>();
    return c;
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"schema_version", schema_version}, {"scheme", scheme},
                     {"q", q},           {"N", N},
                     {"K", K},           {"M", M},
                     {"G", G},           {"T", T},
                     {"E", E},           {"P", P},
                     {"A", A},           {"seed", seed},
                     {"adversary", adversary},
                     {"adversary_param", adversary_param},
                     {"phi_mode", phi_mode}};
    if (data) j["data"] = *data;
    return j;
  }

  ByzantineStrategy strategy() const {
    if (adversary == "random") return ByzantineStrategy::kRandomValue;
    if (adversary == "fixed") return ByzantineStrategy::kFixedValue;
    if (adversary == "offset") return ByzantineStrategy::kAdditiveOffset;
    throw std::invalid_argument("config: unknown adversary strategy '" +
                                adversary + "'");
  }
};

struct ExperimentResult {
  bool success = false;
  Rational achieved_rate;
  std::size_t rounds = 0;
  // per_round[s-1] = list of {b, index, value} decoded in round s; for the
  // general scheme `index` is the coefficient index l of gamma_b, for the
  // systematic scheme it is the data index k.
  std::vector<std::vector<std::array<u64, 3>>> per_round;
  std::vector<std::vector<u64>> evaluations;  // B x K, phi_b(x_k)
  std::vector<std::vector<u64>> expected;     // direct-evaluation oracle

  nlohmann::json to_json() const {
    return nlohmann::json{
        {"success", success},
        {"rate", achieved_rate.str()},
        {"rounds", rounds},
        {"per_round", per_round},
        {"evaluations", evaluations},
        {"expected", expected}};
  }
};

namespace experiment_detail {

inline std::vector<std::vector<u64>> make_data(const FieldCtx& ctx,
                                               const ExperimentConfig& cfg) {
  if (cfg.data) {
    if (cfg.data->size() != cfg.K)
      throw std::invalid_argument("config: data must have K rows");
    for (const auto& row : *cfg.data)
      if (row.size() != cfg.M)
        throw std::invalid_argument("config: data rows must have length M");
    return *cfg.data;
  }
  SeededSource rng(cfg.seed, "data");
  std::vector<std::vector<u64>> x(cfg.K, std::vector<u64>(cfg.M));
  for (auto& row : x)
    for (u64& v : row) v = ctx.sample(rng);
  return x;
}

inline std::vector<MultiPoly> make_functions(const FieldCtx& ctx,
                                             const ExperimentConfig& cfg,
                                             std::size_t b_count) {
  std::vector<MultiPoly> phis;
  if (cfg.phi_mode == "projections") {
    if (b_count > cfg.M)
      throw std::invalid_argument(
          "config: projections mode needs M >= B distinct coordinates");
    for (std::size_t b = 0; b < b_count; ++b) {
      MultiPoly p =
          MultiPoly::zero(ctx, cfg.M, static_cast<std::uint32_t>(cfg.G));
      Monomial mon(cfg.M, 0);
      mon[b] = 1;
      p.add_term(mon, 1);
      phis.push_back(std::move(p));
    }
    return phis;
  }
  if (cfg.phi_mode != "random")
    throw std::invalid_argument("config: unknown phi_mode '" + cfg.phi_mode +
                                "'");
  SeededSource rng(cfg.seed, "phis");
  for (std::size_t b = 0; b < b_count; ++b)
    phis.push_back(MultiPoly::sample_uniform(
        ctx, cfg.M, static_cast<std::uint32_t>(cfg.G), rng));
  return phis;
}

}  // namespace experiment_detail

inline ExperimentResult run_general(const ExperimentConfig& cfg) {
  FieldCtx ctx(cfg.q);
  const SchemeConfig sc = SchemeConfig::make(ctx, cfg.N, cfg.K, cfg.M, cfg.G,
                                             cfg.T, cfg.E, cfg.P, cfg.A);
  const DerivedParams d = derive_params(sc);
  const QueryPlan plan = build_query_plan(d);

  const auto x = experiment_detail::make_data(ctx, cfg);
  const auto phis = experiment_detail::make_functions(ctx, cfg, d.B);

  SeededSource pad_rng(cfg.seed, "padding");
  const EncodedStore store = encode_data(sc, x, pad_rng);
  SimNetwork net(ctx, store.y);

  SeededSource fault_rng(cfg.seed, "faults");
  const FaultPlan faults = FaultPlan::random(
      d.S, cfg.N, cfg.P, cfg.A, fault_rng, cfg.strategy(),
      cfg.adversary_param);
  faults.validate(cfg.N, cfg.P, cfg.A);

  SeededSource mask_rng(cfg.seed, "masks");
  SeededSource byz_rng(cfg.seed, "byzantine");

  ExperimentResult result;
  result.rounds = d.S;
  RoundState state;
  for (std::size_t s = 1; s <= d.S; ++s) {
    const auto queries = make_queries(plan, sc, phis, s, mask_rng);
    const ReceivedWord word = net.round_trip(queries, faults, s, byz_rng);
    decode_round(plan, sc, state, word);
    std::vector<std::array<u64, 3>> decoded;
    for (std::size_t p = 0; p < d.H; ++p) {
      const auto& bl = plan.decoded[s - 1][p];
      decoded.push_back({static_cast<u64>(bl.first),
                         static_cast<u64>(bl.second),
                         state.known_coeffs.at(bl)});
    }
    result.per_round.push_back(std::move(decoded));
  }
  result.evaluations = reconstruct(state, sc, plan);

  result.expected.assign(d.B, std::vector<u64>(cfg.K, 0));
  for (std::size_t b = 0; b < d.B; ++b)
    for (std::size_t k = 0; k < cfg.K; ++k)
      result.expected[b][k] = phis[b].eval(x[k]);
  result.success = result.evaluations == result.expected;
  result.achieved_rate = rate(sc);
  return result;
}

inline ExperimentResult run_systematic(const ExperimentConfig& cfg) {
  if (cfg.P != 0 || cfg.A != 0 || cfg.E != 0)
    throw InfeasibleParameters(
        "config: the systematic scheme requires P = A = E = 0");
  FieldCtx ctx(cfg.q);
  const SysParams p = SysParams::make(ctx, cfg.N, cfg.K, cfg.M, cfg.G, cfg.T);
  const IndexSchedule sched = build_schedule(p);

  const auto x = experiment_detail::make_data(ctx, cfg);
  const auto phis = experiment_detail::make_functions(ctx, cfg, p.B());

  const EncodedStore store = encode_sys_data(p, x);
  SimNetwork net(ctx, store.y);
  const FaultPlan faults = FaultPlan::none(p.S());

  SeededSource mask_rng(cfg.seed, "masks");
  SeededSource byz_rng(cfg.seed, "byzantine");

  ExperimentResult result;
  result.rounds = p.S();
  result.evaluations.assign(p.B(), std::vector<u64>(cfg.K, 0));
  for (std::size_t s = 1; s <= p.S(); ++s) {
    const auto queries = make_sys_queries(p, sched, phis, s, mask_rng);
    const ReceivedWord word = net.round_trip(queries, faults, s, byz_rng);
    std::vector<u64> responses;
    responses.reserve(word.size());
    for (const auto& v : word) responses.push_back(*v);
    std::vector<std::array<u64, 3>> decoded;
    for (const SysRecovered& rec : decode_sys_round(p, sched, s, responses)) {
      result.evaluations[rec.b - 1][rec.k - 1] = rec.value;
      decoded.push_back({static_cast<u64>(rec.b), static_cast<u64>(rec.k),
                         rec.value});
    }
    result.per_round.push_back(std::move(decoded));
  }

  result.expected.assign(p.B(), std::vector<u64>(cfg.K, 0));
  for (std::size_t b = 0; b < p.B(); ++b)
    for (std::size_t k = 0; k < cfg.K; ++k)
      result.expected[b][k] = phis[b].eval(x[k]);
  result.success = result.evaluations == result.expected;
  result.achieved_rate = sys_rate(p);
  return result;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.scheme == "general") return run_general(cfg);
  if (cfg.scheme == "systematic") return run_systematic(cfg);
  throw std::invalid_argument("config: unknown scheme '" + cfg.scheme + "'");
}

// ---- audit specs ----

struct AuditSpec {
  int schema_version = 1;
  std::string target = "function";  // "function" | "data"
  std::string scheme = "general";   // "general" | "systematic"
  u64 q = 0;
  std::size_t N = 0, K = 0, M = 0, G = 0, T = 0, E = 0;
  bool per_round = false;
  std::string negative_control = "none";
  // "none" | "reuse_masks" | "non_mds_retrieval" | "collide_beta"
  std::optional<std::size_t> subset_size;
  u64 guard = 100'000'000;

  static AuditSpec from_json(const nlohmann::json& j) {
    AuditSpec a;
    a.schema_version = j.value("schema_version", 1);
    a.target = j.value("target", std::string("function"));
    a.scheme = j.value("scheme", std::string("general"));
    a.q = j.at("q").get<u64>();
    a.N = j.at("N").get<std::size_t>();
    a.K = j.at("K").get<std::size_t>();
    a.M = j.at("M").get<std::size_t>();
    a.G = j.at("G").get<std::size_t>();
    a.T = j.value("T", std::size_t{0});
    a.E = j.value("E", std::size_t{0});
    a.per_round = j.value("per_round", false);
    a.negative_control = j.value("negative_control", std::string("none"));
    if (j.contains("subset_size"))
      a.subset_size = j.at("subset_size").get<std::size_t>();
    a.guard = j.value("guard", u64{100'000'000});
    return a;
  }
};

inline AuditReport run_audit(const AuditSpec& spec) {
  FieldCtx ctx(spec.q);
  AuditOptions opt;
  opt.per_round = spec.per_round;
  opt.guard = spec.guard;
  if (spec.negative_control == "reuse_masks") opt.reuse_masks = true;
  else if (spec.negative_control == "non_mds_retrieval")
    opt.non_mds_retrieval = true;
  else if (spec.negative_control == "collide_beta") opt.collide_beta = true;
  else if (spec.negative_control != "none")
    throw std::invalid_argument("audit: unknown negative control '" +
                                spec.negative_control + "'");

  if (spec.target == "data") {
    const SchemeConfig sc = SchemeConfig::make(ctx, spec.N, spec.K, spec.M,
                                               spec.G, spec.T, spec.E, 0, 0);
    return audit_data_privacy(sc, opt, spec.subset_size);
  }
  if (spec.target != "function")
    throw std::invalid_argument("audit: unknown target '" + spec.target +
                                "'");
  if (spec.scheme == "systematic") {
    const SysParams p =
        SysParams::make(ctx, spec.N, spec.K, spec.M, spec.G, spec.T);
    return audit_function_privacy_systematic(p, opt);
  }
  const SchemeConfig sc = SchemeConfig::make(ctx, spec.N, spec.K, spec.M,
                                             spec.G, spec.T, spec.E, 0, 0);
  return audit_function_privacy_general(sc, opt);
}

}  // namespace pcomp

#endif
