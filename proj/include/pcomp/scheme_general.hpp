#ifndef PCOMP_SCHEME_GENERAL_HPP
#define PCOMP_SCHEME_GENERAL_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <pcomp/field.hpp>
#include <pcomp/mvpoly.hpp>
#include <pcomp/rational.hpp>
#include <pcomp/rscode.hpp>
#include <pcomp/unipoly.hpp>

namespace pcomp {

struct InfeasibleParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Full parameter set for the general scheme: N servers, K data vectors of
// length M, functions of total degree <= G, T-collusion on queries,
// E-collusion on data, P stragglers, A byzantine servers.
struct SchemeConfig {
  const FieldCtx* ctx = nullptr;
  std::size_t N = 0, K = 0, M = 0, G = 0, T = 0, E = 0, P = 0, A = 0;
  std::vector<u64> alphas;  // N distinct nonzero evaluation points
  std::vector<u64> betas;   // K+E interpolation nodes, disjoint from alphas

  // Default point layout: alphas = 1..N, betas drawn from N+1..q-1 then 0.
  static SchemeConfig make(const FieldCtx& ctx, std::size_t N, std::size_t K,
                           std::size_t M, std::size_t G, std::size_t T,
                           std::size_t E, std::size_t P, std::size_t A) {
    SchemeConfig c;
    c.ctx = &ctx;
    c.N = N;
    c.K = K;
    c.M = M;
    c.G = G;
    c.T = T;
    c.E = E;
    c.P = P;
    c.A = A;
    for (std::size_t n = 1; n <= N; ++n) c.alphas.push_back(n);
    u64 next = N + 1;
    while (c.betas.size() < K + E) {
      if (next < ctx.modulus()) {
        c.betas.push_back(next++);
      } else if (std::find(c.betas.begin(), c.betas.end(), 0) ==
                 c.betas.end()) {
        c.betas.push_back(0);
      } else {
        throw InfeasibleParameters("SchemeConfig: field too small, need q >= N+K+E");
      }
    }
    c.validate();
    return c;
  }

  void validate() const {
    if (ctx == nullptr) throw InfeasibleParameters("SchemeConfig: no field");
    if (K < 1 || M < 1 || G < 1)
      throw InfeasibleParameters("SchemeConfig: K, M, G must be >= 1");
    if (N <= G * (K + E - 1) + T + P + 2 * A)
      throw InfeasibleParameters(
          "SchemeConfig: requires N > G(K+E-1) + T + P + 2A");
    if (ctx->modulus() < N + K + E)
      throw InfeasibleParameters("SchemeConfig: requires q >= N + K + E");
    if (alphas.size() != N || betas.size() != K + E)
      throw InfeasibleParameters("SchemeConfig: point vector sizes wrong");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (ctx->reduce(alphas[i]) == 0)
        throw InfeasibleParameters("SchemeConfig: alphas must be nonzero");
      for (std::size_t j = i + 1; j < alphas.size(); ++j)
        if (ctx->reduce(alphas[i]) == ctx->reduce(alphas[j]))
          throw InfeasibleParameters("SchemeConfig: duplicate alpha");
    }
    for (std::size_t i = 0; i < betas.size(); ++i)
      for (std::size_t j = i + 1; j < betas.size(); ++j)
        if (ctx->reduce(betas[i]) == ctx->reduce(betas[j]))
          throw InfeasibleParameters("SchemeConfig: duplicate beta");
    // All K+E betas kept off the alphas, not just the K data nodes, so no
    // server ever stores a padding vector in the clear.
    for (u64 b : betas)
      for (u64 a : alphas)
        if (ctx->reduce(b) == ctx->reduce(a))
          throw InfeasibleParameters("SchemeConfig: betas must avoid alphas");
  }
};

struct DerivedParams {
  std::size_t Nprime, H, L, B, S;
};

// N' = N-(P+2A), H = N'-(G(K+E-1)+T), L = G(K+E-1)+1, minimal BL = HS.
inline DerivedParams derive_params(std::size_t N, std::size_t K,
                                   std::size_t G, std::size_t T,
                                   std::size_t E, std::size_t P,
                                   std::size_t A) {
  DerivedParams d;
  d.Nprime = N - (P + 2 * A);
  const std::size_t deg = G * (K + E - 1);
  if (N < P + 2 * A || d.Nprime <= deg + T)
    throw InfeasibleParameters("derive_params: H would be non-positive");
  d.H = d.Nprime - (deg + T);
  d.L = deg + 1;
  const std::size_t g = std::gcd(d.L, d.H);
  d.B = d.H / g;
  d.S = d.L / g;
  return d;
}

inline DerivedParams derive_params(const SchemeConfig& c) {
  c.validate();
  return derive_params(c.N, c.K, c.G, c.T, c.E, c.P, c.A);
}

// Exact rate [N - (G(K+E-1)+T+P+2A)]/N * K/(G(K+E-1)+1), equal to KB/NS.
inline Rational rate(const SchemeConfig& c) {
  const auto d = derive_params(c);
  const long long deg = static_cast<long long>(c.G * (c.K + c.E - 1));
  Rational r = Rational(static_cast<long long>(c.N) - deg -
                            static_cast<long long>(c.T + c.P + 2 * c.A),
                        static_cast<long long>(c.N)) *
               Rational(static_cast<long long>(c.K), deg + 1);
  const Rational viaBS(static_cast<long long>(c.K * d.B),
                       static_cast<long long>(c.N * d.S));
  if (r != viaBS)
    throw std::logic_error("rate: closed form disagrees with KB/NS");
  return r;
}

// The zeta matrix and the per-round coefficient schedule it induces.
// Round s exposes the coefficients of z^0..z^{H-1} of
// r^(s)(z) = sum_b zeta_b^(s)(z) gamma_b(z); negative powers carry
// coefficients already decoded in round s-1.
struct QueryPlan {
  DerivedParams params;
  // exponent[s][b] (0-based): power of z in zeta_{b+1}^{(s+1)}, or nullopt.
  std::vector<std::vector<std::optional<long long>>> exponent;
  // decoded[s][p]: the (b, l) coefficient of gamma_b read off z^p, 0<=p<H.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> decoded;
  // known[s]: (exponent e < 0, (b, l)) terms to subtract in round s.
  std::vector<std::vector<std::pair<long long,
                                    std::pair<std::size_t, std::size_t>>>>
      known;
  std::vector<std::size_t> Q, U;  // Q[s], U[s], 1-based rounds, Q[0]=U[0]=0

  LaurentPoly zeta(const FieldCtx& ctx, std::size_t s, std::size_t b) const {
    const auto& e = exponent.at(s - 1).at(b - 1);
    if (!e) return LaurentPoly::zero(ctx);
    return LaurentPoly::monomial(ctx, *e);
  }
};

// Recursive construction with the Q_0 = U_0 = 0 convention, which makes
// round 1 (zeta = (1, z^L, ..., z^{Q_1 L}, 0, ...)) a special case of the
// general rule.
inline QueryPlan build_query_plan(const DerivedParams& d) {
  QueryPlan plan;
  plan.params = d;
  const long long H = static_cast<long long>(d.H);
  const long long L = static_cast<long long>(d.L);
  plan.Q.assign(1, 0);
  plan.U.assign(1, 0);
  for (std::size_t s = 1; s <= d.S; ++s) {
    const long long Qprev = static_cast<long long>(plan.Q[s - 1]);
    const long long Uprev = static_cast<long long>(plan.U[s - 1]);
    // Q_s maximal with -U_{s-1} + (Q_s - Q_{s-1})L <= H
    const long long Qs = Qprev + (H + Uprev) / L;
    const long long Us = H + Uprev - (Qs - Qprev) * L;
    plan.Q.push_back(static_cast<std::size_t>(Qs));
    plan.U.push_back(static_cast<std::size_t>(Us));

    std::vector<std::optional<long long>> row(d.B);
    std::vector<std::pair<std::size_t, std::size_t>> dec(
        d.H, {std::size_t{0}, std::size_t{0}});
    std::vector<std::pair<long long, std::pair<std::size_t, std::size_t>>>
        kn;
    const long long bhi = std::min(Qs + 1, static_cast<long long>(d.B));
    for (long long b = Qprev + 1; b <= bhi; ++b) {
      const long long off = -Uprev + (b - (Qprev + 1)) * L;
      row[static_cast<std::size_t>(b - 1)] = off;
      for (long long l = 0; l < L; ++l) {
        const long long p = off + l;
        if (p < 0) {
          kn.emplace_back(p, std::make_pair(static_cast<std::size_t>(b),
                                            static_cast<std::size_t>(l)));
        } else if (p < H) {
          dec[static_cast<std::size_t>(p)] = {static_cast<std::size_t>(b),
                                              static_cast<std::size_t>(l)};
        }
        // p >= H: not exposed this round, folded into the noise tail.
      }
    }
    plan.exponent.push_back(std::move(row));
    plan.decoded.push_back(std::move(dec));
    plan.known.push_back(std::move(kn));
  }
  return plan;
}

// Encoded storage: y_n = u_X(alpha_n). The interpolating polynomial is kept
// only by the encoder and the test harness, never handed to servers.
struct EncodedStore {
  std::vector<std::vector<u64>> y;  // N vectors of length M
  PolyVector uX;
};

// Deterministic core: caller supplies the E padding vectors.
inline EncodedStore encode_data_with_padding(
    const SchemeConfig& c, const std::vector<std::vector<u64>>& x,
    const std::vector<std::vector<u64>>& padding) {
  c.validate();
  if (x.size() != c.K || padding.size() != c.E)
    throw std::invalid_argument("encode_data: wrong number of vectors");
  EncodedStore store;
  for (std::size_t m = 0; m < c.M; ++m) {
    std::vector<std::pair<u64, u64>> pts;
    for (std::size_t k = 0; k < c.K; ++k) {
      if (x[k].size() != c.M)
        throw std::invalid_argument("encode_data: wrong vector length");
      pts.emplace_back(c.betas[k], x[k][m]);
    }
    for (std::size_t e = 0; e < c.E; ++e) {
      if (padding[e].size() != c.M)
        throw std::invalid_argument("encode_data: wrong padding length");
      pts.emplace_back(c.betas[c.K + e], padding[e][m]);
    }
    store.uX.components.push_back(UniPoly::interpolate(*c.ctx, pts));
  }
  store.y.reserve(c.N);
  for (std::size_t n = 0; n < c.N; ++n)
    store.y.push_back(store.uX.eval(c.alphas[n]));
  return store;
}

inline EncodedStore encode_data(const SchemeConfig& c,
                                const std::vector<std::vector<u64>>& x,
                                RandomSource& rng) {
  std::vector<std::vector<u64>> padding(c.E);
  for (auto& t : padding) {
    t.resize(c.M);
    for (u64& v : t) v = c.ctx->sample(rng);
  }
  return encode_data_with_padding(c, x, padding);
}

// rho_n^(s) = sum_b zeta_b^(s)(alpha_n) phi_b
//           + alpha_n^H sum_t alpha_n^{t-1} psi_t^(s)
// with the masks psi supplied explicitly (the audit enumerates them).
inline std::vector<MultiPoly> make_queries_with_masks(
    const QueryPlan& plan, const SchemeConfig& c,
    const std::vector<MultiPoly>& phis, std::size_t s,
    const std::vector<MultiPoly>& psis) {
  if (phis.size() != plan.params.B)
    throw std::invalid_argument("make_queries: need B functions");
  if (psis.size() != c.T)
    throw std::invalid_argument("make_queries: need T masks");
  if (s < 1 || s > plan.params.S)
    throw std::invalid_argument("make_queries: round out of range");
  std::vector<MultiPoly> queries;
  queries.reserve(c.N);
  for (std::size_t n = 0; n < c.N; ++n) {
    const u64 alpha = c.ctx->reduce(c.alphas[n]);
    MultiPoly q = MultiPoly::zero(*c.ctx, c.M, static_cast<std::uint32_t>(c.G));
    for (std::size_t b = 1; b <= plan.params.B; ++b) {
      const auto& e = plan.exponent[s - 1][b - 1];
      if (!e) continue;
      q = q + phis[b - 1].scaled(c.ctx->pow_signed(alpha, *e));
    }
    for (std::size_t t = 1; t <= c.T; ++t)
      q = q + psis[t - 1].scaled(
                  c.ctx->pow(alpha, static_cast<u64>(plan.params.H + t - 1)));
    queries.push_back(std::move(q));
  }
  return queries;
}

// Fresh i.i.d. uniform masks every round; reusing them across rounds breaks
// privacy (the audit's negative control demonstrates this).
inline std::vector<MultiPoly> sample_masks(const SchemeConfig& c,
                                           RandomSource& rng) {
  std::vector<MultiPoly> psis;
  psis.reserve(c.T);
  for (std::size_t t = 0; t < c.T; ++t)
    psis.push_back(MultiPoly::sample_uniform(
        *c.ctx, c.M, static_cast<std::uint32_t>(c.G), rng));
  return psis;
}

inline std::vector<MultiPoly> make_queries(const QueryPlan& plan,
                                           const SchemeConfig& c,
                                           const std::vector<MultiPoly>& phis,
                                           std::size_t s, RandomSource& rng) {
  return make_queries_with_masks(plan, c, phis, s, sample_masks(c, rng));
}

// Coefficients of the gamma_b recovered so far, keyed by (b, l), 1<=b<=B,
// 0<=l<L. After round s the map holds s*H entries.
struct RoundState {
  std::size_t next_round = 1;
  std::map<std::pair<std::size_t, std::size_t>, u64> known_coeffs;
};

// One round of decoding: subtract the known negative-power terms (skipping
// erased positions; subtracting from ? is absorbing), correct P erasures
// and A errors in RS_{N'}(alpha), then read the coefficients of
// z^0..z^{H-1} into the state.
inline void decode_round(const QueryPlan& plan, const SchemeConfig& c,
                         RoundState& state, const ReceivedWord& received) {
  const std::size_t s = state.next_round;
  if (s < 1 || s > plan.params.S)
    throw std::invalid_argument("decode_round: all rounds already decoded");
  if (received.size() != c.N)
    throw std::invalid_argument("decode_round: wrong word length");

  ReceivedWord adjusted = received;
  for (const auto& [e, bl] : plan.known[s - 1]) {
    const auto it = state.known_coeffs.find(bl);
    if (it == state.known_coeffs.end())
      throw std::logic_error("decode_round: missing carry-over coefficient");
    for (std::size_t n = 0; n < c.N; ++n) {
      if (!adjusted[n].has_value()) continue;
      const u64 term = c.ctx->mul(it->second,
                                  c.ctx->pow_signed(c.alphas[n], e));
      adjusted[n] = c.ctx->sub(c.ctx->reduce(*adjusted[n]), term);
    }
  }

  RSCode code(*c.ctx, c.alphas, plan.params.Nprime);
  const UniPoly r = code.decode(adjusted, c.A);

  for (std::size_t p = 0; p < plan.params.H; ++p) {
    const auto& bl = plan.decoded[s - 1][p];
    if (bl.first == 0)
      throw std::logic_error("decode_round: schedule gap");
    state.known_coeffs[bl] = r.coeff(p);
  }
  state.next_round = s + 1;
}

// Assemble each gamma_b from its L coefficients and evaluate at the data
// nodes: phi_b(x_k) = gamma_b(beta_k). Result is B x K.
inline std::vector<std::vector<u64>> reconstruct(const RoundState& state,
                                                 const SchemeConfig& c,
                                                 const QueryPlan& plan) {
  std::vector<std::vector<u64>> out(plan.params.B,
                                    std::vector<u64>(c.K, 0));
  for (std::size_t b = 1; b <= plan.params.B; ++b) {
    std::vector<u64> coeffs(plan.params.L, 0);
    for (std::size_t l = 0; l < plan.params.L; ++l) {
      const auto it = state.known_coeffs.find({b, l});
      if (it == state.known_coeffs.end())
        throw std::logic_error("reconstruct: missing coefficient");
      coeffs[l] = it->second;
    }
    const UniPoly gamma(*c.ctx, std::move(coeffs));
    for (std::size_t k = 0; k < c.K; ++k)
      out[b - 1][k] = gamma.eval(c.ctx->reduce(c.betas[k]));
  }
  return out;
}

}  // namespace pcomp

#endif
