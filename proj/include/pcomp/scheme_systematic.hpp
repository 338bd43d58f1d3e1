#ifndef PCOMP_SCHEME_SYSTEMATIC_HPP
#define PCOMP_SCHEME_SYSTEMATIC_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <pcomp/field.hpp>
#include <pcomp/mvpoly.hpp>
#include <pcomp/rational.hpp>
#include <pcomp/rscode.hpp>
#include <pcomp/scheme_general.hpp>
#include <pcomp/unipoly.hpp>

namespace pcomp {

// Parameters of the systematic scheme (P = A = E = 0 only). Storage is
// systematic Lagrange encoding with beta_i = alpha_i for i in [K]; the
// retrieval code is D = RS_T(alpha) and the response code is
// E = C^{*G} * D = RS_{G(K-1)+T}(alpha), with F = d(E) - 1 = N - G(K-1) - T.
struct SysParams {
  const FieldCtx* ctx = nullptr;
  std::size_t N = 0, K = 0, M = 0, G = 0, T = 0;
  std::vector<u64> alphas;

  static SysParams make(const FieldCtx& ctx, std::size_t N, std::size_t K,
                        std::size_t M, std::size_t G, std::size_t T) {
    SysParams p;
    p.ctx = &ctx;
    p.N = N;
    p.K = K;
    p.M = M;
    p.G = G;
    p.T = T;
    for (std::size_t n = 1; n <= N; ++n) p.alphas.push_back(n);
    p.validate();
    return p;
  }

  void validate() const {
    if (ctx == nullptr) throw InfeasibleParameters("SysParams: no field");
    if (K < 1 || M < 1 || G < 1)
      throw InfeasibleParameters("SysParams: K, M, G must be >= 1");
    if (N <= G * (K - 1) + T)
      throw InfeasibleParameters("SysParams: requires N > G(K-1) + T");
    if (ctx->modulus() < N + 1)
      throw InfeasibleParameters("SysParams: requires q > N");
    if (alphas.size() != N)
      throw InfeasibleParameters("SysParams: need N alphas");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (ctx->reduce(alphas[i]) == 0)
        throw InfeasibleParameters("SysParams: alphas must be nonzero");
      for (std::size_t j = i + 1; j < alphas.size(); ++j)
        if (ctx->reduce(alphas[i]) == ctx->reduce(alphas[j]))
          throw InfeasibleParameters("SysParams: duplicate alpha");
    }
  }

  std::size_t F() const { return N - G * (K - 1) - T; }
  std::size_t per_round() const { return std::min(F(), K); }
  std::size_t S() const { return std::lcm(K, per_round()) / per_round(); }
  std::size_t B() const { return std::lcm(K, per_round()) / K; }
  std::size_t response_dim() const { return G * (K - 1) + T; }
};

// sets[s-1][b-1] = I^(s,b), 1-based data indices. Per round the sets are
// pairwise disjoint with |I^(s)| = min{F,K}; per function b they cover [K].
struct IndexSchedule {
  std::vector<std::vector<std::vector<std::size_t>>> sets;

  std::vector<std::size_t> round_union(std::size_t s) const {
    std::vector<std::size_t> all;
    for (const auto& set : sets.at(s - 1))
      all.insert(all.end(), set.begin(), set.end());
    std::sort(all.begin(), all.end());
    return all;
  }
};

// Row-filling construction: walk the (s,b) cells in order, assigning the K
// indices 1..K per function across consecutive rounds, min{F,K} per round.
// Reproduces the F=4, K=6 example layout.
inline IndexSchedule build_schedule(const SysParams& p) {
  p.validate();
  const std::size_t S = p.S(), B = p.B(), cap = p.per_round();
  IndexSchedule sched;
  sched.sets.assign(S, std::vector<std::vector<std::size_t>>(B));
  std::size_t s = 0, used = 0;
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t k = 1; k <= p.K; ++k) {
      if (used == cap) {
        ++s;
        used = 0;
      }
      sched.sets[s][b].push_back(k);
      ++used;
    }
  }
  return sched;
}

// Systematic storage: u_X interpolates x_k at alpha_k, so server k <= K
// stores x_k verbatim and servers k > K store parity evaluations.
inline EncodedStore encode_sys_data(const SysParams& p,
                                    const std::vector<std::vector<u64>>& x) {
  if (x.size() != p.K)
    throw std::invalid_argument("encode_sys_data: need K vectors");
  EncodedStore store;
  for (std::size_t m = 0; m < p.M; ++m) {
    std::vector<std::pair<u64, u64>> pts;
    for (std::size_t k = 0; k < p.K; ++k) {
      if (x[k].size() != p.M)
        throw std::invalid_argument("encode_sys_data: wrong vector length");
      pts.emplace_back(p.alphas[k], x[k][m]);
    }
    store.uX.components.push_back(UniPoly::interpolate(*p.ctx, pts));
  }
  store.y.reserve(p.N);
  for (std::size_t n = 0; n < p.N; ++n)
    store.y.push_back(store.uX.eval(p.alphas[n]));
  return store;
}

// Retrieval-code draw for one round: Q = dim P_{M,G} codewords of
// D = RS_T(alpha), i.e. evaluations of random polynomials of degree < T.
// For T = 0 the retrieval code is {0} and the masks vanish.
inline std::vector<std::vector<u64>> sample_retrieval_codewords(
    const SysParams& p, RandomSource& rng) {
  const std::size_t Q =
      MultiPoly::dimension(p.M, static_cast<std::uint32_t>(p.G));
  std::vector<std::vector<u64>> d;
  d.reserve(Q);
  for (std::size_t j = 0; j < Q; ++j) {
    std::vector<u64> coeffs(p.T, 0);
    for (u64& c : coeffs) c = p.ctx->sample(rng);
    d.push_back(UniPoly(*p.ctx, std::move(coeffs)).eval_vector(p.alphas));
  }
  return d;
}

// psi_n = sum_j d^j(n) psi^j over the monomial basis of P_{M,G}, plus
// phi_b at the servers n in I^(s,b).
inline std::vector<MultiPoly> make_sys_queries_with_codewords(
    const SysParams& p, const IndexSchedule& sched,
    const std::vector<MultiPoly>& phis, std::size_t s,
    const std::vector<std::vector<u64>>& d) {
  if (phis.size() != p.B())
    throw std::invalid_argument("make_sys_queries: need B functions");
  if (s < 1 || s > p.S())
    throw std::invalid_argument("make_sys_queries: round out of range");
  const auto mons = MultiPoly::basis(p.M, static_cast<std::uint32_t>(p.G));
  if (d.size() != mons.size())
    throw std::invalid_argument("make_sys_queries: need dim P_G codewords");
  std::vector<MultiPoly> queries;
  queries.reserve(p.N);
  for (std::size_t n = 0; n < p.N; ++n) {
    MultiPoly q = MultiPoly::zero(*p.ctx, p.M, static_cast<std::uint32_t>(p.G));
    for (std::size_t j = 0; j < mons.size(); ++j)
      q.add_term(mons[j], d[j][n]);
    for (std::size_t b = 0; b < p.B(); ++b) {
      const auto& set = sched.sets[s - 1][b];
      if (std::find(set.begin(), set.end(), n + 1) != set.end())
        q = q + phis[b];
    }
    queries.push_back(std::move(q));
  }
  return queries;
}

inline std::vector<MultiPoly> make_sys_queries(
    const SysParams& p, const IndexSchedule& sched,
    const std::vector<MultiPoly>& phis, std::size_t s, RandomSource& rng) {
  return make_sys_queries_with_codewords(p, sched, phis, s,
                                         sample_retrieval_codewords(p, rng));
}

// Recovered entries of one round: value = phi_b(x_k).
struct SysRecovered {
  std::size_t b, k;  // 1-based
  u64 value;
};

// The response vector is psi(Y) + v^(s) with psi(Y) in
// E = RS_{G(K-1)+T}(alpha) and v^(s) supported on I^(s). Since the user
// chose I^(s), recovery is erasure decoding at known support: interpolate
// psi(Y) from the complement, check consistency, subtract.
inline std::vector<SysRecovered> decode_sys_round(
    const SysParams& p, const IndexSchedule& sched, std::size_t s,
    const std::vector<u64>& responses) {
  if (responses.size() != p.N)
    throw std::invalid_argument("decode_sys_round: wrong response length");
  const auto in_round = sched.round_union(s);
  const std::size_t dim = p.response_dim();

  std::vector<std::pair<u64, u64>> pts;
  std::vector<std::pair<u64, u64>> check_pts;
  for (std::size_t n = 1; n <= p.N; ++n) {
    if (std::binary_search(in_round.begin(), in_round.end(), n)) continue;
    if (pts.size() < dim)
      pts.emplace_back(p.alphas[n - 1], responses[n - 1]);
    else
      check_pts.emplace_back(p.alphas[n - 1], responses[n - 1]);
  }
  const UniPoly psi = pts.empty() ? UniPoly::zero(*p.ctx)
                                  : UniPoly::interpolate(*p.ctx, pts);
  for (const auto& [a, v] : check_pts)
    if (psi.eval(a) != p.ctx->reduce(v))
      throw DecodeFailure(
          "decode_sys_round: responses inconsistent with the response code");

  std::vector<SysRecovered> out;
  for (std::size_t b = 0; b < p.B(); ++b) {
    for (std::size_t k : sched.sets[s - 1][b]) {
      const u64 mask = psi.eval(p.alphas[k - 1]);
      out.push_back({b + 1, k,
                     p.ctx->sub(p.ctx->reduce(responses[k - 1]), mask)});
    }
  }
  return out;
}

// Exact rate min{F,K}/N.
inline Rational sys_rate(const SysParams& p) {
  p.validate();
  return {static_cast<long long>(p.per_round()),
          static_cast<long long>(p.N)};
}

// Large-system rates at alpha = K/N, beta = T/N: (1-beta)/G - alpha for the
// general scheme and min{1 - alpha*G - beta, alpha} for the systematic one.
inline std::pair<double, double> asymptotic_rates(double alpha, double beta,
                                                  std::size_t G) {
  if (alpha <= 0 || beta < 0 || alpha * static_cast<double>(G) + beta > 1.0)
    throw InfeasibleParameters("asymptotic_rates: requires alpha*G+beta <= 1");
  const double general = (1.0 - beta) / static_cast<double>(G) - alpha;
  const double systematic =
      std::min(1.0 - alpha * static_cast<double>(G) - beta, alpha);
  return {general, systematic};
}

}  // namespace pcomp

#endif
