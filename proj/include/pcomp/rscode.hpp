#ifndef PCOMP_RSCODE_HPP
#define PCOMP_RSCODE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <pcomp/field.hpp>
#include <pcomp/linalg.hpp>
#include <pcomp/unipoly.hpp>

namespace pcomp {

// Per-position channel symbol; nullopt is the erasure symbol. Erasures are
// a tagged alternative, never an in-band field value.
using ReceivedWord = std::vector<std::optional<u64>>;

struct DecodeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<u64> star(const std::vector<u64>& x,
                             const std::vector<u64>& y, const FieldCtx& f) {
  if (x.size() != y.size())
    throw std::invalid_argument("star: length mismatch");
  std::vector<u64> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.mul(x[i], y[i]);
  return r;
}

// dim RS_K(alpha)^{*G} = min{G(K-1)+1, N}
inline std::size_t star_power_dim(std::size_t n, std::size_t k,
                                  std::size_t g) {
  return std::min(g * (k - 1) + 1, n);
}

// RS_K(alpha): evaluations at N pairwise-distinct points of polynomials of
// degree < K.
class RSCode {
 public:
  RSCode(const FieldCtx& ctx, std::vector<u64> alphas, std::size_t k)
      : ctx_(&ctx), alphas_(std::move(alphas)), k_(k) {
    for (u64& a : alphas_) a = ctx.reduce(a);
    for (std::size_t i = 0; i < alphas_.size(); ++i)
      for (std::size_t j = i + 1; j < alphas_.size(); ++j)
        if (alphas_[i] == alphas_[j])
          throw std::invalid_argument("RSCode: duplicate evaluation point");
    if (k_ < 1 || k_ > alphas_.size())
      throw std::invalid_argument("RSCode: dimension out of range");
  }

  const FieldCtx& ctx() const { return *ctx_; }
  std::size_t length() const { return alphas_.size(); }
  std::size_t dimension() const { return k_; }
  const std::vector<u64>& alphas() const { return alphas_; }

  // Row i = (alpha_1^i, ..., alpha_N^i), i = 0..K-1.
  Matrix canonical_generator() const {
    Matrix g(k_, std::vector<u64>(length()));
    for (std::size_t n = 0; n < length(); ++n) {
      u64 p = 1;
      for (std::size_t i = 0; i < k_; ++i) {
        g[i][n] = p;
        p = ctx_->mul(p, alphas_[n]);
      }
    }
    return g;
  }

  // Entry (k,n) = prod_{j != k} (beta_j - alpha_n) / (beta_j - beta_k).
  // Systematic when beta_k = alpha_k for all k.
  Matrix lagrange_generator(const std::vector<u64>& betas) const {
    if (betas.size() != k_)
      throw std::invalid_argument("lagrange_generator: need K betas");
    std::vector<u64> b(betas);
    for (u64& v : b) v = ctx_->reduce(v);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = i + 1; j < k_; ++j)
        if (b[i] == b[j])
          throw std::invalid_argument("lagrange_generator: duplicate beta");
    Matrix g(k_, std::vector<u64>(length()));
    for (std::size_t k = 0; k < k_; ++k) {
      u64 denom = 1;
      for (std::size_t j = 0; j < k_; ++j)
        if (j != k) denom = ctx_->mul(denom, ctx_->sub(b[j], b[k]));
      const u64 dinv = ctx_->inv(denom);
      for (std::size_t n = 0; n < length(); ++n) {
        u64 num = 1;
        for (std::size_t j = 0; j < k_; ++j)
          if (j != k) num = ctx_->mul(num, ctx_->sub(b[j], alphas_[n]));
        g[k][n] = ctx_->mul(num, dinv);
      }
    }
    return g;
  }

  std::vector<u64> encode(const UniPoly& f) const {
    if (f.degree() >= static_cast<long long>(k_))
      throw std::invalid_argument("encode: message degree too large");
    return f.eval_vector(alphas_);
  }

  // Corrects up to (number of erasures) erasures plus up to max_errors
  // errors: erased positions are punctured, Berlekamp-Welch runs on the
  // rest, and the result is verified against the kept positions. Requires
  // erasures + 2*max_errors <= N - K. Returns the message polynomial.
  UniPoly decode(const ReceivedWord& received, std::size_t max_errors) const {
    if (received.size() != length())
      throw std::invalid_argument("decode: wrong word length");
    std::vector<u64> xs, ys;
    for (std::size_t n = 0; n < received.size(); ++n) {
      if (received[n].has_value()) {
        xs.push_back(alphas_[n]);
        ys.push_back(ctx_->reduce(*received[n]));
      }
    }
    const std::size_t kept = xs.size();
    // erasures + 2*max_errors <= N - K, i.e. kept >= K + 2*max_errors
    if (kept < k_ + 2 * max_errors)
      throw DecodeFailure("decode: erasure/error budget exceeds N - K");

    // a = error-locator degree; try the full budget first, falling back to
    // smaller degrees to dodge degenerate (singular) systems.
    for (std::size_t a = max_errors;; --a) {
      if (auto f = berlekamp_welch(xs, ys, a)) {
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < kept; ++i)
          if (f->eval(xs[i]) != ys[i]) ++mismatches;
        if (mismatches <= max_errors) return *f;
      }
      if (a == 0) break;
    }
    throw DecodeFailure("decode: no codeword within the error budget");
  }

 private:
  // Solve Q(x_i) = y_i * E(x_i) with E monic of degree a, deg Q < K + a.
  // Returns Q / E when the division is exact.
  std::optional<UniPoly> berlekamp_welch(const std::vector<u64>& xs,
                                         const std::vector<u64>& ys,
                                         std::size_t a) const {
    const std::size_t nq = k_ + a;  // unknown coefficients of Q
    Matrix sys(xs.size(), std::vector<u64>(nq + a, 0));
    std::vector<u64> rhs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      u64 p = 1;
      for (std::size_t j = 0; j < nq; ++j) {
        sys[i][j] = p;
        p = ctx_->mul(p, xs[i]);
      }
      p = 1;
      for (std::size_t j = 0; j < a; ++j) {
        sys[i][nq + j] = ctx_->neg(ctx_->mul(ys[i], p));
        p = ctx_->mul(p, xs[i]);
      }
      rhs[i] = ctx_->mul(ys[i], ctx_->pow(xs[i], a));
    }
    auto sol = solve(*ctx_, std::move(sys), rhs);
    if (!sol) return std::nullopt;
    UniPoly qpoly(*ctx_,
                  std::vector<u64>(sol->begin(), sol->begin() + nq));
    std::vector<u64> ecoeffs(sol->begin() + nq, sol->end());
    ecoeffs.push_back(1);  // monic
    UniPoly epoly(*ctx_, std::move(ecoeffs));
    return divide_exact(qpoly, epoly);
  }

  std::optional<UniPoly> divide_exact(const UniPoly& num,
                                      const UniPoly& den) const {
    if (num.is_zero()) return UniPoly::zero(*ctx_);
    if (num.degree() < den.degree()) return std::nullopt;
    std::vector<u64> rem(num.coeffs());
    const auto& d = den.coeffs();
    const u64 lead_inv = ctx_->inv(d.back());
    std::vector<u64> quot(rem.size() - d.size() + 1, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
      const u64 c = ctx_->mul(rem[i + d.size() - 1], lead_inv);
      quot[i] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < d.size(); ++j)
        rem[i + j] = ctx_->sub(rem[i + j], ctx_->mul(c, d[j]));
    }
    for (u64 r : rem)
      if (r != 0) return std::nullopt;
    return UniPoly(*ctx_, std::move(quot));
  }

  const FieldCtx* ctx_;
  std::vector<u64> alphas_;
  std::size_t k_;
};

}  // namespace pcomp

#endif
