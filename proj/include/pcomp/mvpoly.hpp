#ifndef PCOMP_MVPOLY_HPP
#define PCOMP_MVPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <pcomp/field.hpp>
#include <pcomp/unipoly.hpp>

namespace pcomp {

// Exponent vector of length M.
using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

// Graded-lexicographic order: lower total degree first; within a degree,
// the monomial with the larger exponent on the earliest variable first
// (so for M=2, G=1 the basis reads 1, X1, X2).
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  }
};

// Element of P_{M,G}: M-variate polynomial of total degree at most G.
// Sparse term map keyed by monomial; zero coefficients are never stored.
class MultiPoly {
 public:
  MultiPoly(const FieldCtx& ctx, std::size_t arity, std::uint32_t degree_bound)
      : ctx_(&ctx), arity_(arity), bound_(degree_bound) {
    if (arity < 1) throw std::invalid_argument("MultiPoly: arity must be >= 1");
  }

  static MultiPoly zero(const FieldCtx& ctx, std::size_t arity,
                        std::uint32_t degree_bound) {
    return MultiPoly(ctx, arity, degree_bound);
  }

  // All monomials of total degree <= G in M variables, graded-lex order.
  // Count is C(M+G, G).
  static std::vector<Monomial> basis(std::size_t arity,
                                     std::uint32_t degree_bound) {
    std::vector<Monomial> out;
    Monomial cur(arity, 0);
    enumerate(cur, 0, degree_bound, out);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
  }

  static std::size_t dimension(std::size_t arity, std::uint32_t degree_bound) {
    // C(M+G, G)
    std::size_t r = 1;
    for (std::uint32_t i = 1; i <= degree_bound; ++i)
      r = r * (arity + i) / i;
    return r;
  }

  // Each basis coefficient i.i.d. uniform over F_q.
  static MultiPoly sample_uniform(const FieldCtx& ctx, std::size_t arity,
                                  std::uint32_t degree_bound,
                                  RandomSource& rng) {
    MultiPoly p(ctx, arity, degree_bound);
    for (const Monomial& m : basis(arity, degree_bound))
      p.add_term(m, ctx.sample(rng));
    return p;
  }

  // Build from coefficients listed in graded-lex basis order.
  static MultiPoly from_basis_coeffs(const FieldCtx& ctx, std::size_t arity,
                                     std::uint32_t degree_bound,
                                     const std::vector<u64>& coeffs) {
    const auto mons = basis(arity, degree_bound);
    if (coeffs.size() != mons.size())
      throw std::invalid_argument("MultiPoly: coefficient count mismatch");
    MultiPoly p(ctx, arity, degree_bound);
    for (std::size_t i = 0; i < mons.size(); ++i)
      p.add_term(mons[i], coeffs[i]);
    return p;
  }

  const FieldCtx& ctx() const { return *ctx_; }
  std::size_t arity() const { return arity_; }
  std::uint32_t degree_bound() const { return bound_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, u64, GradedLexLess>& terms() const {
    return terms_;
  }

  void add_term(const Monomial& m, u64 coeff) {
    if (m.size() != arity_)
      throw std::invalid_argument("MultiPoly: monomial arity mismatch");
    if (total_degree(m) > bound_)
      throw std::invalid_argument("MultiPoly: degree bound exceeded");
    coeff = ctx_->reduce(coeff);
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
      it->second = ctx_->add(it->second, coeff);
      if (it->second == 0) terms_.erase(it);
    }
  }

  u64 coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }

  u64 eval(const std::vector<u64>& x) const {
    if (x.size() != arity_)
      throw std::invalid_argument("MultiPoly: eval arity mismatch");
    u64 acc = 0;
    for (const auto& [mon, c] : terms_) {
      u64 t = c;
      for (std::size_t i = 0; i < arity_; ++i)
        if (mon[i] != 0) t = ctx_->mul(t, ctx_->pow(x[i], mon[i]));
      acc = ctx_->add(acc, t);
    }
    return acc;
  }

  MultiPoly operator+(const MultiPoly& o) const {
    check_shape(o);
    MultiPoly r = *this;
    for (const auto& [mon, c] : o.terms_) r.add_term(mon, c);
    return r;
  }

  MultiPoly scaled(u64 c) const {
    MultiPoly r(*ctx_, arity_, bound_);
    for (const auto& [mon, v] : terms_) r.add_term(mon, ctx_->mul(v, c));
    return r;
  }

  static MultiPoly linear_combine(const std::vector<u64>& coeffs,
                                  const std::vector<MultiPoly>& polys) {
    if (coeffs.size() != polys.size() || polys.empty())
      throw std::invalid_argument("linear_combine: shape mismatch");
    MultiPoly r(polys[0].ctx(), polys[0].arity(), polys[0].degree_bound());
    for (std::size_t i = 0; i < polys.size(); ++i) {
      polys[0].check_shape(polys[i]);
      for (const auto& [mon, v] : polys[i].terms_)
        r.add_term(mon, r.ctx_->mul(v, r.ctx_->reduce(coeffs[i])));
    }
    return r;
  }

  // gamma(z) = phi(u_1(z), ..., u_M(z)). Powers of each component are
  // memoized per call; deg(result) <= G * max_i deg(u_i).
  UniPoly compose(const PolyVector& u) const {
    if (u.size() != arity_)
      throw std::invalid_argument("compose: arity mismatch");
    std::vector<std::vector<UniPoly>> powers(arity_);
    for (std::size_t i = 0; i < arity_; ++i)
      powers[i].push_back(UniPoly::constant(*ctx_, 1));
    auto power = [&](std::size_t i, std::uint32_t e) -> const UniPoly& {
      while (powers[i].size() <= e)
        powers[i].push_back(powers[i].back() * u.components[i]);
      return powers[i][e];
    };
    UniPoly acc = UniPoly::zero(*ctx_);
    for (const auto& [mon, c] : terms_) {
      UniPoly t = UniPoly::constant(*ctx_, c);
      for (std::size_t i = 0; i < arity_; ++i)
        if (mon[i] != 0) t = t * power(i, mon[i]);
      acc = acc + t;
    }
    return acc;
  }

  bool operator==(const MultiPoly& o) const {
    return *ctx_ == *o.ctx_ && arity_ == o.arity_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // Canonical text form used by the auditor and CLI: graded-lex sorted
  // terms, "coeff*X1^e1*..." with unit coefficients and exponents elided.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [mon, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string vars;
      for (std::size_t i = 0; i < arity_; ++i) {
        if (mon[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "X" + std::to_string(i + 1);
        if (mon[i] > 1) vars += "^" + std::to_string(mon[i]);
      }
      if (vars.empty()) {
        out += std::to_string(c);
      } else {
        if (c != 1) out += std::to_string(c) + "*";
        out += vars;
      }
    }
    return out;
  }

 private:
  static void enumerate(Monomial& cur, std::size_t pos,
                        std::uint32_t remaining, std::vector<Monomial>& out) {
    if (pos == cur.size()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= remaining; ++e) {
      cur[pos] = e;
      enumerate(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
  }

  void check_shape(const MultiPoly& o) const {
    if (*ctx_ != *o.ctx_ || arity_ != o.arity_ || bound_ != o.bound_)
      throw std::invalid_argument("MultiPoly: shape mismatch");
  }

  const FieldCtx* ctx_;
  std::size_t arity_;
  std::uint32_t bound_;
  std::map<Monomial, u64, GradedLexLess> terms_;
};

}  // namespace pcomp

#endif
