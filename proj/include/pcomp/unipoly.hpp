#ifndef PCOMP_UNIPOLY_HPP
#define PCOMP_UNIPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <pcomp/field.hpp>

namespace pcomp {

// Dense univariate polynomial over F_q. coeff(i) is the coefficient of z^i.
// Normalized: the highest stored coefficient is nonzero, or the coefficient
// list is empty (the zero polynomial, degree() == kDegZero).
class UniPoly {
 public:
  static constexpr long long kDegZero = -0x7fffffffffffffffll;

  explicit UniPoly(const FieldCtx& ctx) : ctx_(&ctx) {}
  UniPoly(const FieldCtx& ctx, std::vector<u64> coeffs)
      : ctx_(&ctx), c_(std::move(coeffs)) {
    for (u64& v : c_) v = ctx.reduce(v);
    normalize();
  }

  static UniPoly zero(const FieldCtx& ctx) { return UniPoly(ctx); }
  static UniPoly constant(const FieldCtx& ctx, u64 v) {
    return UniPoly(ctx, {v});
  }
  // c * z^e
  static UniPoly monomial(const FieldCtx& ctx, std::size_t e, u64 c = 1) {
    std::vector<u64> v(e + 1, 0);
    v[e] = ctx.reduce(c);
    return UniPoly(ctx, std::move(v));
  }

  const FieldCtx& ctx() const { return *ctx_; }
  bool is_zero() const { return c_.empty(); }
  long long degree() const {
    return c_.empty() ? kDegZero : static_cast<long long>(c_.size()) - 1;
  }
  u64 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<u64>& coeffs() const { return c_; }

  u64 eval(u64 x) const {
    u64 acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
      acc = ctx_->add(ctx_->mul(acc, x), c_[i]);
    return acc;
  }

  std::vector<u64> eval_vector(const std::vector<u64>& xs) const {
    std::vector<u64> out;
    out.reserve(xs.size());
    for (u64 x : xs) out.push_back(eval(x));
    return out;
  }

  UniPoly operator+(const UniPoly& o) const {
    check(o);
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = ctx_->add(coeff(i), o.coeff(i));
    return UniPoly(*ctx_, std::move(r));
  }

  UniPoly operator-(const UniPoly& o) const {
    check(o);
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = ctx_->sub(coeff(i), o.coeff(i));
    return UniPoly(*ctx_, std::move(r));
  }

  // Schoolbook product; scheme degrees never exceed N.
  UniPoly operator*(const UniPoly& o) const {
    check(o);
    if (is_zero() || o.is_zero()) return zero(*ctx_);
    std::vector<u64> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = ctx_->add(r[i + j], ctx_->mul(c_[i], o.c_[j]));
    }
    return UniPoly(*ctx_, std::move(r));
  }

  UniPoly scaled(u64 c) const {
    std::vector<u64> r(c_);
    for (u64& v : r) v = ctx_->mul(v, c);
    return UniPoly(*ctx_, std::move(r));
  }

  bool operator==(const UniPoly& o) const {
    return *ctx_ == *o.ctx_ && c_ == o.c_;
  }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  // Lagrange interpolation through the given points; x-coordinates must be
  // pairwise distinct. deg(result) <= points.size() - 1.
  static UniPoly interpolate(const FieldCtx& ctx,
                             const std::vector<std::pair<u64, u64>>& points) {
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (ctx.reduce(points[i].first) == ctx.reduce(points[j].first))
          throw std::invalid_argument("interpolate: duplicate node");
    UniPoly acc = zero(ctx);
    for (std::size_t i = 0; i < n; ++i) {
      UniPoly basis = constant(ctx, 1);
      u64 denom = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        // basis *= (z - x_j)
        basis = basis * UniPoly(ctx, {ctx.neg(ctx.reduce(points[j].first)),
                                      1});
        denom = ctx.mul(denom,
                        ctx.sub(ctx.reduce(points[i].first),
                                ctx.reduce(points[j].first)));
      }
      acc = acc + basis.scaled(ctx.mul(ctx.reduce(points[i].second),
                                       ctx.inv(denom)));
    }
    return acc;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void check(const UniPoly& o) const {
    if (*ctx_ != *o.ctx_)
      throw std::invalid_argument("UniPoly: mismatched field contexts");
  }

  const FieldCtx* ctx_;
  std::vector<u64> c_;
};

// Univariate polynomial allowing negative exponents (F_q[z, z^-1]).
// coeff list starts at exponent lo(); first and last stored coefficients
// are nonzero unless the polynomial is identically zero.
class LaurentPoly {
 public:
  explicit LaurentPoly(const FieldCtx& ctx) : ctx_(&ctx), lo_(0) {}
  LaurentPoly(const FieldCtx& ctx, long long lo, std::vector<u64> coeffs)
      : ctx_(&ctx), lo_(lo), c_(std::move(coeffs)) {
    for (u64& v : c_) v = ctx.reduce(v);
    normalize();
  }
  explicit LaurentPoly(const UniPoly& p)
      : ctx_(&p.ctx()), lo_(0), c_(p.coeffs()) {}

  static LaurentPoly zero(const FieldCtx& ctx) { return LaurentPoly(ctx); }
  // c * z^e for any integer e
  static LaurentPoly monomial(const FieldCtx& ctx, long long e, u64 c = 1) {
    return LaurentPoly(ctx, e, {ctx.reduce(c)});
  }

  const FieldCtx& ctx() const { return *ctx_; }
  bool is_zero() const { return c_.empty(); }
  long long lo() const { return lo_; }
  long long hi() const {
    return lo_ + static_cast<long long>(c_.size()) - 1;
  }
  u64 coeff(long long e) const {
    if (is_zero() || e < lo_ || e > hi()) return 0;
    return c_[static_cast<std::size_t>(e - lo_)];
  }

  u64 eval(u64 x) const {
    if (is_zero()) return 0;
    if (lo_ < 0 && x == 0)
      throw std::domain_error(
          "LaurentPoly: evaluation at zero with negative exponents");
    u64 acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
      acc = ctx_->add(ctx_->mul(acc, x), c_[i]);
    return ctx_->mul(acc, ctx_->pow_signed(x, lo_));
  }

  std::vector<u64> eval_vector(const std::vector<u64>& xs) const {
    std::vector<u64> out;
    out.reserve(xs.size());
    for (u64 x : xs) out.push_back(eval(x));
    return out;
  }

  LaurentPoly shifted(long long h) const {
    if (is_zero()) return *this;
    return LaurentPoly(*ctx_, lo_ + h, c_);
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    check(o);
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const long long lo = std::min(lo_, o.lo_);
    const long long hi_e = std::max(hi(), o.hi());
    std::vector<u64> r(static_cast<std::size_t>(hi_e - lo + 1), 0);
    for (long long e = lo; e <= hi_e; ++e)
      r[static_cast<std::size_t>(e - lo)] = ctx_->add(coeff(e), o.coeff(e));
    return LaurentPoly(*ctx_, lo, std::move(r));
  }

  LaurentPoly operator*(const LaurentPoly& o) const {
    check(o);
    if (is_zero() || o.is_zero()) return zero(*ctx_);
    std::vector<u64> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = ctx_->add(r[i + j], ctx_->mul(c_[i], o.c_[j]));
    }
    return LaurentPoly(*ctx_, lo_ + o.lo_, std::move(r));
  }

  LaurentPoly scaled(u64 c) const {
    std::vector<u64> r(c_);
    for (u64& v : r) v = ctx_->mul(v, c);
    return LaurentPoly(*ctx_, lo_, std::move(r));
  }

  bool operator==(const LaurentPoly& o) const {
    return *ctx_ == *o.ctx_ && (is_zero() ? o.is_zero()
                                          : (lo_ == o.lo_ && c_ == o.c_));
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (long long e = lo_; e <= hi(); ++e) {
      u64 c = coeff(e);
      if (c == 0) continue;
      if (!out.empty()) out += " + ";
      if (e == 0) {
        out += std::to_string(c);
      } else {
        if (c != 1) out += std::to_string(c) + "*";
        out += "z^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    std::size_t drop = 0;
    while (drop < c_.size() && c_[drop] == 0) ++drop;
    if (drop > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long long>(drop));
      lo_ += static_cast<long long>(drop);
    }
    if (c_.empty()) lo_ = 0;
  }
  void check(const LaurentPoly& o) const {
    if (*ctx_ != *o.ctx_)
      throw std::invalid_argument("LaurentPoly: mismatched field contexts");
  }

  const FieldCtx* ctx_;
  long long lo_;
  std::vector<u64> c_;
};

// Vector-valued polynomial (one UniPoly per coordinate); houses u_X(z).
struct PolyVector {
  std::vector<UniPoly> components;

  std::size_t size() const { return components.size(); }

  std::vector<u64> eval(u64 x) const {
    std::vector<u64> out;
    out.reserve(components.size());
    for (const auto& p : components) out.push_back(p.eval(x));
    return out;
  }

  long long max_degree() const {
    long long d = UniPoly::kDegZero;
    for (const auto& p : components) d = std::max(d, p.degree());
    return d;
  }
};

}  // namespace pcomp

#endif
