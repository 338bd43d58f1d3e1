#ifndef PCOMP_FIELD_HPP
#define PCOMP_FIELD_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <pcomp/rng.hpp>

namespace pcomp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 q) {
  return static_cast<u64>((static_cast<u128>(a) * b) % q);
}

inline u64 powmod(u64 base, u64 exp, u64 q) {
  u64 r = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, q);
    base = mulmod(base, base, q);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

// Prime field F_q with runtime modulus. Values are canonical representatives
// in [0, q). Immutable after construction; all operations are pure.
// Supports q up to 2^61 (products go through 128-bit intermediates).
class FieldCtx {
 public:
  explicit FieldCtx(u64 q) : q_(q) {
    if (q < 2 || !detail::is_prime(q))
      throw std::invalid_argument("FieldCtx: modulus " + std::to_string(q) +
                                  " is not prime");
    if (q > (u64{1} << 61))
      throw std::invalid_argument("FieldCtx: modulus exceeds 2^61");
  }

  u64 modulus() const { return q_; }

  u64 reduce(u64 a) const { return a % q_; }
  u64 add(u64 a, u64 b) const { return (a + b) % q_; }
  u64 sub(u64 a, u64 b) const { return (a + q_ - b) % q_; }
  u64 neg(u64 a) const { return a == 0 ? 0 : q_ - a; }
  u64 mul(u64 a, u64 b) const { return detail::mulmod(a, b, q_); }
  u64 pow(u64 a, u64 e) const { return detail::powmod(a, e, q_); }

  u64 inv(u64 a) const {
    if (a == 0) throw std::domain_error("FieldCtx: inverse of zero");
    return detail::powmod(a, q_ - 2, q_);
  }

  // a^e for signed e (negative exponents via inverse; requires a != 0).
  u64 pow_signed(u64 a, long long e) const {
    if (e >= 0) return pow(a, static_cast<u64>(e));
    return pow(inv(a), static_cast<u64>(-e));
  }

  // Uniform draw by rejection from the smallest power-of-two cover of q,
  // so the output is exactly uniform given a uniform bit source.
  u64 sample(RandomSource& rng) const {
    const int bits = std::bit_width(q_ - 1);
    const u64 mask = bits >= 64 ? ~u64{0} : (u64{1} << bits) - 1;
    for (;;) {
      u64 v = rng.next_u64() & mask;
      if (v < q_) return v;
    }
  }

  bool operator==(const FieldCtx& o) const { return q_ == o.q_; }
  bool operator!=(const FieldCtx& o) const { return q_ != o.q_; }

 private:
  u64 q_;
};

// Value-semantic field element bound to a context.
class FieldElement {
 public:
  FieldElement(const FieldCtx& ctx, u64 v) : ctx_(&ctx), v_(ctx.reduce(v)) {}

  u64 value() const { return v_; }
  const FieldCtx& ctx() const { return *ctx_; }

  FieldElement operator+(const FieldElement& o) const {
    check(o);
    return {*ctx_, ctx_->add(v_, o.v_)};
  }
  FieldElement operator-(const FieldElement& o) const {
    check(o);
    return {*ctx_, ctx_->sub(v_, o.v_)};
  }
  FieldElement operator*(const FieldElement& o) const {
    check(o);
    return {*ctx_, ctx_->mul(v_, o.v_)};
  }
  FieldElement operator-() const { return {*ctx_, ctx_->neg(v_)}; }

  FieldElement inv() const { return {*ctx_, ctx_->inv(v_)}; }

  FieldElement pow(u64 e) const { return {*ctx_, ctx_->pow(v_, e)}; }

  bool operator==(const FieldElement& o) const {
    check(o);
    return v_ == o.v_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void check(const FieldElement& o) const {
    if (*ctx_ != *o.ctx_)
      throw std::invalid_argument("FieldElement: mismatched field contexts");
  }

  const FieldCtx* ctx_;
  u64 v_;
};

}  // namespace pcomp

#endif
