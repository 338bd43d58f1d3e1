#ifndef PCOMP_RNG_HPP
#define PCOMP_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace pcomp {

// Abstract bit source. Field sampling draws raw 64-bit words from here,
// so tests can plug in degenerate sources (e.g. all-zero bits).
struct RandomSource {
  virtual ~RandomSource() = default;
  virtual std::uint64_t next_u64() = 0;
};

// Stable FNV-1a, used to derive independent named streams from one seed.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic seeded stream. Each named stream (data padding, query
// masks, fault positions, byzantine values) gets its own instance so a
// single stream can be varied or enumerated while the others stay fixed.
class SeededSource final : public RandomSource {
 public:
  explicit SeededSource(std::uint64_t seed, std::string_view stream = "")
      : gen_(seed ^ fnv1a(stream)) {}

  std::uint64_t next_u64() override { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

struct ZeroSource final : RandomSource {
  std::uint64_t next_u64() override { return 0; }
};

}  // namespace pcomp

#endif
