#ifndef PCOMP_SIMNET_HPP
#define PCOMP_SIMNET_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <pcomp/field.hpp>
#include <pcomp/mvpoly.hpp>
#include <pcomp/rng.hpp>
#include <pcomp/rscode.hpp>

namespace pcomp {

enum class ByzantineStrategy {
  kRandomValue,     // uniform draw, re-rolled until it differs from honest
  kFixedValue,      // a fixed field element (bumped if it matches honest)
  kAdditiveOffset,  // honest value plus a nonzero offset
};

inline std::string to_string(ByzantineStrategy s) {
  switch (s) {
    case ByzantineStrategy::kRandomValue:
      return "random";
    case ByzantineStrategy::kFixedValue:
      return "fixed";
    case ByzantineStrategy::kAdditiveOffset:
      return "offset";
  }
  return "?";
}

// Per-round fault assignment. Server indices are 1-based. Corruption is
// guaranteed to differ from the honest value, so the error count is exact.
struct FaultPlan {
  struct Round {
    std::vector<std::size_t> stragglers;
    std::vector<std::size_t> byzantine;
    ByzantineStrategy strategy = ByzantineStrategy::kRandomValue;
    u64 param = 1;  // fixed value or additive offset
  };
  std::vector<Round> rounds;

  static FaultPlan none(std::size_t num_rounds) {
    FaultPlan plan;
    plan.rounds.resize(num_rounds);
    return plan;
  }

  // Randomized positions each round, within the (P, A) budget.
  static FaultPlan random(std::size_t num_rounds, std::size_t n,
                          std::size_t p, std::size_t a, RandomSource& rng,
                          ByzantineStrategy strategy =
                              ByzantineStrategy::kRandomValue,
                          u64 param = 1) {
    if (p + a > n) throw std::invalid_argument("FaultPlan: too many faults");
    FaultPlan plan;
    for (std::size_t s = 0; s < num_rounds; ++s) {
      Round r;
      r.strategy = strategy;
      r.param = param;
      std::vector<std::size_t> servers(n);
      for (std::size_t i = 0; i < n; ++i) servers[i] = i + 1;
      // partial Fisher-Yates over the 1..N index pool
      for (std::size_t i = 0; i < p + a; ++i) {
        const std::size_t j = i + rng.next_u64() % (n - i);
        std::swap(servers[i], servers[j]);
      }
      r.stragglers.assign(servers.begin(), servers.begin() + p);
      r.byzantine.assign(servers.begin() + p, servers.begin() + p + a);
      plan.rounds.push_back(std::move(r));
    }
    return plan;
  }

  void validate(std::size_t n, std::size_t p, std::size_t a) const {
    for (const Round& r : rounds) {
      if (r.stragglers.size() > p)
        throw std::invalid_argument("FaultPlan: straggler budget exceeded");
      if (r.byzantine.size() > a)
        throw std::invalid_argument("FaultPlan: byzantine budget exceeded");
      for (std::size_t idx : r.stragglers)
        if (idx < 1 || idx > n)
          throw std::invalid_argument("FaultPlan: server index out of range");
      for (std::size_t idx : r.byzantine) {
        if (idx < 1 || idx > n)
          throw std::invalid_argument("FaultPlan: server index out of range");
        if (std::find(r.stragglers.begin(), r.stragglers.end(), idx) !=
            r.stragglers.end())
          throw std::invalid_argument(
              "FaultPlan: server is both straggler and byzantine");
      }
      if (r.strategy == ByzantineStrategy::kAdditiveOffset && r.param == 0)
        throw std::invalid_argument("FaultPlan: offset must be nonzero");
    }
  }
};

// Queries seen by a colluding subset, in deterministic order (round, then
// server index). The canonical text below is the object the privacy audit
// measures, so serialization leaks would be caught by the audit itself.
struct CollusionTap {
  std::vector<std::size_t> servers;  // 1-based, kept sorted
  // transcript[s-1][i] = canonical query text of servers[i] in round s
  std::vector<std::vector<std::string>> transcript;
};

inline std::string canonical_transcript(
    const std::vector<std::vector<MultiPoly>>& queries_by_round,
    const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> servers(subset);
  std::sort(servers.begin(), servers.end());
  std::string out;
  for (std::size_t s = 1; s <= queries_by_round.size(); ++s) {
    for (std::size_t n : servers) {
      out += "round=" + std::to_string(s) + " server=" + std::to_string(n) +
             " query=" + queries_by_round[s - 1].at(n - 1).str() + "\n";
    }
  }
  return out;
}

// In-process simulation of the N servers: honest evaluation of each query
// on the stored share, erasures for stragglers, pluggable byzantine
// corruption. No sockets; exactness and enumeration need hermetic runs.
class SimNetwork {
 public:
  SimNetwork(const FieldCtx& ctx, std::vector<std::vector<u64>> stored)
      : ctx_(&ctx), stored_(std::move(stored)) {}

  std::size_t num_servers() const { return stored_.size(); }

  std::size_t register_tap(std::vector<std::size_t> servers) {
    CollusionTap tap;
    tap.servers = std::move(servers);
    std::sort(tap.servers.begin(), tap.servers.end());
    taps_.push_back(std::move(tap));
    return taps_.size() - 1;
  }

  // Executes one round: every server evaluates its query on its share,
  // then the round's faults are applied. byz_rng feeds the random-value
  // strategy only.
  ReceivedWord round_trip(const std::vector<MultiPoly>& queries,
                          const FaultPlan& faults, std::size_t s,
                          RandomSource& byz_rng) {
    if (queries.size() != stored_.size())
      throw std::invalid_argument("round_trip: need one query per server");
    if (s < 1 || s > faults.rounds.size())
      throw std::invalid_argument("round_trip: round out of range");
    const FaultPlan::Round& round = faults.rounds[s - 1];

    for (CollusionTap& tap : taps_) {
      std::vector<std::string> seen;
      for (std::size_t n : tap.servers)
        seen.push_back(queries.at(n - 1).str());
      tap.transcript.push_back(std::move(seen));
    }

    ReceivedWord word(stored_.size());
    for (std::size_t n = 0; n < stored_.size(); ++n)
      word[n] = queries[n].eval(stored_[n]);
    for (std::size_t idx : round.stragglers) word[idx - 1].reset();
    for (std::size_t idx : round.byzantine) {
      const u64 honest = *word[idx - 1];
      word[idx - 1] = corrupt(honest, round, byz_rng);
    }
    return word;
  }

  const CollusionTap& tap(std::size_t id) const { return taps_.at(id); }

  std::string tap_transcript(std::size_t id) const {
    const CollusionTap& t = taps_.at(id);
    std::string out;
    for (std::size_t s = 1; s <= t.transcript.size(); ++s)
      for (std::size_t i = 0; i < t.servers.size(); ++i)
        out += "round=" + std::to_string(s) +
               " server=" + std::to_string(t.servers[i]) +
               " query=" + t.transcript[s - 1][i] + "\n";
    return out;
  }

 private:
  u64 corrupt(u64 honest, const FaultPlan::Round& round,
              RandomSource& rng) const {
    switch (round.strategy) {
      case ByzantineStrategy::kRandomValue: {
        for (;;) {
          const u64 v = ctx_->sample(rng);
          if (v != honest) return v;
        }
      }
      case ByzantineStrategy::kFixedValue: {
        const u64 v = ctx_->reduce(round.param);
        return v == honest ? ctx_->add(v, 1) : v;
      }
      case ByzantineStrategy::kAdditiveOffset:
        return ctx_->add(honest, ctx_->reduce(round.param));
    }
    throw std::logic_error("corrupt: unknown strategy");
  }

  const FieldCtx* ctx_;
  std::vector<std::vector<u64>> stored_;
  std::vector<CollusionTap> taps_;
};

}  // namespace pcomp

#endif
