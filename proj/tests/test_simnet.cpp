#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include <pcomp/field.hpp>
#include <pcomp/mvpoly.hpp>
#include <pcomp/rng.hpp>
#include <pcomp/simnet.hpp>

#include "test_util.hpp"

using pcomp::ByzantineStrategy;
using pcomp::FaultPlan;
using pcomp::FieldCtx;
using pcomp::MultiPoly;
using pcomp::ReceivedWord;
using pcomp::SimNetwork;
using pcomp::u64;

namespace {

std::vector<MultiPoly> sum_queries(const FieldCtx& f, std::size_t n) {
  // query X1 + X2 for every server
  std::vector<MultiPoly> qs;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly q(f, 2, 1);
    q.add_term({1, 0}, 1);
    q.add_term({0, 1}, 1);
    qs.push_back(std::move(q));
  }
  return qs;
}

}  // namespace

TEST_CASE("honest round trip") {
  FieldCtx f(11);
  SimNetwork net(f, {{1, 2}, {3, 4}, {5, 6}, {7, 8}});
  pcomp::SeededSource rng(1, "byz");
  const auto qs = sum_queries(f, 4);
  const ReceivedWord word = net.round_trip(qs, FaultPlan::none(1), 1, rng);
  REQUIRE(word.size() == 4);
  CHECK(*word[0] == 3);
  CHECK(*word[1] == 7);
  CHECK(*word[2] == 0);
  CHECK(*word[3] == 4);
}

TEST_CASE("stragglers erase their positions") {
  FieldCtx f(11);
  SimNetwork net(f, {{1, 2}, {3, 4}, {5, 6}, {7, 8}});
  pcomp::SeededSource rng(2, "byz");
  FaultPlan plan = FaultPlan::none(1);
  plan.rounds[0].stragglers = {3};
  const ReceivedWord word = net.round_trip(sum_queries(f, 4), plan, 1, rng);
  CHECK_FALSE(word[2].has_value());
  CHECK(word[0].has_value());
  CHECK(word[1].has_value());
  CHECK(word[3].has_value());
}

TEST_CASE("byzantine strategies") {
  FieldCtx f(11);
  const std::vector<std::vector<u64>> stored{{1, 2}, {3, 4}, {5, 6}, {7, 8}};
  pcomp::SeededSource rng(3, "byz");
  const auto qs = sum_queries(f, 4);

  SECTION("additive offset") {
    SimNetwork net(f, stored);
    FaultPlan plan = FaultPlan::none(1);
    plan.rounds[0].byzantine = {2};
    plan.rounds[0].strategy = ByzantineStrategy::kAdditiveOffset;
    plan.rounds[0].param = 5;
    const ReceivedWord word = net.round_trip(qs, plan, 1, rng);
    CHECK(*word[1] == f.add(7, 5));
  }

  SECTION("corruption never equals the honest value") {
    for (auto strategy : {ByzantineStrategy::kRandomValue,
                          ByzantineStrategy::kFixedValue,
                          ByzantineStrategy::kAdditiveOffset}) {
      SimNetwork net(f, stored);
      FaultPlan plan = FaultPlan::none(50);
      for (auto& round : plan.rounds) {
        round.byzantine = {1, 4};
        round.strategy = strategy;
        round.param = strategy == ByzantineStrategy::kFixedValue ? 3 : 2;
      }
      for (std::size_t s = 1; s <= 50; ++s) {
        const ReceivedWord word = net.round_trip(qs, plan, s, rng);
        CHECK(*word[0] != 3);
        CHECK(*word[3] != 4);
      }
    }
  }

  SECTION("fixed value that matches the honest answer gets bumped") {
    SimNetwork net(f, stored);
    FaultPlan plan = FaultPlan::none(1);
    plan.rounds[0].byzantine = {1};
    plan.rounds[0].strategy = ByzantineStrategy::kFixedValue;
    plan.rounds[0].param = 3;  // honest answer of server 1
    const ReceivedWord word = net.round_trip(qs, plan, 1, rng);
    CHECK(*word[0] == 4);
  }
}

TEST_CASE("fault plan validation") {
  FaultPlan plan = FaultPlan::none(1);
  plan.rounds[0].stragglers = {1, 2};
  plan.rounds[0].byzantine = {3};
  CHECK_NOTHROW(plan.validate(4, 2, 1));
  CHECK_THROWS_AS(plan.validate(4, 1, 1), std::invalid_argument);  // P budget
  CHECK_THROWS_AS(plan.validate(4, 2, 0), std::invalid_argument);  // A budget
  plan.rounds[0].byzantine = {2};
  CHECK_THROWS_AS(plan.validate(4, 2, 1),
                  std::invalid_argument);  // overlap with stragglers
  plan.rounds[0].byzantine = {9};
  CHECK_THROWS_AS(plan.validate(4, 2, 1),
                  std::invalid_argument);  // out of range
}

TEST_CASE("randomized fault plans stay within budget") {
  pcomp::SeededSource rng(4, "fault-random");
  for (int trial = 0; trial < 20; ++trial) {
    const FaultPlan plan = FaultPlan::random(5, 8, 2, 1, rng);
    CHECK_NOTHROW(plan.validate(8, 2, 1));
    for (const auto& round : plan.rounds) {
      CHECK(round.stragglers.size() == 2);
      CHECK(round.byzantine.size() == 1);
    }
  }
}

TEST_CASE("collusion taps") {
  FieldCtx f(11);
  const auto qs = sum_queries(f, 4);
  pcomp::SeededSource rng(5, "byz");

  SECTION("empty subset gives an empty transcript") {
    SimNetwork net(f, {{1, 2}, {3, 4}, {5, 6}, {7, 8}});
    const std::size_t id = net.register_tap({});
    net.round_trip(qs, FaultPlan::none(1), 1, rng);
    CHECK(net.tap_transcript(id).empty());
  }

  SECTION("one-server tap over several rounds") {
    SimNetwork net(f, {{1, 2}, {3, 4}, {5, 6}, {7, 8}});
    const std::size_t id = net.register_tap({2});
    net.round_trip(qs, FaultPlan::none(3), 1, rng);
    net.round_trip(qs, FaultPlan::none(3), 2, rng);
    net.round_trip(qs, FaultPlan::none(3), 3, rng);
    CHECK(net.tap_transcript(id) ==
          "round=1 server=2 query=X1 + X2\n"
          "round=2 server=2 query=X1 + X2\n"
          "round=3 server=2 query=X1 + X2\n");
  }

  SECTION("tap transcript matches the canonical serialization") {
    SimNetwork net(f, {{1, 2}, {3, 4}, {5, 6}, {7, 8}});
    const std::size_t id = net.register_tap({3, 1});
    net.round_trip(qs, FaultPlan::none(1), 1, rng);
    CHECK(net.tap_transcript(id) ==
          pcomp::canonical_transcript({qs}, {1, 3}));
  }
}

TEST_CASE("determinism across identical seeds") {
  FieldCtx f(11);
  const std::vector<std::vector<u64>> stored{{1, 2}, {3, 4}, {5, 6}};
  auto run = [&](u64 seed) {
    SimNetwork net(f, stored);
    const std::size_t id = net.register_tap({1, 2});
    pcomp::SeededSource mask_rng(seed, "masks");
    pcomp::SeededSource byz_rng(seed, "byzantine");
    FaultPlan plan = FaultPlan::none(3);
    for (auto& round : plan.rounds) round.byzantine = {3};
    std::string log;
    for (std::size_t s = 1; s <= 3; ++s) {
      std::vector<MultiPoly> qs;
      for (int i = 0; i < 3; ++i)
        qs.push_back(MultiPoly::sample_uniform(f, 2, 1, mask_rng));
      const ReceivedWord word = net.round_trip(qs, plan, s, byz_rng);
      for (const auto& v : word)
        log += v ? std::to_string(*v) : std::string("?");
    }
    return log + "|" + net.tap_transcript(id);
  };
  CHECK(run(77) == run(77));
  CHECK(run(77) != run(78));
}
