// Copyright 2026 The quantgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "qg/fixtures.hpp"
#include "qg/reductions.hpp"
#include "qg/strategies.hpp"
#include "support.hpp"

namespace qg {
namespace {

TEST(Boundify, IntroCounterStrategy) {
  Arena a = fixtures::intro();
  FiniteStateStrategy sigma = testing::intro_counter_strategy(a);
  ASSERT_TRUE(verify_strategy(a, sigma, obj::EnergyLU{5}).accepted);
  ASSERT_TRUE(verify_strategy(a, sigma, obj::AvgEnergyL{Rational(4)}).accepted);
  for (int64_t t : {4, 5, 7}) {
    BoundifyResult r = boundify_strategy(a, sigma, t);
    EXPECT_LE(r.certified_cap, 5) << "t=" << t;
    EXPECT_TRUE(verify_strategy(a, r.strategy, obj::EnergyLU{r.certified_cap}).accepted);
    EXPECT_TRUE(verify_strategy(a, r.strategy, obj::EnergyL{}).accepted);
    EXPECT_TRUE(r.measured_average.at_most(Rational(t)));
  }
}

TEST(Boundify, AlreadyBoundedStrategies) {
  size_t checked = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Arena a = testing::random_weighted(seed, 5, 3);
    ExistsCapResult r = exists_cap_energy_lu(a, 30);
    if (!r.yes) continue;
    BoundifyResult b = boundify_strategy(a, *r.strategy, r.cap);
    EXPECT_LE(b.certified_cap, r.cap) << "seed " << seed;
    EXPECT_TRUE(verify_strategy(a, b.strategy, obj::EnergyLU{b.certified_cap}).accepted) << "seed " << seed;
    ++checked;
  }
  EXPECT_GT(checked, 20u);
}

TEST(Boundify, DegradedStrategies) {
  size_t checked = 0;
  for (uint64_t seed = 0; seed < 400 && checked < 50; ++seed) {
    auto inst = testing::degraded_instance(seed);
    if (!inst) continue;
    ASSERT_TRUE(verify_strategy(inst->arena, inst->strategy, obj::AvgEnergyL{Rational(inst->t)}).accepted);
    BoundifyResult b = boundify_strategy(inst->arena, inst->strategy, inst->t);
    EXPECT_TRUE(verify_strategy(inst->arena, b.strategy, obj::EnergyLU{b.certified_cap}).accepted) << "seed " << seed;
    EXPECT_TRUE(verify_strategy(inst->arena, b.strategy, obj::EnergyL{}).accepted) << "seed " << seed;
    ++checked;
  }
  EXPECT_EQ(checked, 50u);
}

TEST(Boundify, RejectsLosingStrategies) {
  Arena a = fixtures::intro();
  FiniteStateStrategy sigma = testing::intro_counter_strategy(a);
  try {
    boundify_strategy(a, sigma, 3);
    FAIL() << "expected NotWinningError";
  } catch (const NotWinningError& e) {
    ASSERT_TRUE(e.witness());
    EXPECT_FALSE(lasso_satisfies(a, *e.witness(), obj::AvgEnergyL{Rational(3)}));
  }
  std::vector<VertexId> down{1, 2, kNoVertex};
  FiniteStateStrategy lose = FiniteStateStrategy::positional(a, Player::P0, down);
  EXPECT_THROW(boundify_strategy(a, lose, 100), NotWinningError);
  EXPECT_THROW(boundify_strategy(fixtures::memlb(), FiniteStateStrategy::positional(fixtures::memlb(), Player::P0,
                                                                                   std::vector<VertexId>{kNoVertex, 0}),
                                 3),
               ArenaError);
}

}  // namespace
}  // namespace qg
