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

#include <random>

#include "qg/energy_memory.hpp"
#include "qg/fixtures.hpp"
#include "qg/oracle.hpp"
#include "qg/reductions.hpp"
#include "qg/solvers.hpp"
#include "qg/strategies.hpp"
#include "support.hpp"

namespace qg {
namespace {

using testing::arena;

Arena loop(int64_t w) { return arena("arena\nvertex a p0\ninit a\nedge a a " + std::to_string(w) + "\n"); }

Player reduced_winner(const ReductionOutput& r) {
  return solve_mean_payoff_threshold(r.product.arena, std::get<obj::MeanPayoff>(r.target).t).winner;
}

Arena countdown_loop(int64_t w) {
  return arena("arena\nvertex s p0\nvertex t p1\nvertex sink p1\ninit s\nedge s t " + std::to_string(w) +
               "\nedge t s 0\nedge s sink 0\nedge sink sink 0\n");
}

TEST(AvgRecharge, FixtureExamples) {
  EXPECT_EQ(reduced_winner(reduce_avg_recharge(fixtures::memlb(), 4, Rational(2))), Player::P0);
  EXPECT_EQ(reduced_winner(reduce_avg_recharge(fixtures::memlb(), 4, Rational(15, 8))), Player::P1);
  EXPECT_EQ(reduced_winner(reduce_avg_recharge(fixtures::tradeoff(), 1, Rational(3, 4))), Player::P0);
  EXPECT_EQ(reduced_winner(reduce_avg_recharge(fixtures::tradeoff(), 1, Rational(2, 3))), Player::P1);
  Arena doomed = arena("arena\nvertex a p0\ninit a\nedge a a -1\n");
  for (Rational t : {Rational(0), Rational(5), Rational(100)}) {
    EXPECT_EQ(reduced_winner(reduce_avg_recharge(doomed, 3, t)), Player::P1);
  }
  EXPECT_THROW(reduce_avg_recharge(fixtures::intro(), 3, Rational(1)), ArenaError);
}

TEST(AvgRecharge, ProductShape) {
  ReductionOutput r = reduce_avg_recharge(fixtures::memlb(), 4, Rational(3, 2));
  ASSERT_TRUE(r.memory);
  EXPECT_EQ(r.memory->num_states(), 6u);
  const Arena& p = r.product.arena;
  for (const Edge& e : p.edges()) {
    MemState s = r.product.origin[e.src].second;
    EXPECT_EQ(e.weight.value(), s == 5 ? 4 : static_cast<int64_t>(s) * 2);
  }
  EXPECT_EQ(std::get<obj::MeanPayoff>(r.target).t, Rational(3));
  EXPECT_NE(r.objective_note.find("AvgRecharge"), std::string::npos);
}

TEST(AvgEnergyLU, IntroExamples) {
  EXPECT_EQ(reduced_winner(reduce_avg_energy_lu(fixtures::intro(), 5, Rational(4))), Player::P0);
  EXPECT_EQ(reduced_winner(reduce_avg_energy_lu(fixtures::intro(), 5, Rational(0))), Player::P1);
  EXPECT_EQ(reduced_winner(reduce_avg_energy_lu(loop(0), 0, Rational(0))), Player::P0);
  EXPECT_THROW(reduce_avg_energy_lu(fixtures::memlb(), 3, Rational(1)), ArenaError);
}

TEST(AvgRecharge, TrackedStateBottomAndObjective) {
  std::mt19937_64 rng(2024);
  size_t violated = 0, satisfied = 0;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Arena a = testing::random_recharge(seed);
    const int64_t cap = static_cast<int64_t>(seed % 5);
    const Rational t(static_cast<int64_t>(rng() % 9), 1 + static_cast<int64_t>(rng() % 3));
    ReductionOutput red = reduce_avg_recharge(a, cap, t);
    const MemState bot = static_cast<MemState>(cap + 1);
    for (int k = 0; k < 5; ++k) {
      Lasso l = testing::random_lasso(a, rng);
      // Tracked level before the first drop below zero, bottom afterwards.
      std::vector<VertexId> play;
      bool broken = false;
      MemState s = red.memory->initial();
      for (size_t i = 0; i < l.prefix.size() + 3 * l.cycle.size() + 3; ++i) {
        play.push_back(l.at(i));
        if (i > 0) s = red.memory->update(s, *a.find_edge(play[i - 1], play[i]));
        int64_t level = recharge_energy_level(a, cap, play);
        if (!broken && level < 0) broken = true;
        if (broken) {
          ASSERT_EQ(s, bot) << "seed " << seed;
        } else {
          ASSERT_EQ(static_cast<int64_t>(s), level) << "seed " << seed;
        }
      }
      // Membership is preserved by the product.
      Lasso ext = testing::extended_lasso(a, red.product, *red.memory, l);
      bool in_source = lasso_satisfies(a, l, obj::AvgRecharge{cap, t});
      bool in_target = lasso_satisfies(red.product.arena, ext, red.target);
      ASSERT_EQ(in_source, in_target) << "seed " << seed << " " << format_lasso(a, l);
      (in_source ? satisfied : violated)++;
    }
  }
  EXPECT_GT(satisfied, 100u);
  EXPECT_GT(violated, 100u);
}

TEST(AvgRecharge, PulledBackStrategiesVerifyWithinCapPlusTwo) {
  for (uint64_t seed = 0; seed < 80; ++seed) {
    Arena a = testing::random_recharge(seed);
    const int64_t cap = static_cast<int64_t>(1 + seed % 4);
    const Rational t(static_cast<int64_t>(seed % 7), 2);
    SolveResult r = solve_objective(a, obj::AvgRecharge{cap, t});
    ASSERT_TRUE(r.strategy);
    EXPECT_EQ(r.strategy->player(), r.winner);
    EXPECT_LE(reachable_memory_states(a, *r.strategy), static_cast<size_t>(cap + 2));
    EXPECT_TRUE(verify_strategy(a, *r.strategy, obj::AvgRecharge{cap, t}).accepted) << "seed " << seed;
  }
}

TEST(AvgEnergyLU, PulledBackStrategiesVerify) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    Arena a = testing::random_weighted(seed, 5, 3);
    const int64_t cap = static_cast<int64_t>(2 + seed % 4);
    const Rational t(static_cast<int64_t>(seed % 5), 1 + static_cast<int64_t>(seed % 2));
    SolveResult r = solve_objective(a, obj::AvgEnergyLU{cap, t});
    ASSERT_TRUE(r.strategy);
    EXPECT_TRUE(verify_strategy(a, *r.strategy, obj::AvgEnergyLU{cap, t}).accepted) << "seed " << seed;
  }
}

TEST(Tripling, ShapeAndColors) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    Arena a = testing::random_recharge(seed);
    ParityReduction r = reduce_exists_cap_to_parity(a);
    const Arena& p = r.product.arena;
    EXPECT_LE(p.num_vertices(), 3 * a.num_vertices());
    EXPECT_EQ(r.product.origin[p.initial()], (std::pair<VertexId, MemState>{a.initial(), 0}));
    for (VertexId v = 0; v < p.num_vertices(); ++v) {
      MemState kind = r.product.origin[v].second;
      EXPECT_EQ(r.coloring[v], kind == 1 ? 2 : kind == 2 ? 1 : 0);
      for (EdgeId e : p.in_edges(v)) {
        const WeightLabel& w = p.edge(e).weight;
        MemState k = w.is_recharge() ? 1 : w.value() == 0 ? 0 : 2;
        EXPECT_EQ(k, kind) << "seed " << seed;
      }
      if (v != p.initial()) {
        EXPECT_FALSE(p.in_edges(v).empty());
      }
    }
  }
  EXPECT_THROW(reduce_exists_cap_to_parity(fixtures::intro()), ArenaError);
}

TEST(Tripling, FixtureWinners) {
  auto parity_winner = [](const Arena& a) {
    ParityReduction r = reduce_exists_cap_to_parity(a);
    return solve_parity3(r.product.arena, r.coloring).winner;
  };
  EXPECT_EQ(parity_winner(fixtures::cycle(3, 1)), Player::P0);
  EXPECT_EQ(parity_winner(fixtures::memlb()), Player::P0);
  EXPECT_EQ(parity_winner(arena("arena\nvertex a p0\nvertex b p0\ninit a\nedge a a -1\nedge b a R\n")), Player::P1);
}

TEST(ExistsCap, FixturesAndCycles) {
  ExistsCapResult t = exists_cap_recharge(fixtures::tradeoff());
  EXPECT_TRUE(t.yes);
  ASSERT_TRUE(t.strategy);
  EXPECT_TRUE(verify_strategy(fixtures::tradeoff(), *t.strategy, obj::Recharge{t.cap}).accepted);
  EXPECT_TRUE(oracle::recharge_wins_by_safety(fixtures::tradeoff(), 1));
  EXPECT_FALSE(exists_cap_recharge(loop(-1)).yes);
  for (int n = 2; n <= 5; ++n) {
    for (int64_t w = 1; w <= 4; ++w) {
      Arena c = fixtures::cycle(n, w);
      ExistsCapResult r = exists_cap_recharge(c);
      ASSERT_TRUE(r.yes);
      EXPECT_EQ(r.cap, (n - 1) * w);
      EXPECT_FALSE(r.fallback_used);
      EXPECT_LE(reachable_memory_states(c, *r.strategy), 3u);
      EXPECT_EQ(oracle::exists_cap_by_search(c, 3 * (n - 1) * w).cap, (n - 1) * w);
    }
  }
}

TEST(ExistsCap, AgreesWithSearch) {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    Arena a = testing::random_recharge(seed);
    const int64_t n = static_cast<int64_t>(a.num_vertices());
    const int64_t bound = std::max<int64_t>(3 * (n - 1) * max_abs_weight(a), 0);
    ExistsCapResult r = exists_cap_recharge(a);
    oracle::CapSearch s = oracle::exists_cap_by_search(a, bound);
    ASSERT_EQ(r.yes, s.yes) << "seed " << seed;
    if (!r.yes) continue;
    EXPECT_GE(r.cap, s.cap);
    EXPECT_LE(r.cap, bound);
    EXPECT_LE(reachable_memory_states(a, *r.strategy), 3u);
    EXPECT_TRUE(verify_strategy(a, *r.strategy, obj::Recharge{r.cap}).accepted) << "seed " << seed;
  }
}

TEST(ExistsCapLU, Examples) {
  ExistsCapResult intro = exists_cap_energy_lu(fixtures::intro(), 16);
  ASSERT_TRUE(intro.yes);
  EXPECT_EQ(intro.cap, 5);
  ASSERT_TRUE(intro.strategy);
  EXPECT_TRUE(verify_strategy(fixtures::intro(), *intro.strategy, obj::EnergyLU{5}).accepted);
  ExistsCapResult up = exists_cap_energy_lu(loop(1), 100);
  EXPECT_FALSE(up.yes);
  EXPECT_EQ(up.searched_up_to, 100);
  ExistsCapResult zero = exists_cap_energy_lu(loop(0));
  ASSERT_TRUE(zero.yes);
  EXPECT_EQ(zero.cap, 0);
  ExistsCapResult th = exists_threshold_avg_energy_l(fixtures::intro());
  ASSERT_TRUE(th.yes);
  EXPECT_EQ(th.cap, 5);
  EXPECT_TRUE(verify_strategy(fixtures::intro(), *th.strategy, obj::AvgEnergyL{Rational(5)}).accepted);
  EXPECT_FALSE(exists_threshold_avg_energy_l(loop(1), 50).yes);
  EXPECT_EQ(default_cap_max(fixtures::intro()), 3 * 3 * 256);
  EXPECT_THROW(exists_cap_energy_lu(fixtures::memlb()), ArenaError);
}

TEST(ExistsCapLU, MinimalAgainstLinearScan) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    Arena a = testing::random_weighted(seed, 5, 3);
    ExistsCapResult r = exists_cap_energy_lu(a, 20);
    std::optional<int64_t> first;
    for (int64_t cap = 0; cap <= 20 && !first; ++cap) {
      if (oracle::energy_lu_wins_by_safety(a, cap)) first = cap;
    }
    ASSERT_EQ(r.yes, first.has_value()) << "seed " << seed;
    if (r.yes) {
      EXPECT_EQ(r.cap, *first) << "seed " << seed;
    }
  }
}

TEST(Countdown, ReductionExamples) {
  auto winner = [](const Arena& a, int64_t c) {
    ReductionOutput r = reduce_countdown_to_avg_recharge(a, CountdownBudget{c});
    return solve_objective(r.product.arena, r.target).winner;
  };
  EXPECT_EQ(winner(countdown_loop(-1), 0), Player::P0);
  EXPECT_EQ(winner(countdown_loop(-1), 3), Player::P0);
  EXPECT_EQ(winner(countdown_loop(-2), 3), Player::P1);
  ReductionOutput r = reduce_countdown_to_avg_recharge(countdown_loop(-1), CountdownBudget{3});
  const Arena& p = r.product.arena;
  EXPECT_EQ(p.owner(p.initial()), Player::P1);
  ASSERT_EQ(p.out_edges(p.initial()).size(), 1u);
  EXPECT_TRUE(p.edge(p.out_edges(p.initial())[0]).weight.is_recharge());
  EXPECT_EQ(p.name(p.initial()), "s'");
  EXPECT_THROW(reduce_countdown_to_avg_recharge(fixtures::intro(), CountdownBudget{1}), ArenaError);
}

TEST(Countdown, GadgetExamples) {
  EXPECT_TRUE(gadget_capacity_sweep(build_fig4_gadget(countdown_loop(-1), CountdownBudget{3}), 20));
  EXPECT_FALSE(gadget_capacity_sweep(build_fig4_gadget(countdown_loop(-2), CountdownBudget{3}), 20));
  Arena g = build_fig4_gadget(countdown_loop(-1), CountdownBudget{0});
  EXPECT_EQ(gadget_capacity_sweep(g, 20), 0);
  EXPECT_EQ(g.num_vertices(), 6u);
  EXPECT_EQ(g.name(g.initial()), "g0");
}

TEST(Countdown, ThreeWayAgreement) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = oracle::random_countdown(seed);
    Player direct = solve_countdown(inst.arena, inst.budget).winner;
    ReductionOutput r = reduce_countdown_to_avg_recharge(inst.arena, inst.budget);
    EXPECT_EQ(solve_objective(r.product.arena, r.target).winner, direct) << "seed " << seed;
    auto cap = gadget_capacity_sweep(build_fig4_gadget(inst.arena, inst.budget), inst.budget.c + 4);
    EXPECT_EQ(cap.has_value(), direct == Player::P0) << "seed " << seed;
  }
}

TEST(SolveObjective, Dispatch) {
  Arena intro = fixtures::intro();
  EXPECT_EQ(solve_objective(intro, obj::EnergyLU{5}).winner, Player::P0);
  EXPECT_EQ(solve_objective(intro, obj::EnergyL{}).winner, Player::P0);
  EXPECT_EQ(solve_objective(intro, obj::MeanPayoff{Rational(0)}).winner, Player::P0);
  EXPECT_EQ(solve_objective(intro, obj::AvgEnergyLU{5, Rational(4)}).winner, Player::P0);
  EXPECT_THROW(solve_objective(intro, obj::AvgEnergyL{Rational(4)}), std::invalid_argument);
  EXPECT_THROW(solve_objective(intro, obj::AvgEnergy{Rational(4)}), std::invalid_argument);
  EXPECT_THROW(solve_objective(intro, obj::Recharge{3}), ArenaError);
  Arena m = fixtures::memlb();
  EXPECT_EQ(solve_objective(m, obj::Recharge{1}).winner, Player::P0);
  EXPECT_EQ(solve_objective(m, obj::AvgRecharge{4, Rational(2)}).winner, Player::P0);
  EXPECT_EQ(solve_objective(m, obj::AvgRecharge{4, Rational(15, 8)}).winner, Player::P1);
  EXPECT_THROW(solve_objective(m, obj::MeanPayoff{Rational(0)}), ArenaError);
}

}  // namespace
}  // namespace qg
