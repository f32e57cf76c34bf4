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
#include "qg/io.hpp"
#include "qg/memory.hpp"
#include "qg/rational.hpp"
#include "support.hpp"

namespace qg {
namespace {

using testing::arena;

TEST(Rational, NormalizesSignAndGcd) {
  Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, 5), Rational(0));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ArithmeticAndOrder) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(9, 7) * Rational(7, 3), Rational(3));
  EXPECT_EQ(Rational(3, 4) / Rational(3, 2), Rational(1, 2));
  EXPECT_LT(Rational(3, 5), Rational(3, 4));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(Rational::parse("15/8"), Rational(15, 8));
  EXPECT_EQ(Rational::parse("-4"), Rational(-4));
  EXPECT_EQ(Rational::parse("+2/4"), Rational(1, 2));
  EXPECT_EQ(Rational(4).str(), "4/1");
  EXPECT_EQ(Rational(-3, 4).str(), "-3/4");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, OverflowIsReported) {
  Rational big(int64_t{1} << 62);
  EXPECT_THROW(big * Rational(4), OverflowError);
  EXPECT_THROW(checked::add(INT64_MAX, 1), OverflowError);
}

TEST(Arena, IntroFixtureShape) {
  Arena a = fixtures::intro();
  EXPECT_EQ(a.num_vertices(), 3u);
  EXPECT_EQ(a.num_edges(), 6u);
  EXPECT_EQ(a.name(a.initial()), "v0");
  EXPECT_EQ(a.owner(a.vertex("v2")), Player::P1);
  EXPECT_EQ(max_abs_weight(a), 3);
}

TEST(Arena, MaxAbsWeight) {
  EXPECT_EQ(max_abs_weight(fixtures::cycle(4, 7)), 7);
  EXPECT_EQ(max_abs_weight(arena("arena\nvertex a p0\ninit a\nedge a a R\n")), 0);
}

TEST(Arena, SmallestLegalArena) {
  Arena a = arena("arena\nvertex a p0\ninit a\nedge a a 0\n");
  EXPECT_EQ(a.num_vertices(), 1u);
  EXPECT_EQ(a.edge(0).weight, WeightLabel::integer(0));
}

TEST(Arena, ParseErrorsCarryLines) {
  try {
    arena("arena\nvertex a p0\ninit a\nedge a b 1\n");
    FAIL();
  } catch (const ArenaError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(arena("arena\nvertex a p0\nvertex b p1\ninit a\nedge a b 0\n"), ArenaError);
  EXPECT_THROW(arena("arena\nvertex a p0\nvertex a p1\ninit a\nedge a a 0\n"), ArenaError);
  EXPECT_THROW(arena("arena\nvertex a p0\nedge a a 0\n"), ArenaError);
  EXPECT_THROW(arena("arena\nvertex a p2\ninit a\nedge a a 0\n"), ArenaError);
  EXPECT_THROW(arena("arena\nvertex a p0\ninit a\nedge a a 1.5\n"), ArenaError);
  EXPECT_THROW(arena("arena\nvertex a p0\ninit a\nedge a a 0\nedge a a 1\n"), ArenaError);
  EXPECT_THROW(arena("arena\nvertex a p0\ninit a\nedge a a 9223372036854775807\n"), ArenaError);
}

TEST(Arena, TerminalVertexMessage) {
  try {
    arena("arena\nvertex a p0\nvertex b p0\ninit a\nedge a b 0\n");
    FAIL();
  } catch (const ArenaError& e) {
    EXPECT_NE(std::string(e.what()).find("terminal"), std::string::npos);
  }
}

TEST(Arena, CommentsAndBlankLines) {
  Arena a = arena("# header\narena\n\nvertex a p0 # owner\ninit a\nedge a a -2\n");
  EXPECT_EQ(a.edge(0).weight.value(), -2);
}

TEST(Arena, ModeChecks) {
  Arena memlb = fixtures::memlb();
  EXPECT_TRUE(memlb.is_recharge_mode());
  EXPECT_TRUE(memlb.has_recharge());
  EXPECT_THROW(memlb.require_integer_weights("test"), ArenaError);
  Arena intro = fixtures::intro();
  EXPECT_FALSE(intro.is_recharge_mode());
  EXPECT_THROW(intro.require_recharge_mode("test"), ArenaError);
  EXPECT_THROW(WeightLabel::recharge().value(), std::logic_error);
}

TEST(Arena, SerializeRoundTrips) {
  for (const Arena& a : {fixtures::intro(), fixtures::memlb(), fixtures::tradeoff(), fixtures::cycle(5, 2)}) {
    std::string text = serialize_arena(a);
    EXPECT_EQ(parse_arena(text), a);
    EXPECT_EQ(serialize_arena(parse_arena(text)), text);
  }
  EXPECT_NE(serialize_arena(fixtures::memlb()).find("edge v1 v0 R"), std::string::npos);
}

TEST(Arena, RandomArenasRoundTrip) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Arena a = testing::random_weighted(seed);
    EXPECT_EQ(parse_arena(serialize_arena(a)), a) << "seed " << seed;
  }
}

TEST(Arena, FixtureLookup) {
  EXPECT_TRUE(fixtures::by_name("@INTRO"));
  EXPECT_TRUE(fixtures::by_name("TRADEOFF"));
  auto c = fixtures::by_name("CYCLE(3,2)");
  ASSERT_TRUE(c);
  EXPECT_EQ(c->num_vertices(), 3u);
  EXPECT_FALSE(fixtures::by_name("CYCLE(3)"));
  EXPECT_FALSE(fixtures::by_name("NOPE"));
}

TEST(Memory, TrivialProductIsIsomorphic) {
  Arena a = fixtures::intro();
  ProductArena p = product(a, MemoryStructure::trivial(a), keep_weights(a));
  EXPECT_EQ(p.arena.num_vertices(), a.num_vertices());
  EXPECT_EQ(p.arena.num_edges(), a.num_edges());
  for (VertexId v = 0; v < p.arena.num_vertices(); ++v) {
    EXPECT_EQ(p.arena.owner(v), a.owner(p.origin[v].first));
    EXPECT_EQ(p.origin[v].second, 0u);
  }
}

TEST(Memory, MemlbEnergyProduct) {
  Arena a = fixtures::memlb();
  EnergyMemory em(a, 4, EnergyMemory::Mode::Recharge);
  ProductArena p = product(a, em.memory(), keep_weights(a), em.namer());
  EXPECT_LE(p.arena.num_vertices(), 2u * 6u);
  // (v0 v1^4)^omega carries the states 4,3,2,1,0 at v1 positions after the start.
  std::vector<VertexId> play{0, 1, 1, 1, 1, 0};
  std::vector<MemState> seen;
  for (size_t n = 1; n <= play.size(); ++n) seen.push_back(em.memory().run(a, std::span(play).first(n)));
  EXPECT_EQ(seen, (std::vector<MemState>{4, 3, 2, 1, 0, 4}));
  EXPECT_TRUE(p.arena.find_vertex("v1@0"));
  EXPECT_TRUE(p.arena.find_vertex("v1@bot"));
}

TEST(Memory, ProductSizeBoundsAndReachability) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Arena a = testing::random_recharge(seed);
    EnergyMemory em(a, 3, EnergyMemory::Mode::Recharge);
    ProductArena p = product(a, em.memory(), keep_weights(a));
    const size_t k = em.memory().num_states();
    EXPECT_LE(p.arena.num_vertices(), a.num_vertices() * k);
    EXPECT_LE(p.arena.num_edges(), a.num_edges() * k);
    std::vector<bool> seen(p.arena.num_vertices(), false);
    std::vector<VertexId> stack{p.arena.initial()};
    seen[p.arena.initial()] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : p.arena.out_edges(v)) {
        VertexId u = p.arena.edge(e).dst;
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    EXPECT_EQ(std::count(seen.begin(), seen.end(), true), static_cast<long>(seen.size())) << "seed " << seed;
  }
}

TEST(Memory, ExtendedPlayTracksUpdate) {
  std::mt19937_64 rng(7);
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Arena a = testing::random_recharge(seed);
    EnergyMemory em(a, 2, EnergyMemory::Mode::Recharge);
    ProductArena p = product(a, em.memory(), keep_weights(a));
    VertexId pv = p.arena.initial();
    std::vector<VertexId> play{a.initial()};
    for (int step = 0; step < 40; ++step) {
      auto outs = p.arena.out_edges(pv);
      pv = p.arena.edge(outs[rng() % outs.size()]).dst;
      play.push_back(p.origin[pv].first);
      EXPECT_EQ(p.origin[pv].second, em.memory().run(a, play));
    }
  }
}

TEST(Memory, UnreachablePairsArePruned) {
  Arena a = arena("arena\nvertex a p0\nvertex b p0\ninit a\nedge a b 0\nedge b b 0\n");
  auto m = MemoryStructure::from_function(a, 3, 0, [](MemState s, EdgeId) { return s == 0 ? 1u : 1u; });
  ProductArena p = product(a, m, keep_weights(a));
  EXPECT_EQ(p.arena.num_vertices(), 2u);
}

TEST(Memory, RunRejectsNonPaths) {
  Arena a = fixtures::memlb();
  std::vector<VertexId> bad{1, 1, 0, 0};
  EXPECT_THROW(MemoryStructure::trivial(a).run(a, bad), ArenaError);
}

TEST(Memory, StrategyValidation) {
  Arena a = fixtures::intro();
  std::vector<VertexId> choice{1, 0, kNoVertex};
  FiniteStateStrategy s = FiniteStateStrategy::positional(a, Player::P0, choice);
  EXPECT_NO_THROW(s.validate(a));
  FiniteStateStrategy bad(Player::P0, MemoryStructure::trivial(a), {1, 1, kNoVertex});
  EXPECT_THROW(bad.validate(a), ArenaError);
}

TEST(Io, StrategyRoundTrip) {
  Arena a = fixtures::intro();
  EnergyMemory em(a, 5, EnergyMemory::Mode::LowerUpper);
  std::vector<VertexId> next(3 * 7, kNoVertex);
  for (MemState m = 0; m < 7; ++m) {
    next[m] = m != 0 ? 1 : 2;
    next[7 + m] = m == 0 ? 0 : 2;
  }
  FiniteStateStrategy s(Player::P0, em.memory(), next);
  std::string text = serialize_strategy(a, s);
  EXPECT_EQ(parse_strategy(a, text), s);
}

TEST(Io, StrategyDefaultsAndErrors) {
  Arena a = fixtures::intro();
  FiniteStateStrategy s = parse_strategy(a, "strategy\nmemory 1\ninitmem 0\nmove v0 0 v2\nmove v1 0 v0\n");
  EXPECT_EQ(s.player(), Player::P0);
  EXPECT_EQ(s.next_move(0, 0), 2u);
  FiniteStateStrategy p1 = parse_strategy(a, "strategy\nmemory 2\ninitmem 0\nupd 0 v2 v0 1\nmove v2 0 v1\nmove v2 1 v0\n");
  EXPECT_EQ(p1.player(), Player::P1);
  EXPECT_EQ(p1.memory().update(1, *a.find_edge(0, 1)), 1u);
  EXPECT_THROW(parse_strategy(a, "strategy\nmemory 1\ninitmem 0\nmove v0 0 v0\nmove v1 0 v0\n"), ArenaError);
  EXPECT_THROW(parse_strategy(a, "strategy\nmemory 1\ninitmem 0\nmove v0 0 v1\n"), ArenaError);
}

TEST(Io, Coloring) {
  Arena a = fixtures::cycle(2, 1);
  Coloring c = parse_coloring(a, "color v0 2\ncolor v1 1\n");
  EXPECT_EQ(c.color, (std::vector<int>{2, 1}));
  EXPECT_EQ(parse_coloring(a, serialize_coloring(a, c)), c);
  EXPECT_THROW(parse_coloring(a, "color v0 3\ncolor v1 1\n"), ArenaError);
  EXPECT_THROW(parse_coloring(a, "color v0 1\n"), ArenaError);
}

TEST(Io, AtomicWrite) {
  auto path = std::filesystem::temp_directory_path() / "qg_io_atomic.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
  EXPECT_THROW(read_file(path), std::runtime_error);
}

TEST(EnergyMemory, Transitions) {
  Arena a = fixtures::memlb();
  EnergyMemory em(a, 2, EnergyMemory::Mode::Recharge);
  const auto& m = em.memory();
  EXPECT_EQ(m.initial(), 2u);
  EdgeId down = *a.find_edge(1, 1), reset = *a.find_edge(1, 0);
  EXPECT_EQ(m.update(2, down), 1u);
  EXPECT_EQ(m.update(0, down), em.bottom());
  EXPECT_EQ(m.update(0, reset), 2u);
  EXPECT_EQ(m.update(em.bottom(), reset), em.bottom());
  EXPECT_EQ(em.state_name(em.bottom()), "bot");
  EXPECT_THROW(EnergyMemory(a, 2, EnergyMemory::Mode::LowerUpper), ArenaError);
  EXPECT_THROW(EnergyMemory(a, -1, EnergyMemory::Mode::Recharge), ArenaError);
}

TEST(EnergyMemory, UpperBound) {
  Arena a = fixtures::intro();
  EnergyMemory em(a, 5, EnergyMemory::Mode::LowerUpper);
  EXPECT_EQ(em.memory().initial(), 0u);
  EdgeId up = *a.find_edge(0, 2);
  EXPECT_EQ(em.memory().update(2, up), 5u);
  EXPECT_EQ(em.memory().update(3, up), em.bottom());
}

}  // namespace
}  // namespace qg
