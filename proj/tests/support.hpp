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

#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <map>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "qg/arena.hpp"
#include "qg/evaluation.hpp"
#include "qg/io.hpp"
#include "qg/memory.hpp"
#include "qg/oracle.hpp"
#include "qg/reductions.hpp"
#include "qg/strategies.hpp"

namespace qg {

inline void PrintTo(const ObjectiveValue& v, std::ostream* os) { *os << v.str(); }
inline void PrintTo(const Rational& r, std::ostream* os) { *os << r.str(); }

}  // namespace qg

namespace qg::testing {

inline Arena arena(std::string_view text) { return parse_arena(text); }

/// Small recharge arena as used by the property suites.
inline Arena random_recharge(uint64_t seed, size_t max_vertices = 5, int64_t max_weight = 3) {
  oracle::GenParams p;
  p.vertices = 1 + seed % max_vertices;
  p.edge_density = 0.45;
  p.max_weight = max_weight;
  p.recharge_mode = true;
  p.recharge_probability = 0.25;
  return oracle::random_arena(p, seed);
}

inline Arena random_weighted(uint64_t seed, size_t max_vertices = 6, int64_t max_weight = 4) {
  oracle::GenParams p;
  p.vertices = 1 + seed % max_vertices;
  p.edge_density = 0.4;
  p.max_weight = max_weight;
  return oracle::random_arena(p, seed);
}

/// Random walk from the initial vertex, closed at the first repeated vertex.
inline Lasso random_lasso(const Arena& a, std::mt19937_64& rng, size_t min_length = 1) {
  std::vector<VertexId> walk{a.initial()};
  for (;;) {
    auto outs = a.out_edges(walk.back());
    VertexId next = a.edge(outs[rng() % outs.size()]).dst;
    auto it = std::find(walk.begin(), walk.end(), next);
    if (it != walk.end() && walk.size() >= min_length) return Lasso{{walk.begin(), it}, {it, walk.end()}};
    walk.push_back(next);
  }
}

/// The play of `prod` that extends the play `l` of the base arena, as a lasso.
inline Lasso extended_lasso(const Arena& base, const ProductArena& prod, const MemoryStructure& m, const Lasso& l) {
  std::map<std::pair<VertexId, MemState>, VertexId> id;
  for (VertexId v = 0; v < prod.origin.size(); ++v) id[prod.origin[v]] = v;
  const size_t p = l.prefix.size(), c = l.cycle.size();
  std::vector<VertexId> ext;
  std::map<std::pair<VertexId, size_t>, size_t> seen;  // (product vertex, phase) -> position
  MemState s = m.initial();
  for (size_t i = 0;; ++i) {
    if (i > 0) s = m.update(s, *base.find_edge(l.at(i - 1), l.at(i)));
    VertexId pv = id.at({l.at(i), s});
    if (i >= p) {
      auto [it, fresh] = seen.try_emplace({pv, (i - p) % c}, i);
      if (!fresh) {
        auto start = static_cast<std::ptrdiff_t>(it->second);
        return Lasso{{ext.begin(), ext.begin() + start}, {ext.begin() + start, ext.end()}};
      }
    }
    ext.push_back(pv);
  }
}

/// The energy-counter strategy on INTRO: from v0 go to v2 iff the level is 0, from v1
/// go to v0 iff the level is 0. Memory is the level in 0..5 plus an overflow state.
inline FiniteStateStrategy intro_counter_strategy(const Arena& intro) {
  std::string text = "strategy\nplayer p0\nmemory 7\ninitmem 0\n";
  for (const Edge& e : intro.edges()) {
    for (int s = 0; s < 7; ++s) {
      int next = s == 6 ? 6 : s + static_cast<int>(e.weight.value());
      if (next < 0 || next > 5) next = 6;
      text += "upd " + std::to_string(s) + " " + intro.name(e.src) + " " + intro.name(e.dst) + " " +
              std::to_string(next) + "\n";
    }
  }
  for (int s = 0; s < 7; ++s) {
    text += "move v0 " + std::to_string(s) + (s == 0 ? " v2\n" : " v1\n");
    text += "move v1 " + std::to_string(s) + (s == 0 ? " v0\n" : " v2\n");
  }
  return parse_strategy(intro, text);
}

/// Composes `sigma` with a counter modulo `period` advanced on every edge leaving `u`;
/// while the counter is nonzero, the move at `u` is `alt` instead of the one of `sigma`
/// (kNoVertex keeps it).
inline FiniteStateStrategy with_detour(const Arena& a, const FiniteStateStrategy& sigma, VertexId u, VertexId alt,
                                       size_t period = 2) {
  const MemoryStructure& m = sigma.memory();
  const size_t k = m.num_states();
  const size_t n = k * period;
  auto mem = MemoryStructure::from_function(a, n, static_cast<MemState>(period * m.initial()), [&](MemState s, EdgeId e) {
    size_t c = s % period;
    if (a.edge(e).src == u) c = (c + 1) % period;
    return static_cast<MemState>(period * m.update(s / period, e) + c);
  });
  std::vector<VertexId> next(a.num_vertices() * n, kNoVertex);
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) != sigma.player()) continue;
    for (MemState s = 0; s < n; ++s) {
      next[v * n + s] = v == u && s % period && alt != kNoVertex ? alt : sigma.next_move(v, s / period);
    }
  }
  return FiniteStateStrategy(sigma.player(), std::move(mem), std::move(next));
}

struct DegradedInstance {
  Arena arena;
  FiniteStateStrategy strategy;
  int64_t t = 0;
};

/// A random arena with a finite-state strategy winning AvgEnergy_L(t): an Energy_LU
/// strategy for a cap 2W above the least one found by the cap search, composed with a
/// detour memory that still wins.
/// Detours leaving the original energy band are preferred.
inline std::optional<DegradedInstance> degraded_instance(uint64_t seed) {
  oracle::GenParams p;
  p.vertices = 2 + seed % 4;
  p.edge_density = 0.5;
  p.max_weight = 3;
  p.player0_fraction = 0.7;
  Arena a = oracle::random_arena(p, seed);
  ExistsCapResult r = exists_cap_energy_lu(a, 40);
  if (!r.yes || !r.strategy) return std::nullopt;
  SolveResult loose = solve_energy_lu(a, r.cap + 2 * max_abs_weight(a));
  const FiniteStateStrategy& sigma = *loose.strategy;
  std::optional<DegradedInstance> fallback;
  for (VertexId u = 0; u < a.num_vertices(); ++u) {
    if (a.owner(u) != Player::P0) continue;
    for (EdgeId e : a.out_edges(u)) {
     for (size_t period : {2, 4}) {
      FiniteStateStrategy d = with_detour(a, sigma, u, a.edge(e).dst, period);
      ObjectiveValue w = worst_consistent_value(a, d, ValueFamily::avg_energy_l());
      if (!w.is_finite()) continue;
      DegradedInstance inst{a, d, w.value().ceil()};
      if (!verify_strategy(a, d, obj::EnergyLU{r.cap}).accepted) return inst;
      if (!fallback) fallback = std::move(inst);
     }
    }
  }
  if (fallback) return fallback;
  ObjectiveValue w = worst_consistent_value(a, sigma, ValueFamily::avg_energy_l());
  if (!w.is_finite()) return std::nullopt;
  return DegradedInstance{a, with_detour(a, sigma, a.initial(), kNoVertex), w.value().ceil()};
}

}  // namespace qg::testing
