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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qg/arena.hpp"
#include "qg/energy_memory.hpp"
#include "qg/memory.hpp"
#include "qg/objective.hpp"
#include "qg/rational.hpp"

namespace qg {

using VertexSet = std::vector<bool>;
/// One successor per vertex, kNoVertex where no choice is made.
using Choice = std::vector<VertexId>;

struct SolveResult {
  Player winner = Player::P0;
  /// Winning strategy for `winner` over the solved arena, when the algorithm yields one.
  std::optional<FiniteStateStrategy> strategy;
  /// Player0's winning region over the arena the algorithm works on (the product
  /// for product-based solvers, see `certificate`).
  VertexSet region0;
  std::string certificate;
};

/// Least superset of `target` from which `p` forces a visit to `target`,
/// computed inside the subgame `within` (all vertices if null). When `moves` is
/// given, attracted vertices owned by `p` get their attracting successor.
VertexSet attractor(const Arena& a, Player p, const VertexSet& target, Choice* moves = nullptr,
                    const VertexSet* within = nullptr);

struct ParitySolution {
  VertexSet region0;
  Choice strategy0;  // positional, defined on every Player0 vertex
  Choice strategy1;  // positional, defined on every Player1 vertex
};

/// Zielonka's recursive algorithm for max-parity.
ParitySolution solve_parity(const Arena& a, const Coloring& c);
/// Throws ArenaError unless every color is 0, 1 or 2.
SolveResult solve_parity3(const Arena& a, const Coloring& c);

/// Least progress measure of the energy game with integer `edge_weight` (indexed
/// by edge id) in which `energy_player` keeps the accumulated weight bounded below.
/// `credit[v]` is the least initial credit that suffices from v, nullopt if none does.
struct EnergyMeasure {
  std::vector<std::optional<int64_t>> credit;
  Choice choice;  // energy player's moves; winning wherever credit is finite
};
EnergyMeasure energy_progress_measure(const Arena& a, const std::vector<int64_t>& edge_weight, Player energy_player);

/// Player0 minimises: she wins MP(t) from v iff she can force limsup average weight <= t.
/// Strategies are positional for both players.
SolveResult solve_mean_payoff_threshold(const Arena& a, const Rational& t);
/// Player0's winning region of MP(t) over all vertices.
VertexSet mean_payoff_region(const Arena& a, const Rational& t);
/// The least t such that Player0 wins MP(t) from v.
Rational mean_payoff_value(const Arena& a, VertexId v);
std::vector<Rational> mean_payoff_values(const Arena& a);

/// Energy_L with initial energy 0; Player0's strategy is positional. No Player1
/// strategy is produced.
SolveResult solve_energy_l(const Arena& a);

/// Safety game on A x EnergyMemory where Player0 avoids bot.
struct EnergySafety {
  ProductArena product;
  VertexSet safe;  // Player0's winning region on the product
  Choice choice0;
  Choice choice1;
};
EnergySafety solve_energy_safety(const Arena& a, const EnergyMemory& m);

/// Energy_LU(cap) from energy 0; strategies use the cap+2 energy-counter states.
SolveResult solve_energy_lu(const Arena& a, int64_t cap);
/// Recharge(cap); strategies use the cap+2 energy-counter states.
SolveResult solve_recharge(const Arena& a, int64_t cap);

/// Throws ArenaError naming the violated countdown shape rule and edge.
void check_countdown_shape(const Arena& a);
/// Strategies count the remaining budget (states 0..c plus an exhausted state c+1).
SolveResult solve_countdown(const Arena& a, CountdownBudget budget);

}  // namespace qg
