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

#include "qg/arena.hpp"
#include "qg/energy_memory.hpp"
#include "qg/memory.hpp"
#include "qg/objective.hpp"
#include "qg/solvers.hpp"
#include "qg/strategies.hpp"

namespace qg {

/// A reduced game: the product arena, how its vertices map back, and what to solve on it.
struct ReductionOutput {
  ProductArena product;
  /// The memory structure of the reduction; strategies on `product` pull back through it.
  std::optional<MemoryStructure> memory;
  StateNamer namer;
  /// The objective to solve on `product.arena`.
  Objective target;
  std::string objective_note;
};

/// Average-bounded recharge to mean-payoff. With t = p/q, edges leaving (v, c) weigh
/// c*q, edges leaving (v, bot) weigh p+1, and the target is MeanPayoff(p).
ReductionOutput reduce_avg_recharge(const Arena& a, int64_t cap, const Rational& t);

/// AvgEnergy_LU to mean-payoff with the same weights; bot is entered on leaving [0, cap].
ReductionOutput reduce_avg_energy_lu(const Arena& a, int64_t cap, const Rational& t);

/// Tripling: every vertex is split by the kind of its incoming edge (recharge, zero,
/// negative), colored 2, 0 and 1. The initial vertex is the zero copy.
struct ParityReduction {
  ProductArena product;
  MemoryStructure memory;  // states 0 = zero, 1 = recharge, 2 = negative
  Coloring coloring;
  StateNamer namer;
};
ParityReduction reduce_exists_cap_to_parity(const Arena& a);

struct ExistsCapResult {
  bool yes = false;
  int64_t cap = 0;  // witness (Recharge) or least capacity found (Energy_LU)
  std::optional<FiniteStateStrategy> strategy;
  int64_t searched_up_to = 0;  // Energy_LU: the search is complete only up to here
  bool fallback_used = false;  // Recharge: the decrement-vertex bound failed verification
};

/// Existential capacity for Recharge via the three-color parity game. The witness
/// capacity is (number of decrement vertices of the tripled arena) * W.
ExistsCapResult exists_cap_recharge(const Arena& a);

/// Default search bound |V| * W * 2^8 (at least 2^8).
int64_t default_cap_max(const Arena& a);

/// Least cap <= cap_max with Player0 winning Energy_LU(cap), found by galloping and
/// binary search over the monotone family.
ExistsCapResult exists_cap_energy_lu(const Arena& a, std::optional<int64_t> cap_max = std::nullopt);

/// Same search; on success the threshold witness t equals the least capacity.
ExistsCapResult exists_threshold_avg_energy_l(const Arena& a, std::optional<int64_t> cap_max = std::nullopt);

/// Fresh Player1 initial vertex with an R edge to the old initial vertex; the target
/// is AvgRecharge(c, 0).
ReductionOutput reduce_countdown_to_avg_recharge(const Arena& a, CountdownBudget budget);

/// Prepends the capacity gadget: a Player0 initial vertex with a -1 self loop and a 0
/// edge to a Player1 vertex, which has a -c edge to a 0-self-loop sink and a 0 edge
/// into the countdown arena.
Arena build_fig4_gadget(const Arena& a, CountdownBudget budget);

/// Least cap in [0, cap_max] for which Player0 wins AvgRecharge(cap, 0) on the gadget arena.
std::optional<int64_t> gadget_capacity_sweep(const Arena& gadget, int64_t cap_max);

/// Solves any supported objective. Average objectives go through their mean-payoff
/// reduction; strategies are returned over `a`.
SolveResult solve_objective(const Arena& a, const Objective& o);

struct BoundifyResult {
  FiniteStateStrategy strategy;
  int64_t certified_cap = 0;
  /// Worst average of the new strategy, for information only.
  ObjectiveValue measured_average = ObjectiveValue::minus_infinity();
};

/// Thrown when the input strategy does not win AvgEnergy_L(t); carries a violating lasso.
class NotWinningError : public std::runtime_error {
 public:
  NotWinningError(const std::string& what, std::optional<Lasso> witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::optional<Lasso>& witness() const { return witness_; }

 private:
  std::optional<Lasso> witness_;
};

/// Turns a Player0 strategy winning AvgEnergy_L(t) into one winning Energy_LU(certified_cap).
/// Whenever the energy rises across t, the strategy memory is replaced by the
/// representative of the current vertex and level: the configuration with the least
/// peak among those reachable with that vertex and level.
BoundifyResult boundify_strategy(const Arena& a, const FiniteStateStrategy& sigma, int64_t t);

}  // namespace qg
