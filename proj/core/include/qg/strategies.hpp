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
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qg/arena.hpp"
#include "qg/evaluation.hpp"
#include "qg/memory.hpp"
#include "qg/objective.hpp"

namespace qg {

struct Verdict {
  bool accepted = false;
  /// A consistent play violating the objective when rejected; otherwise the
  /// consistent lasso realising `worst_value`, if any.
  std::optional<Lasso> witness;
  std::optional<ObjectiveValue> worst_value;
  std::string detail;
};

/// Decides whether every play consistent with `s` satisfies `o` (for Player0
/// strategies) or violates it (for Player1 strategies).
///
/// Player1 strategies are supported for Energy_LU, Recharge, AvgEnergy_LU,
/// AvgRecharge, MeanPayoff, Parity and Countdown; other combinations throw
/// std::invalid_argument.
Verdict verify_strategy(const Arena& a, const FiniteStateStrategy& s, const Objective& o);

/// Supremum over plays consistent with the Player0 strategy `s` of the family's
/// long-run quantity. Bound violations make the result Violated.
ObjectiveValue worst_consistent_value(const Arena& a, const FiniteStateStrategy& s, const ValueFamily& f,
                                      Lasso* witness = nullptr);

/// Number of memory states occurring in plays consistent with `s`.
size_t reachable_memory_states(const Arena& a, const FiniteStateStrategy& s);

/// Renumbers reachable memory states in breadth-first order and drops the rest.
FiniteStateStrategy canonicalize(const Arena& a, const FiniteStateStrategy& s);

class EnumerationLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr uint64_t kDefaultEnumerationLimit = 10'000'000;

/// Calls `visit` once for every Player0 strategy with exactly `memory_size`
/// reachable memory states, up to renaming of states. Stops early when `visit`
/// returns false. Throws EnumerationLimitExceeded once more than `limit` partial
/// strategies have been explored. Returns the number of strategies visited.
uint64_t enumerate_strategies(const Arena& a, size_t memory_size,
                              const std::function<bool(const FiniteStateStrategy&)>& visit,
                              uint64_t limit = kDefaultEnumerationLimit);

/// A random consistent lasso: Player1 moves uniformly, the walk stops at the first
/// repeated (vertex, memory) pair.
Lasso sample_consistent_lasso(const Arena& a, const FiniteStateStrategy& s, std::mt19937_64& rng);

/// Weighted digraph given as successor lists of (target, weight).
using WeightedGraph = std::vector<std::vector<std::pair<uint32_t, int64_t>>>;

struct CycleMean {
  Rational mean;
  std::vector<uint32_t> cycle;  // cycle[0] -> cycle[1] -> ... -> cycle[0]
};

/// Maximum mean over all cycles of `g`, with a cycle attaining it, or nullopt if `g` is acyclic.
std::optional<CycleMean> max_cycle_mean(const WeightedGraph& g);

}  // namespace qg
