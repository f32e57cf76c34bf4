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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qg/arena.hpp"
#include "qg/evaluation.hpp"
#include "qg/objective.hpp"
#include "qg/rational.hpp"

/// Brute-force reference implementations for small instances, and seeded instance generators.
namespace qg::oracle {

/// Raised when an instance exceeds an oracle's size limit.
class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr size_t kDefaultVertexLimit = 8;
inline constexpr uint64_t kMaxStrategyPairs = 50'000'000;

/// Per vertex: min over Player0 positional strategies of max over Player1
/// positional strategies of the mean of the cycle reached.
std::vector<Rational> mp_value_by_enumeration(const Arena& a, size_t vertex_limit = kDefaultVertexLimit);

/// Player0's parity winning region by playing out every positional strategy pair.
std::vector<bool> parity_region_by_enumeration(const Arena& a, const Coloring& c,
                                               size_t vertex_limit = kDefaultVertexLimit);

/// Energy_LU(cap) from energy 0, decided by a naive safety fixpoint over (vertex, level).
bool energy_lu_wins_by_safety(const Arena& a, int64_t cap);
/// Recharge(cap) from energy cap, decided the same way.
bool recharge_wins_by_safety(const Arena& a, int64_t cap);

struct CapSearch {
  bool yes = false;
  int64_t cap = 0;  // least winning capacity when `yes`
  int64_t searched_up_to = 0;
};

/// Tries Recharge(cap) for cap = 0, 1, ..., cap_max.
CapSearch exists_cap_by_search(const Arena& a, int64_t cap_max);

struct BestLasso {
  Lasso lasso;
  ObjectiveValue value;
  /// Number of (vertex, level) states; the optimum is reached once length_bound exceeds it.
  size_t stabilization_bound = 0;
};

/// Optimal lasso of length at most `length_bound` in an arena where every Player1
/// vertex has a single successor. Walks never repeat a (vertex, level) state.
BestLasso solitaire_best_lasso(const Arena& a, const ValueFamily& f, size_t length_bound);

/// Throws std::invalid_argument unless every Player1 vertex has out-degree 1.
void require_solitaire(const Arena& a);

struct GenParams {
  size_t vertices = 4;
  double edge_density = 0.4;
  int64_t max_weight = 3;
  /// Chance that an edge is a recharge edge; recharge arenas only.
  double recharge_probability = 0.2;
  double player0_fraction = 0.5;
  /// Integer weights in [-W, 0] plus recharge edges, instead of [-W, W].
  bool recharge_mode = false;
};

/// Vertices v0..v{n-1}, initial v0, every vertex with at least one successor.
Arena random_arena(const GenParams& p, uint64_t seed);

struct CountdownInstance {
  Arena arena;
  CountdownBudget budget;
};

/// A countdown-shaped arena with up to `side` vertices per player plus the sink.
CountdownInstance random_countdown(uint64_t seed, size_t side = 3, int64_t max_weight = 4, int64_t max_budget = 12);

}  // namespace qg::oracle
