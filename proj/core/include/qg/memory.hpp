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

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qg/arena.hpp"

namespace qg {

/// Finite automaton reading arena edges: (states, initial state, Upd).
class MemoryStructure {
 public:
  /// `table[s * num_edges + e]` is Upd(s, e).
  MemoryStructure(size_t num_states, MemState initial, size_t num_edges, std::vector<MemState> table);

  /// The one-state memory.
  static MemoryStructure trivial(const Arena& a);

  template <typename UpdateFn>
  static MemoryStructure from_function(const Arena& a, size_t num_states, MemState initial, UpdateFn&& upd) {
    std::vector<MemState> table(num_states * a.num_edges());
    for (MemState s = 0; s < num_states; ++s) {
      for (EdgeId e = 0; e < a.num_edges(); ++e) table[s * a.num_edges() + e] = upd(s, e);
    }
    return MemoryStructure(num_states, initial, a.num_edges(), std::move(table));
  }

  size_t num_states() const { return num_states_; }
  size_t num_edges() const { return num_edges_; }
  MemState initial() const { return initial_; }
  MemState update(MemState s, EdgeId e) const { return table_[s * num_edges_ + e]; }

  /// Upd+ of a play prefix (a path of `a`). Throws ArenaError if it is not a path.
  MemState run(const Arena& a, std::span<const VertexId> prefix) const;

  friend bool operator==(const MemoryStructure&, const MemoryStructure&) = default;

 private:
  size_t num_states_;
  MemState initial_;
  size_t num_edges_;
  std::vector<MemState> table_;
};

/// A strategy implemented by a memory structure and a next-move function.
class FiniteStateStrategy {
 public:
  /// `next[v * states + m]` is Nxt(v, m) for vertices owned by `player`, kNoVertex elsewhere.
  FiniteStateStrategy(Player player, MemoryStructure memory, std::vector<VertexId> next);

  /// Positional strategy from one successor per owned vertex.
  static FiniteStateStrategy positional(const Arena& a, Player player, std::span<const VertexId> choice);

  Player player() const { return player_; }
  const MemoryStructure& memory() const { return memory_; }
  VertexId next_move(VertexId v, MemState m) const { return next_[v * memory_.num_states() + m]; }

  /// Throws ArenaError unless the strategy is shaped for `a` and every move is an edge.
  void validate(const Arena& a) const;

  friend bool operator==(const FiniteStateStrategy&, const FiniteStateStrategy&) = default;

 private:
  Player player_;
  MemoryStructure memory_;
  std::vector<VertexId> next_;
};

/// The reachable part of A x M with relabeled weights, plus the map back to (vertex, state).
struct ProductArena {
  Arena arena;
  std::vector<std::pair<VertexId, MemState>> origin;
};

using Relabel = std::function<WeightLabel(EdgeId, MemState)>;
using StateNamer = std::function<std::string(MemState)>;

/// Expanded arena A x M restricted to pairs reachable from (v_I, m_I).
///
/// The edge ((v,s),(v',s')) exists iff (v,v') is an edge and Upd(s,(v,v')) = s'.
/// Its label is `relabel(edge, s)`; product vertices are named "<v>@<namer(s)>".
ProductArena product(const Arena& a, const MemoryStructure& m, const Relabel& relabel, const StateNamer& namer = {});

/// Keeps the original weight of every edge.
Relabel keep_weights(const Arena& a);

/// Turns a positional strategy on a product into a finite-state strategy on the base
/// arena implemented by `m`. Pairs absent from the product get the first successor.
FiniteStateStrategy pull_back(const Arena& base, const MemoryStructure& m, const ProductArena& prod, Player player,
                              std::span<const VertexId> product_choice);

}  // namespace qg
