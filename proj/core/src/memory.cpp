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

#include "qg/memory.hpp"

#include <deque>
#include <unordered_map>

namespace qg {

MemoryStructure::MemoryStructure(size_t num_states, MemState initial, size_t num_edges, std::vector<MemState> table)
    : num_states_(num_states), initial_(initial), num_edges_(num_edges), table_(std::move(table)) {
  if (num_states_ == 0) throw ArenaError("memory structure needs at least one state");
  if (initial_ >= num_states_) throw ArenaError("initial memory state out of range");
  if (table_.size() != num_states_ * num_edges_) throw ArenaError("memory update table is not total");
  for (MemState s : table_) {
    if (s >= num_states_) throw ArenaError("memory update leads to an undefined state");
  }
}

MemoryStructure MemoryStructure::trivial(const Arena& a) {
  return MemoryStructure(1, 0, a.num_edges(), std::vector<MemState>(a.num_edges(), 0));
}

MemState MemoryStructure::run(const Arena& a, std::span<const VertexId> prefix) const {
  MemState s = initial_;
  for (size_t i = 0; i + 1 < prefix.size(); ++i) {
    auto e = a.find_edge(prefix[i], prefix[i + 1]);
    if (!e) throw ArenaError("not a path: " + a.name(prefix[i]) + " -> " + a.name(prefix[i + 1]));
    s = update(s, *e);
  }
  return s;
}

FiniteStateStrategy::FiniteStateStrategy(Player player, MemoryStructure memory, std::vector<VertexId> next)
    : player_(player), memory_(std::move(memory)), next_(std::move(next)) {}

FiniteStateStrategy FiniteStateStrategy::positional(const Arena& a, Player player, std::span<const VertexId> choice) {
  std::vector<VertexId> next(a.num_vertices(), kNoVertex);
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) == player) next[v] = choice[v];
  }
  return FiniteStateStrategy(player, MemoryStructure::trivial(a), std::move(next));
}

void FiniteStateStrategy::validate(const Arena& a) const {
  if (memory_.num_edges() != a.num_edges()) throw ArenaError("strategy memory does not match the arena's edges");
  size_t k = memory_.num_states();
  if (next_.size() != a.num_vertices() * k) throw ArenaError("next-move table has the wrong size");
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    for (MemState m = 0; m < k; ++m) {
      VertexId to = next_[v * k + m];
      if (a.owner(v) != player_) continue;
      if (to == kNoVertex) {
        throw ArenaError("next move undefined at vertex '" + a.name(v) + "', state " + std::to_string(m));
      }
      if (to >= a.num_vertices() || !a.find_edge(v, to)) {
        throw ArenaError("next move from '" + a.name(v) + "' is not an edge");
      }
    }
  }
}

ProductArena product(const Arena& a, const MemoryStructure& m, const Relabel& relabel, const StateNamer& namer) {
  auto name_of = [&](VertexId v, MemState s) {
    return a.name(v) + "@" + (namer ? namer(s) : std::to_string(s));
  };
  ProductArena out;
  ArenaBuilder b;
  std::unordered_map<uint64_t, VertexId> ids;
  std::deque<VertexId> queue;
  auto key = [&](VertexId v, MemState s) { return static_cast<uint64_t>(v) * m.num_states() + s; };
  auto intern = [&](VertexId v, MemState s) {
    auto [it, fresh] = ids.emplace(key(v, s), static_cast<VertexId>(out.origin.size()));
    if (fresh) {
      b.add_vertex(name_of(v, s), a.owner(v));
      out.origin.emplace_back(v, s);
      queue.push_back(it->second);
    }
    return it->second;
  };
  VertexId init = intern(a.initial(), m.initial());
  b.set_initial(init);
  while (!queue.empty()) {
    VertexId pv = queue.front();
    queue.pop_front();
    auto [v, s] = out.origin[pv];
    for (EdgeId e : a.out_edges(v)) {
      VertexId target = intern(a.edge(e).dst, m.update(s, e));
      b.add_edge(pv, target, relabel(e, s));
    }
  }
  out.arena = std::move(b).build();
  return out;
}

Relabel keep_weights(const Arena& a) {
  return [&a](EdgeId e, MemState) { return a.edge(e).weight; };
}

FiniteStateStrategy pull_back(const Arena& base, const MemoryStructure& m, const ProductArena& prod, Player player,
                              std::span<const VertexId> product_choice) {
  size_t k = m.num_states();
  std::vector<VertexId> next(base.num_vertices() * k, kNoVertex);
  for (VertexId v = 0; v < base.num_vertices(); ++v) {
    if (base.owner(v) != player) continue;
    VertexId fallback = base.edge(base.out_edges(v).front()).dst;
    for (MemState s = 0; s < k; ++s) next[v * k + s] = fallback;
  }
  for (VertexId pv = 0; pv < prod.origin.size(); ++pv) {
    auto [v, s] = prod.origin[pv];
    if (base.owner(v) != player || product_choice[pv] == kNoVertex) continue;
    next[v * k + s] = prod.origin[product_choice[pv]].first;
  }
  return FiniteStateStrategy(player, m, std::move(next));
}

}  // namespace qg
