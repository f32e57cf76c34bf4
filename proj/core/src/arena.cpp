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

#include "qg/arena.hpp"

#include <algorithm>

namespace qg {

std::string to_string(Player p) { return p == Player::P0 ? "Player0" : "Player1"; }

ArenaError::ArenaError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

int64_t WeightLabel::value() const {
  if (recharge_) throw std::logic_error("recharge label has no integer value");
  return value_;
}

std::string WeightLabel::str() const { return recharge_ ? "R" : std::to_string(value_); }

std::optional<VertexId> Arena::find_vertex(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Arena::vertex(std::string_view name) const {
  auto v = find_vertex(name);
  if (!v) throw ArenaError("unknown vertex '" + std::string(name) + "'");
  return *v;
}

std::optional<EdgeId> Arena::find_edge(VertexId src, VertexId dst) const {
  const auto& out = out_[src];
  auto it = std::lower_bound(out.begin(), out.end(), dst,
                             [this](EdgeId e, VertexId d) { return edges_[e].dst < d; });
  if (it != out.end() && edges_[*it].dst == dst) return *it;
  return std::nullopt;
}

bool Arena::has_recharge() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight.is_recharge(); });
}

bool Arena::is_recharge_mode() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.weight.is_recharge() || e.weight.value() <= 0; });
}

void Arena::require_integer_weights(std::string_view context) const {
  for (const auto& e : edges_) {
    if (e.weight.is_recharge()) {
      throw ArenaError(std::string(context) + ": recharge label on edge " + names_[e.src] + " -> " +
                       names_[e.dst] + " but integer weights are required");
    }
  }
}

void Arena::require_recharge_mode(std::string_view context) const {
  for (const auto& e : edges_) {
    if (!e.weight.is_recharge() && e.weight.value() > 0) {
      throw ArenaError(std::string(context) + ": positive weight on edge " + names_[e.src] + " -> " +
                       names_[e.dst] + " in a recharge arena");
    }
  }
}

bool operator==(const Arena& a, const Arena& b) {
  return a.names_ == b.names_ && a.owners_ == b.owners_ && a.edges_ == b.edges_ && a.initial_ == b.initial_;
}

VertexId ArenaBuilder::add_vertex(std::string name, Player owner) {
  if (name.empty()) throw ArenaError("empty vertex id");
  auto id = static_cast<VertexId>(arena_.names_.size());
  auto [it, inserted] = arena_.index_.emplace(name, id);
  if (!inserted) throw ArenaError("duplicate vertex id '" + name + "'");
  arena_.names_.push_back(std::move(name));
  arena_.owners_.push_back(owner);
  arena_.out_.emplace_back();
  arena_.in_.emplace_back();
  return id;
}

EdgeId ArenaBuilder::add_edge(VertexId src, VertexId dst, WeightLabel weight) {
  if (src >= arena_.names_.size() || dst >= arena_.names_.size()) throw ArenaError("edge endpoint out of range");
  if (!weight.is_recharge()) {
    int64_t v = weight.value();
    if (v > kMaxWeightMagnitude || v < -kMaxWeightMagnitude) {
      throw ArenaError("weight magnitude exceeds 2^62 on edge " + arena_.names_[src] + " -> " + arena_.names_[dst]);
    }
  }
  auto& out = arena_.out_[src];
  auto pos = std::lower_bound(out.begin(), out.end(), dst,
                              [this](EdgeId e, VertexId d) { return arena_.edges_[e].dst < d; });
  if (pos != out.end() && arena_.edges_[*pos].dst == dst) {
    throw ArenaError("duplicate edge " + arena_.names_[src] + " -> " + arena_.names_[dst]);
  }
  auto id = static_cast<EdgeId>(arena_.edges_.size());
  arena_.edges_.push_back(Edge{src, dst, weight});
  out.insert(pos, id);
  arena_.in_[dst].push_back(id);
  return id;
}

EdgeId ArenaBuilder::add_edge(std::string_view src, std::string_view dst, WeightLabel weight) {
  auto s = arena_.find_vertex(src);
  auto d = arena_.find_vertex(dst);
  if (!s) throw ArenaError("unknown vertex '" + std::string(src) + "' in edge");
  if (!d) throw ArenaError("unknown vertex '" + std::string(dst) + "' in edge");
  return add_edge(*s, *d, weight);
}

void ArenaBuilder::set_initial(VertexId v) {
  if (v >= arena_.names_.size()) throw ArenaError("initial vertex out of range");
  arena_.initial_ = v;
}

Arena ArenaBuilder::build() && {
  if (arena_.names_.empty()) throw ArenaError("arena has no vertices");
  if (arena_.initial_ == kNoVertex) throw ArenaError("missing initial declaration");
  for (VertexId v = 0; v < arena_.names_.size(); ++v) {
    if (arena_.out_[v].empty()) throw ArenaError("terminal vertex '" + arena_.names_[v] + "'");
  }
  return std::move(arena_);
}

int64_t max_abs_weight(const Arena& a) {
  int64_t w = 0;
  for (const auto& e : a.edges()) {
    if (!e.weight.is_recharge()) w = std::max(w, e.weight.value() < 0 ? -e.weight.value() : e.weight.value());
  }
  return w;
}

}  // namespace qg
