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
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qg {

enum class Player : uint8_t { P0 = 0, P1 = 1 };

constexpr Player opponent(Player p) { return p == Player::P0 ? Player::P1 : Player::P0; }
constexpr int index(Player p) { return static_cast<int>(p); }
std::string to_string(Player p);

using VertexId = uint32_t;
using EdgeId = uint32_t;
using MemState = uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Largest weight magnitude accepted anywhere; keeps energy sums overflow-checkable.
inline constexpr int64_t kMaxWeightMagnitude = int64_t{1} << 62;

/// Raised for malformed arenas. `line()` is 0 when the problem is not tied to input text.
class ArenaError : public std::runtime_error {
 public:
  explicit ArenaError(const std::string& what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

/// An edge label: an integer weight or the recharge action R.
class WeightLabel {
 public:
  static constexpr WeightLabel recharge() { return WeightLabel(true, 0); }
  static constexpr WeightLabel integer(int64_t v) { return WeightLabel(false, v); }

  bool is_recharge() const { return recharge_; }
  /// The integer weight. Must not be called on a recharge label.
  int64_t value() const;

  friend bool operator==(const WeightLabel&, const WeightLabel&) = default;
  std::string str() const;

 private:
  constexpr WeightLabel(bool r, int64_t v) : recharge_(r), value_(v) {}
  bool recharge_ = false;
  int64_t value_ = 0;
};

struct Edge {
  VertexId src;
  VertexId dst;
  WeightLabel weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite game graph without terminal vertices. Immutable once built.
class Arena {
 public:
  size_t num_vertices() const { return names_.size(); }
  size_t num_edges() const { return edges_.size(); }

  const std::string& name(VertexId v) const { return names_[v]; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  /// Like find_vertex but throws ArenaError for unknown names.
  VertexId vertex(std::string_view name) const;

  Player owner(VertexId v) const { return owners_[v]; }
  VertexId initial() const { return initial_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  /// Outgoing edges of v ordered by target vertex index.
  std::span<const EdgeId> out_edges(VertexId v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_[v]; }
  std::optional<EdgeId> find_edge(VertexId src, VertexId dst) const;

  bool has_recharge() const;
  /// No positive integer weights (recharge labels allowed).
  bool is_recharge_mode() const;

  /// Throw ArenaError unless every label is an integer.
  void require_integer_weights(std::string_view context) const;
  /// Throw ArenaError unless every integer label is non-positive.
  void require_recharge_mode(std::string_view context) const;

  friend bool operator==(const Arena& a, const Arena& b);

 private:
  friend class ArenaBuilder;

  std::vector<std::string> names_;
  std::vector<Player> owners_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::unordered_map<std::string, VertexId> index_;
  VertexId initial_ = kNoVertex;
};

class ArenaBuilder {
 public:
  /// Throws ArenaError on duplicate ids.
  VertexId add_vertex(std::string name, Player owner);
  /// Throws ArenaError on a duplicate (src, dst) pair or an oversized weight.
  EdgeId add_edge(VertexId src, VertexId dst, WeightLabel weight);
  EdgeId add_edge(std::string_view src, std::string_view dst, WeightLabel weight);
  void set_initial(VertexId v);

  bool has_vertex(std::string_view name) const { return arena_.index_.contains(std::string(name)); }
  std::optional<VertexId> find_vertex(std::string_view name) const { return arena_.find_vertex(name); }
  size_t num_vertices() const { return arena_.names_.size(); }

  /// Validates (initial set, no terminal vertices) and returns the arena.
  Arena build() &&;

 private:
  Arena arena_;
};

/// Largest |w| over integer labels, 0 if there are none.
int64_t max_abs_weight(const Arena& a);

}  // namespace qg
