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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qg/arena.hpp"
#include "qg/objective.hpp"
#include "qg/rational.hpp"

namespace qg {

/// Ultimately periodic play prefix . cycle^omega.
///
/// The play starts at prefix[0], or at cycle[0] when the prefix is empty; that vertex
/// must be the arena's initial vertex. The seams prefix.back() -> cycle[0] and
/// cycle.back() -> cycle[0] must be edges.
struct Lasso {
  std::vector<VertexId> prefix;
  std::vector<VertexId> cycle;

  /// Vertex at position i of the infinite play.
  VertexId at(size_t i) const {
    return i < prefix.size() ? prefix[i] : cycle[(i - prefix.size()) % cycle.size()];
  }

  /// Throws ArenaError if the lasso is not a play of `a`.
  void validate(const Arena& a) const;

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// `prefix: v0 v2 ; cycle: v0 v1`. The prefix part may be empty.
Lasso parse_lasso(const Arena& a, std::string_view text);
std::string format_lasso(const Arena& a, const Lasso& l);

enum class ViolationReason { LowerBound, UpperBound, NegativeRecharge };
std::string to_string(ViolationReason r);

/// Result of evaluating a long-run objective on a play.
class ObjectiveValue {
 public:
  enum class Kind { MinusInfinity, Finite, PlusInfinity, Violated };

  static ObjectiveValue finite(Rational v) { return ObjectiveValue(Kind::Finite, v, {}, 0); }
  static ObjectiveValue plus_infinity() { return ObjectiveValue(Kind::PlusInfinity, {}, {}, 0); }
  static ObjectiveValue minus_infinity() { return ObjectiveValue(Kind::MinusInfinity, {}, {}, 0); }
  /// `index` is the earliest position n whose prefix v0..vn violates the bound.
  static ObjectiveValue violated(ViolationReason r, int64_t index) { return ObjectiveValue(Kind::Violated, {}, r, index); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_violated() const { return kind_ == Kind::Violated; }
  const Rational& value() const { return value_; }
  ViolationReason reason() const { return reason_; }
  int64_t index() const { return index_; }

  /// True iff the value is finite or -inf and at most t.
  bool at_most(const Rational& t) const;

  /// "4/1", "INF", "-INF" or "VIOLATED(LowerBound@3)".
  std::string str() const;

  friend bool operator==(const ObjectiveValue&, const ObjectiveValue&) = default;
  /// Orders from best to worst for a minimising Player 0:
  /// -inf < finite values < +inf < violations (later violations are less bad).
  friend std::strong_ordering operator<=>(const ObjectiveValue& a, const ObjectiveValue& b);

 private:
  ObjectiveValue(Kind k, Rational v, ViolationReason r, int64_t idx) : kind_(k), value_(v), reason_(r), index_(idx) {}
  Kind kind_;
  Rational value_;
  ViolationReason reason_ = ViolationReason::LowerBound;
  int64_t index_ = 0;
};

/// Which energy bounds are tracked while averaging the energy levels of a lasso.
struct EvalMode {
  enum class Kind { Plain, LowerBounded, Bounded, RechargeWith };
  Kind kind = Kind::Plain;
  int64_t cap = 0;

  static EvalMode plain() { return {Kind::Plain, 0}; }
  static EvalMode lower_bounded() { return {Kind::LowerBounded, 0}; }
  static EvalMode bounded(int64_t cap) { return {Kind::Bounded, cap}; }
  static EvalMode recharge_with(int64_t cap) { return {Kind::RechargeWith, cap}; }
};

/// Sum of the edge weights along a path. Throws ArenaError on recharge edges or non-edges.
int64_t energy_level(const Arena& a, std::span<const VertexId> prefix);

/// cap plus the energy of the longest suffix without a recharge edge.
int64_t recharge_energy_level(const Arena& a, int64_t cap, std::span<const VertexId> prefix);

/// Long-run average of the (recharge) energy levels of a lasso, with bound tracking.
ObjectiveValue avg_energy_of_lasso(const Arena& a, const Lasso& l, EvalMode mode);

/// Cycle weight divided by cycle length.
Rational mean_payoff_of_lasso(const Arena& a, const Lasso& l);

/// The sink of a countdown arena: the unique Player 1 vertex whose only edge is a self-loop.
std::optional<VertexId> countdown_sink(const Arena& a);

/// Decides membership of the infinite play in the objective.
bool lasso_satisfies(const Arena& a, const Lasso& l, const Objective& o);

}  // namespace qg
