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
#include <string>
#include <variant>
#include <vector>

#include "qg/arena.hpp"
#include "qg/rational.hpp"

namespace qg {

/// Vertex coloring for max-parity objectives.
struct Coloring {
  std::vector<int> color;

  int operator[](VertexId v) const { return color[v]; }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Initial energy of a countdown game.
struct CountdownBudget {
  int64_t c = 0;
};

namespace obj {

struct EnergyL {};
struct EnergyLU {
  int64_t cap;
};
/// Average-energy bound without any bound on the energy level itself.
struct AvgEnergy {
  Rational t;
};
struct AvgEnergyL {
  Rational t;
};
struct AvgEnergyLU {
  int64_t cap;
  Rational t;
};
struct Recharge {
  int64_t cap;
};
struct AvgRecharge {
  int64_t cap;
  Rational t;
};
/// Player 0 minimises: she wins iff the limsup average weight is at most t.
struct MeanPayoff {
  Rational t;
};
struct Parity {
  Coloring coloring;
};
struct Countdown {
  CountdownBudget budget;
};

}  // namespace obj

using Objective = std::variant<obj::EnergyL, obj::EnergyLU, obj::AvgEnergy, obj::AvgEnergyL, obj::AvgEnergyLU,
                               obj::Recharge, obj::AvgRecharge, obj::MeanPayoff, obj::Parity, obj::Countdown>;

std::string describe(const Objective& o);

/// True for objectives whose arena must use recharge labels (Recharge, AvgRecharge).
bool needs_recharge_arena(const Objective& o);

/// Throws ArenaError when the arena's labels do not fit the objective.
void check_mode(const Arena& a, const Objective& o);

/// Long-run quantity measured by worst-case and best-case value queries.
struct ValueFamily {
  enum class Kind { AvgEnergy, AvgEnergyL, AvgEnergyLU, AvgRecharge, MeanPayoff };
  Kind kind = Kind::AvgEnergy;
  int64_t cap = 0;  // AvgEnergyLU and AvgRecharge only

  static ValueFamily avg_energy() { return {Kind::AvgEnergy, 0}; }
  static ValueFamily avg_energy_l() { return {Kind::AvgEnergyL, 0}; }
  static ValueFamily avg_energy_lu(int64_t cap) { return {Kind::AvgEnergyLU, cap}; }
  static ValueFamily avg_recharge(int64_t cap) { return {Kind::AvgRecharge, cap}; }
  static ValueFamily mean_payoff() { return {Kind::MeanPayoff, 0}; }

  /// The objective "family value <= t".
  Objective with_threshold(const Rational& t) const;
};

}  // namespace qg
