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

#include "qg/objective.hpp"

#include <sstream>

namespace qg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string describe(const Objective& o) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const obj::EnergyL&) { os << "Energy_L"; },
                 [&](const obj::EnergyLU& x) { os << "Energy_LU(cap=" << x.cap << ")"; },
                 [&](const obj::AvgEnergy& x) { os << "AvgEnergy(t=" << x.t << ")"; },
                 [&](const obj::AvgEnergyL& x) { os << "AvgEnergy_L(t=" << x.t << ")"; },
                 [&](const obj::AvgEnergyLU& x) { os << "AvgEnergy_LU(cap=" << x.cap << ", t=" << x.t << ")"; },
                 [&](const obj::Recharge& x) { os << "Recharge(cap=" << x.cap << ")"; },
                 [&](const obj::AvgRecharge& x) { os << "AvgRecharge(cap=" << x.cap << ", t=" << x.t << ")"; },
                 [&](const obj::MeanPayoff& x) { os << "MeanPayoff(t=" << x.t << ")"; },
                 [&](const obj::Parity&) { os << "Parity"; },
                 [&](const obj::Countdown& x) { os << "Countdown(c=" << x.budget.c << ")"; },
             },
             o);
  return os.str();
}

bool needs_recharge_arena(const Objective& o) {
  return std::holds_alternative<obj::Recharge>(o) || std::holds_alternative<obj::AvgRecharge>(o);
}

void check_mode(const Arena& a, const Objective& o) {
  if (needs_recharge_arena(o)) {
    a.require_recharge_mode(describe(o));
  } else if (!std::holds_alternative<obj::Parity>(o)) {
    a.require_integer_weights(describe(o));
  }
  if (const auto* p = std::get_if<obj::Parity>(&o)) {
    if (p->coloring.color.size() != a.num_vertices()) throw ArenaError("coloring is not total on the arena's vertices");
  }
  auto nonneg = [](int64_t cap) {
    if (cap < 0) throw ArenaError("capacity must be non-negative");
  };
  std::visit(overloaded{
                 [&](const obj::EnergyLU& x) { nonneg(x.cap); },
                 [&](const obj::AvgEnergyLU& x) { nonneg(x.cap); },
                 [&](const obj::Recharge& x) { nonneg(x.cap); },
                 [&](const obj::AvgRecharge& x) { nonneg(x.cap); },
                 [&](const obj::Countdown& x) { nonneg(x.budget.c); },
                 [](const auto&) {},
             },
             o);
}

Objective ValueFamily::with_threshold(const Rational& t) const {
  switch (kind) {
    case Kind::AvgEnergy:
      return obj::AvgEnergy{t};
    case Kind::AvgEnergyL:
      return obj::AvgEnergyL{t};
    case Kind::AvgEnergyLU:
      return obj::AvgEnergyLU{cap, t};
    case Kind::AvgRecharge:
      return obj::AvgRecharge{cap, t};
    case Kind::MeanPayoff:
      return obj::MeanPayoff{t};
  }
  return obj::AvgEnergy{t};
}

}  // namespace qg
