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

#include "qg/energy_memory.hpp"

namespace qg {

namespace {

MemoryStructure build(const Arena& a, int64_t cap, EnergyMemory::Mode mode) {
  if (cap < 0) throw ArenaError("capacity must be non-negative");
  if (mode == EnergyMemory::Mode::Recharge) {
    a.require_recharge_mode("recharge energy memory");
  } else {
    a.require_integer_weights("bounded energy memory");
  }
  size_t states = static_cast<size_t>(cap) + 2;
  if (static_cast<uint64_t>(cap) + 2 > kMaxMemoryTable || states * std::max<size_t>(a.num_edges(), 1) > kMaxMemoryTable) {
    throw ArenaError("capacity " + std::to_string(cap) + " is too large for an explicit energy memory");
  }
  auto bot = static_cast<MemState>(cap + 1);
  auto upd = [&](MemState s, EdgeId e) -> MemState {
    if (s == bot) return bot;
    const auto& w = a.edge(e).weight;
    if (w.is_recharge()) return static_cast<MemState>(cap);
    int64_t next = static_cast<int64_t>(s) + w.value();
    if (next < 0 || next > cap) return bot;
    return static_cast<MemState>(next);
  };
  MemState init = mode == EnergyMemory::Mode::Recharge ? static_cast<MemState>(cap) : 0;
  return MemoryStructure::from_function(a, states, init, upd);
}

}  // namespace

EnergyMemory::EnergyMemory(const Arena& a, int64_t cap, Mode mode)
    : cap_(cap), mode_(mode), memory_(build(a, cap, mode)) {}

std::string EnergyMemory::state_name(MemState s) const { return is_bottom(s) ? "bot" : std::to_string(s); }

StateNamer EnergyMemory::namer() const {
  MemState bot = bottom();
  return [bot](MemState s) { return s == bot ? std::string("bot") : std::to_string(s); };
}

}  // namespace qg
