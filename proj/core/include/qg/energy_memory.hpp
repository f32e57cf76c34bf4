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
#include <optional>
#include <string>

#include "qg/arena.hpp"
#include "qg/memory.hpp"

namespace qg {

/// Memory {0..cap} + {bot} tracking the energy level while it stays in range.
///
/// Recharge mode starts at cap, resets to cap on R and falls to bot below 0.
/// LowerUpper mode starts at 0, has no R and falls to bot outside [0, cap].
/// State s <= cap is the level s; state cap+1 is bot, which absorbs.
class EnergyMemory {
 public:
  enum class Mode { Recharge, LowerUpper };

  /// Throws ArenaError if the arena's labels do not fit the mode.
  EnergyMemory(const Arena& a, int64_t cap, Mode mode);

  const MemoryStructure& memory() const { return memory_; }
  int64_t cap() const { return cap_; }
  Mode mode() const { return mode_; }
  MemState bottom() const { return static_cast<MemState>(cap_ + 1); }
  bool is_bottom(MemState s) const { return s == bottom(); }
  /// "0".."cap" or "bot".
  std::string state_name(MemState s) const;
  StateNamer namer() const;

 private:
  int64_t cap_;
  Mode mode_;
  MemoryStructure memory_;
};

/// Refuses memories whose update tables would exceed this many entries.
inline constexpr size_t kMaxMemoryTable = size_t{1} << 26;

}  // namespace qg
