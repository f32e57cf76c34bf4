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

#include <optional>
#include <string>
#include <string_view>

#include "qg/arena.hpp"

namespace qg::fixtures {

/// Three-vertex game whose best plays keep the energy between 0 and 5 with average 4.
Arena intro();
/// Two-vertex recharge game showing that cap-bounded averages need cap memory states.
Arena memlb();
/// Six-vertex solitaire recharge game with a non-monotone capacity tradeoff.
Arena tradeoff();
/// Directed n-cycle v0 .. v{n-1}: the edge into v0 is R, every other edge weighs -W.
Arena cycle(int n, int64_t w);

/// Resolves "INTRO", "MEMLB", "TRADEOFF" or "CYCLE(n,W)", with or without a leading '@'.
std::optional<Arena> by_name(std::string_view name);

}  // namespace qg::fixtures
