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

#include <filesystem>
#include <string>
#include <string_view>

#include "qg/arena.hpp"
#include "qg/memory.hpp"
#include "qg/objective.hpp"

namespace qg {

/// Parses the line-oriented arena format:
///
///   arena
///   vertex <id> p0|p1
///   init <id>
///   edge <src> <dst> <int|R>
///
/// `#` starts a comment. Lines beginning with `backmap`, `map` or `color` are
/// skipped so that reduction outputs stay readable as plain arenas.
Arena parse_arena(std::string_view text);

std::string serialize_arena(const Arena& a);

/// Reads `color <vertex> <0|1|2>` lines and ignores everything else.
Coloring parse_coloring(const Arena& a, std::string_view text);
std::string serialize_coloring(const Arena& a, const Coloring& c);

/// Strategy format: `strategy`, optional `player p0|p1`, `memory <k>`, `initmem <s>`,
/// `upd <s> <src> <dst> <s'>` and `move <vertex> <s> <dst>`.
/// Updates that are not listed keep the state unchanged. Without a `player`
/// line the owner of the first `move` vertex is used (Player0 if there is none).
FiniteStateStrategy parse_strategy(const Arena& a, std::string_view text);
std::string serialize_strategy(const Arena& a, const FiniteStateStrategy& s);

/// `backmap` section listing `map <product-vertex> <orig-vertex> <state>`.
std::string serialize_backmap(const Arena& base, const ProductArena& p, const StateNamer& namer = {});

std::string read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace qg
