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

#include "qg/fixtures.hpp"

#include <charconv>

#include "qg/io.hpp"

namespace qg::fixtures {

Arena intro() {
  return parse_arena(R"(arena
vertex v0 p0
vertex v1 p0
vertex v2 p1
init v0
edge v0 v1 -1
edge v1 v0 0
edge v0 v2 3
edge v2 v0 2
edge v1 v2 -1
edge v2 v1 -3
)");
}

Arena memlb() {
  return parse_arena(R"(arena
vertex v0 p1
vertex v1 p0
init v0
edge v0 v1 -1
edge v1 v1 -1
edge v1 v0 R
)");
}

Arena tradeoff() {
  return parse_arena(R"(arena
vertex v0 p0
vertex v1 p0
vertex v2 p0
vertex v3 p0
vertex v4 p0
vertex v5 p0
init v0
edge v0 v0 R
edge v0 v3 -3
edge v3 v4 0
edge v4 v5 0
edge v5 v0 0
edge v0 v1 0
edge v1 v2 0
edge v2 v0 -1
)");
}

Arena cycle(int n, int64_t w) {
  if (n < 1) throw ArenaError("cycle needs at least one vertex");
  if (w < 0) throw ArenaError("cycle weight magnitude must be non-negative");
  ArenaBuilder b;
  for (int i = 0; i < n; ++i) b.add_vertex("v" + std::to_string(i), Player::P0);
  for (int i = 0; i < n; ++i) {
    auto dst = static_cast<VertexId>((i + 1) % n);
    b.add_edge(static_cast<VertexId>(i), dst, dst == 0 ? WeightLabel::recharge() : WeightLabel::integer(-w));
  }
  b.set_initial(0);
  return std::move(b).build();
}

std::optional<Arena> by_name(std::string_view name) {
  if (name.starts_with('@')) name.remove_prefix(1);
  if (name == "INTRO") return intro();
  if (name == "MEMLB") return memlb();
  if (name == "TRADEOFF") return tradeoff();
  if (name.starts_with("CYCLE(") && name.ends_with(')')) {
    auto args = name.substr(6, name.size() - 7);
    auto comma = args.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    int n = 0;
    int64_t w = 0;
    auto a1 = args.substr(0, comma);
    auto a2 = args.substr(comma + 1);
    auto r1 = std::from_chars(a1.data(), a1.data() + a1.size(), n);
    auto r2 = std::from_chars(a2.data(), a2.data() + a2.size(), w);
    if (r1.ec != std::errc() || r1.ptr != a1.data() + a1.size()) return std::nullopt;
    if (r2.ec != std::errc() || r2.ptr != a2.data() + a2.size()) return std::nullopt;
    return cycle(n, w);
  }
  return std::nullopt;
}

}  // namespace qg::fixtures
