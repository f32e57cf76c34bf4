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

#include "qg/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>
#include <vector>

namespace qg {

namespace {

std::vector<std::string> tokens(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++lineno;
    auto toks = tokens(line);
    if (!toks.empty()) fn(toks, lineno);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

int64_t parse_int(const std::string& s, int line, const char* what) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ArenaError(std::string("bad ") + what + " '" + s + "'", line);
  }
  return v;
}

Player parse_player(const std::string& s, int line) {
  if (s == "p0") return Player::P0;
  if (s == "p1") return Player::P1;
  throw ArenaError("expected p0 or p1, got '" + s + "'", line);
}

void arity(const std::vector<std::string>& t, size_t n, int line) {
  if (t.size() != n) throw ArenaError("'" + t[0] + "' expects " + std::to_string(n - 1) + " arguments", line);
}

VertexId lookup(const Arena& a, const std::string& name, int line) {
  auto v = a.find_vertex(name);
  if (!v) throw ArenaError("unknown vertex '" + name + "'", line);
  return *v;
}

template <typename Fn>
auto at_line(int line, Fn&& fn) {
  try {
    return fn();
  } catch (const ArenaError& e) {
    if (e.line()) throw;
    throw ArenaError(e.what(), line);
  }
}

}  // namespace

Arena parse_arena(std::string_view text) {
  ArenaBuilder b;
  bool header = false;
  bool skipping = false;
  std::optional<std::pair<std::string, int>> init;
  struct PendingEdge {
    std::string src, dst;
    WeightLabel w;
    int line;
  };
  std::vector<PendingEdge> edges;
  for_each_line(text, [&](const std::vector<std::string>& t, int line) {
    const auto& kw = t[0];
    if (!header) {
      if (kw != "arena") throw ArenaError("expected 'arena' header", line);
      arity(t, 1, line);
      header = true;
      return;
    }
    if (kw == "backmap") skipping = true;
    if (skipping || kw == "map" || kw == "color") return;
    if (kw == "vertex") {
      arity(t, 3, line);
      Player p = parse_player(t[2], line);
      at_line(line, [&] { return b.add_vertex(t[1], p); });
    } else if (kw == "init") {
      arity(t, 2, line);
      if (init) throw ArenaError("duplicate init declaration", line);
      init.emplace(t[1], line);
    } else if (kw == "edge") {
      arity(t, 4, line);
      auto w = t[3] == "R" ? WeightLabel::recharge() : WeightLabel::integer(parse_int(t[3], line, "weight"));
      edges.push_back({t[1], t[2], w, line});
    } else {
      throw ArenaError("unknown directive '" + kw + "'", line);
    }
  });
  if (!header) throw ArenaError("expected 'arena' header", 1);
  for (const auto& e : edges) at_line(e.line, [&] { return b.add_edge(e.src, e.dst, e.w); });
  if (!init) throw ArenaError("missing initial declaration");
  auto iv = b.find_vertex(init->first);
  if (!iv) throw ArenaError("unknown initial vertex '" + init->first + "'", init->second);
  b.set_initial(*iv);
  return std::move(b).build();
}

std::string serialize_arena(const Arena& a) {
  std::ostringstream os;
  os << "arena\n";
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    os << "vertex " << a.name(v) << (a.owner(v) == Player::P0 ? " p0\n" : " p1\n");
  }
  os << "init " << a.name(a.initial()) << "\n";
  for (const auto& e : a.edges()) os << "edge " << a.name(e.src) << " " << a.name(e.dst) << " " << e.weight.str() << "\n";
  return os.str();
}

Coloring parse_coloring(const Arena& a, std::string_view text) {
  Coloring c{std::vector<int>(a.num_vertices(), -1)};
  for_each_line(text, [&](const std::vector<std::string>& t, int line) {
    if (t[0] != "color") return;
    arity(t, 3, line);
    VertexId v = lookup(a, t[1], line);
    int64_t col = parse_int(t[2], line, "color");
    if (col < 0 || col > 2) throw ArenaError("color must be 0, 1 or 2", line);
    if (c.color[v] != -1) throw ArenaError("duplicate color for '" + t[1] + "'", line);
    c.color[v] = static_cast<int>(col);
  });
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (c.color[v] == -1) throw ArenaError("no color for vertex '" + a.name(v) + "'");
  }
  return c;
}

std::string serialize_coloring(const Arena& a, const Coloring& c) {
  std::ostringstream os;
  for (VertexId v = 0; v < a.num_vertices(); ++v) os << "color " << a.name(v) << " " << c[v] << "\n";
  return os.str();
}

FiniteStateStrategy parse_strategy(const Arena& a, std::string_view text) {
  bool header = false;
  std::optional<Player> player;
  std::optional<size_t> k;
  MemState init = 0;
  struct Upd {
    MemState s;
    EdgeId e;
    MemState t;
    int line;
  };
  struct Move {
    VertexId v;
    MemState s;
    VertexId to;
    int line;
  };
  std::vector<Upd> upds;
  std::vector<Move> moves;
  auto state = [&](const std::string& tok, int line) {
    int64_t s = parse_int(tok, line, "memory state");
    if (!k) throw ArenaError("'memory' must precede states", line);
    if (s < 0 || static_cast<size_t>(s) >= *k) throw ArenaError("memory state out of range", line);
    return static_cast<MemState>(s);
  };
  for_each_line(text, [&](const std::vector<std::string>& t, int line) {
    const auto& kw = t[0];
    if (!header) {
      if (kw != "strategy") throw ArenaError("expected 'strategy' header", line);
      arity(t, 1, line);
      header = true;
    } else if (kw == "player") {
      arity(t, 2, line);
      player = parse_player(t[1], line);
    } else if (kw == "memory") {
      arity(t, 2, line);
      int64_t n = parse_int(t[1], line, "memory size");
      if (n < 1) throw ArenaError("memory size must be positive", line);
      k = static_cast<size_t>(n);
    } else if (kw == "initmem") {
      arity(t, 2, line);
      init = state(t[1], line);
    } else if (kw == "upd") {
      arity(t, 5, line);
      VertexId src = lookup(a, t[2], line);
      VertexId dst = lookup(a, t[3], line);
      auto e = a.find_edge(src, dst);
      if (!e) throw ArenaError("'" + t[2] + " -> " + t[3] + "' is not an edge", line);
      upds.push_back({state(t[1], line), *e, state(t[4], line), line});
    } else if (kw == "move") {
      arity(t, 4, line);
      moves.push_back({lookup(a, t[1], line), state(t[2], line), lookup(a, t[3], line), line});
    } else {
      throw ArenaError("unknown directive '" + kw + "'", line);
    }
  });
  if (!header) throw ArenaError("expected 'strategy' header", 1);
  if (!k) throw ArenaError("missing 'memory' declaration");
  if (!player) player = moves.empty() ? Player::P0 : a.owner(moves.front().v);
  std::vector<MemState> table(*k * a.num_edges());
  for (MemState s = 0; s < *k; ++s) {
    for (EdgeId e = 0; e < a.num_edges(); ++e) table[s * a.num_edges() + e] = s;
  }
  for (const auto& u : upds) table[u.s * a.num_edges() + u.e] = u.t;
  std::vector<VertexId> next(a.num_vertices() * *k, kNoVertex);
  for (const auto& m : moves) {
    if (a.owner(m.v) != *player) throw ArenaError("move at '" + a.name(m.v) + "' which the strategy's player does not own", m.line);
    if (!a.find_edge(m.v, m.to)) throw ArenaError("move '" + a.name(m.v) + " -> " + a.name(m.to) + "' is not an edge", m.line);
    next[m.v * *k + m.s] = m.to;
  }
  FiniteStateStrategy s(*player, MemoryStructure(*k, init, a.num_edges(), std::move(table)), std::move(next));
  s.validate(a);
  return s;
}

std::string serialize_strategy(const Arena& a, const FiniteStateStrategy& s) {
  std::ostringstream os;
  const auto& m = s.memory();
  os << "strategy\n";
  os << "player " << (s.player() == Player::P0 ? "p0" : "p1") << "\n";
  os << "memory " << m.num_states() << "\n";
  os << "initmem " << m.initial() << "\n";
  for (MemState st = 0; st < m.num_states(); ++st) {
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
      MemState to = m.update(st, e);
      if (to == st) continue;
      os << "upd " << st << " " << a.name(a.edge(e).src) << " " << a.name(a.edge(e).dst) << " " << to << "\n";
    }
  }
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) != s.player()) continue;
    for (MemState st = 0; st < m.num_states(); ++st) {
      os << "move " << a.name(v) << " " << st << " " << a.name(s.next_move(v, st)) << "\n";
    }
  }
  return os.str();
}

std::string serialize_backmap(const Arena& base, const ProductArena& p, const StateNamer& namer) {
  std::ostringstream os;
  os << "backmap\n";
  for (VertexId v = 0; v < p.origin.size(); ++v) {
    auto [orig, s] = p.origin[v];
    os << "map " << p.arena.name(v) << " ";
    if (orig == kNoVertex) {
      os << "- -\n";
      continue;
    }
    os << base.name(orig) << " " << (namer ? namer(s) : std::to_string(s)) << "\n";
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace qg
