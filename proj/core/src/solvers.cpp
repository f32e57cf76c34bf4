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

#include "qg/solvers.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qg/evaluation.hpp"

namespace qg {

namespace {

constexpr int64_t kTop = std::numeric_limits<int64_t>::max();

VertexId first_successor(const Arena& a, VertexId v) { return a.edge(a.out_edges(v).front()).dst; }

VertexId first_successor_in(const Arena& a, VertexId v, const VertexSet& set) {
  for (EdgeId e : a.out_edges(v)) {
    if (set[a.edge(e).dst]) return a.edge(e).dst;
  }
  return kNoVertex;
}

// Completes `choice` with first successors so that it is total on `p`'s vertices.
void complete(const Arena& a, Player p, Choice& choice) {
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) != p) choice[v] = kNoVertex;
    else if (choice[v] == kNoVertex) choice[v] = first_successor(a, v);
  }
}

std::string region_text(const Arena& a, const VertexSet& region0) {
  std::ostringstream os;
  for (int side = 0; side < 2; ++side) {
    os << "region" << side << ":";
    for (VertexId v = 0; v < a.num_vertices(); ++v) {
      if (region0[v] == (side == 0)) os << " " << a.name(v);
    }
    os << "\n";
  }
  return os.str();
}

struct Regions {
  VertexSet win[2];
};

Regions zielonka(const Arena& a, const Coloring& c, const VertexSet& mask, Choice* strat) {
  size_t n = a.num_vertices();
  Regions r{{VertexSet(n, false), VertexSet(n, false)}};
  int top = -1;
  for (VertexId v = 0; v < n; ++v) {
    if (mask[v]) top = std::max(top, c[v]);
  }
  if (top < 0) return r;
  const Player p = top % 2 == 0 ? Player::P0 : Player::P1;
  const int ip = index(p), io = 1 - ip;

  VertexSet target(n, false);
  for (VertexId v = 0; v < n; ++v) target[v] = mask[v] && c[v] == top;
  Choice attr_moves(n, kNoVertex);
  VertexSet attr = attractor(a, p, target, &attr_moves, &mask);
  VertexSet rest(n, false);
  for (VertexId v = 0; v < n; ++v) rest[v] = mask[v] && !attr[v];
  Regions sub = zielonka(a, c, rest, strat);

  bool opp_empty = std::none_of(sub.win[io].begin(), sub.win[io].end(), [](bool b) { return b; });
  if (opp_empty) {
    for (VertexId v = 0; v < n; ++v) {
      if (!mask[v]) continue;
      r.win[ip][v] = true;
      if (attr[v] && a.owner(v) == p) {
        strat[ip][v] = target[v] ? first_successor_in(a, v, mask) : attr_moves[v];
      }
    }
    return r;
  }

  Choice opp_moves(n, kNoVertex);
  VertexSet b = attractor(a, opponent(p), sub.win[io], &opp_moves, &mask);
  for (VertexId v = 0; v < n; ++v) {
    if (b[v] && !sub.win[io][v] && a.owner(v) == opponent(p)) strat[io][v] = opp_moves[v];
  }
  VertexSet rest2(n, false);
  for (VertexId v = 0; v < n; ++v) rest2[v] = mask[v] && !b[v];
  Regions sub2 = zielonka(a, c, rest2, strat);
  for (VertexId v = 0; v < n; ++v) {
    r.win[ip][v] = sub2.win[ip][v];
    r.win[io][v] = sub2.win[io][v] || b[v];
  }
  return r;
}

int64_t lift_minus(int64_t f, int64_t w, int64_t bound) {
  if (f == kTop) return kTop;
  int64_t r = checked::sub(f, w);
  if (r < 0) return 0;
  return r > bound ? kTop : r;
}

// The least fraction above t whose denominator is at most n.
Rational next_fraction(const Rational& t, int64_t n) {
  std::optional<Rational> best;
  for (int64_t d = 1; d <= n; ++d) {
    Rational cand(checked::add((t * d).floor(), 1), d);
    if (!best || cand < *best) best = cand;
  }
  return *best;
}

// The greatest fraction at most x whose denominator is at most n.
Rational snap_down(const Rational& x, int64_t n) {
  std::optional<Rational> best;
  for (int64_t d = 1; d <= n; ++d) {
    Rational cand((x * d).floor(), d);
    if (!best || cand > *best) best = cand;
  }
  return *best;
}

std::vector<int64_t> shifted_weights(const Arena& a, int64_t scale, int64_t offset, int64_t sign) {
  // sign * (offset - scale * w)
  std::vector<int64_t> out(a.num_edges());
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    int64_t v = checked::sub(offset, checked::mul(scale, a.edge(e).weight.value()));
    out[e] = sign > 0 ? v : checked::sub(0, v);
  }
  return out;
}

VertexSet finite_credit(const EnergyMeasure& m) {
  VertexSet out(m.credit.size());
  for (size_t v = 0; v < m.credit.size(); ++v) out[v] = m.credit[v].has_value();
  return out;
}

std::string measure_text(const Arena& a, const EnergyMeasure& m, const std::string& title) {
  std::ostringstream os;
  os << title << "\n";
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    os << "measure " << a.name(v) << " ";
    if (m.credit[v]) os << *m.credit[v];
    else os << "TOP";
    os << "\n";
  }
  return os.str();
}

SolveResult safety_result(const Arena& a, const EnergyMemory& m, const char* title) {
  EnergySafety es = solve_energy_safety(a, m);
  SolveResult r;
  r.winner = es.safe[es.product.arena.initial()] ? Player::P0 : Player::P1;
  const Choice& ch = r.winner == Player::P0 ? es.choice0 : es.choice1;
  r.strategy = pull_back(a, m.memory(), es.product, r.winner, ch);
  r.certificate = std::string(title) + " cap=" + std::to_string(m.cap()) + " product-vertices=" +
                  std::to_string(es.product.arena.num_vertices()) + "\n" + region_text(es.product.arena, es.safe);
  r.region0 = std::move(es.safe);
  return r;
}

}  // namespace

VertexSet attractor(const Arena& a, Player p, const VertexSet& target, Choice* moves, const VertexSet* within) {
  size_t n = a.num_vertices();
  auto inside = [&](VertexId v) { return !within || (*within)[v]; };
  VertexSet attr(n, false);
  std::vector<size_t> remaining(n, 0);
  std::deque<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    if (!inside(v)) continue;
    for (EdgeId e : a.out_edges(v)) remaining[v] += inside(a.edge(e).dst) ? 1 : 0;
    if (target[v]) {
      attr[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (EdgeId e : a.in_edges(u)) {
      VertexId v = a.edge(e).src;
      if (!inside(v) || attr[v]) continue;
      if (a.owner(v) == p) {
        attr[v] = true;
        if (moves) (*moves)[v] = u;
        queue.push_back(v);
      } else if (--remaining[v] == 0) {
        attr[v] = true;
        queue.push_back(v);
      }
    }
  }
  return attr;
}

ParitySolution solve_parity(const Arena& a, const Coloring& c) {
  if (c.color.size() != a.num_vertices()) throw ArenaError("coloring is not total on the arena's vertices");
  size_t n = a.num_vertices();
  Choice strat[2] = {Choice(n, kNoVertex), Choice(n, kNoVertex)};
  Regions r = zielonka(a, c, VertexSet(n, true), strat);
  complete(a, Player::P0, strat[0]);
  complete(a, Player::P1, strat[1]);
  return ParitySolution{r.win[0], std::move(strat[0]), std::move(strat[1])};
}

SolveResult solve_parity3(const Arena& a, const Coloring& c) {
  if (c.color.size() != a.num_vertices()) throw ArenaError("coloring is not total on the arena's vertices");
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (c[v] < 0 || c[v] > 2) throw ArenaError("color of '" + a.name(v) + "' is not 0, 1 or 2");
  }
  ParitySolution s = solve_parity(a, c);
  SolveResult r;
  r.winner = s.region0[a.initial()] ? Player::P0 : Player::P1;
  r.strategy = FiniteStateStrategy::positional(a, r.winner, r.winner == Player::P0 ? s.strategy0 : s.strategy1);
  r.certificate = "parity3\n" + region_text(a, s.region0);
  r.region0 = std::move(s.region0);
  return r;
}

EnergyMeasure energy_progress_measure(const Arena& a, const std::vector<int64_t>& w, Player ep) {
  size_t n = a.num_vertices();
  int64_t bound = 0;
  for (VertexId v = 0; v < n; ++v) {
    int64_t worst = 0;
    for (EdgeId e : a.out_edges(v)) worst = std::max(worst, checked::sub(0, w[e]));
    bound = checked::add(bound, worst);
  }
  std::vector<int64_t> f(n, 0);
  auto lift = [&](VertexId v) {
    bool mine = a.owner(v) == ep;
    int64_t best = mine ? kTop : 0;
    for (EdgeId e : a.out_edges(v)) {
      int64_t val = lift_minus(f[a.edge(e).dst], w[e], bound);
      best = mine ? std::min(best, val) : std::max(best, val);
    }
    return best;
  };
  std::deque<VertexId> work;
  std::vector<bool> queued(n, true);
  for (VertexId v = 0; v < n; ++v) work.push_back(v);
  while (!work.empty()) {
    VertexId v = work.front();
    work.pop_front();
    queued[v] = false;
    int64_t nv = lift(v);
    if (nv <= f[v]) continue;
    f[v] = nv;
    for (EdgeId e : a.in_edges(v)) {
      VertexId u = a.edge(e).src;
      if (!queued[u] && f[u] != kTop) {
        queued[u] = true;
        work.push_back(u);
      }
    }
  }
  EnergyMeasure m{std::vector<std::optional<int64_t>>(n), Choice(n, kNoVertex)};
  for (VertexId v = 0; v < n; ++v) {
    if (f[v] != kTop) m.credit[v] = f[v];
    if (a.owner(v) != ep) continue;
    m.choice[v] = first_successor(a, v);
    if (f[v] == kTop) continue;
    for (EdgeId e : a.out_edges(v)) {
      if (lift_minus(f[a.edge(e).dst], w[e], bound) <= f[v]) {
        m.choice[v] = a.edge(e).dst;
        break;
      }
    }
  }
  return m;
}

VertexSet mean_payoff_region(const Arena& a, const Rational& t) {
  a.require_integer_weights("mean-payoff game");
  return finite_credit(energy_progress_measure(a, shifted_weights(a, t.den(), t.num(), 1), Player::P0));
}

SolveResult solve_mean_payoff_threshold(const Arena& a, const Rational& t) {
  a.require_integer_weights("mean-payoff game");
  EnergyMeasure m0 = energy_progress_measure(a, shifted_weights(a, t.den(), t.num(), 1), Player::P0);
  SolveResult r;
  r.region0 = finite_credit(m0);
  r.certificate = measure_text(a, m0, "progress-measure t=" + t.str());
  if (r.region0[a.initial()]) {
    r.winner = Player::P0;
    r.strategy = FiniteStateStrategy::positional(a, Player::P0, m0.choice);
    return r;
  }
  // Values have denominators at most |V|, so losing at t means the value reaches t+.
  Rational up = next_fraction(t, static_cast<int64_t>(a.num_vertices()));
  EnergyMeasure m1 = energy_progress_measure(a, shifted_weights(a, up.den(), up.num(), -1), Player::P1);
  if (!m1.credit[a.initial()]) throw std::logic_error("mean-payoff determinacy check failed at t=" + t.str());
  r.winner = Player::P1;
  r.strategy = FiniteStateStrategy::positional(a, Player::P1, m1.choice);
  r.certificate += measure_text(a, m1, "dual-progress-measure t=" + up.str());
  return r;
}

Rational mean_payoff_value(const Arena& a, VertexId v) {
  a.require_integer_weights("mean-payoff game");
  auto n = static_cast<int64_t>(a.num_vertices());
  int64_t w = max_abs_weight(a);
  Rational lo = -w - 1;
  Rational hi = w;
  Rational gap(1, checked::mul(n, n));
  while (hi - lo >= gap) {
    Rational mid = (lo + hi) / 2;
    Rational probe = snap_down(mid, n);
    if (probe <= lo) {
      lo = mid;
    } else if (mean_payoff_region(a, probe)[v]) {
      hi = probe;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<Rational> mean_payoff_values(const Arena& a) {
  a.require_integer_weights("mean-payoff game");
  const size_t nv = a.num_vertices();
  auto n = static_cast<int64_t>(nv);
  int64_t w = max_abs_weight(a);
  std::vector<Rational> lo(nv, Rational(-w - 1)), hi(nv, Rational(w));
  Rational gap(1, checked::mul(n, n));
  // Vertices sharing a search interval share each probe.
  for (;;) {
    std::map<std::pair<Rational, Rational>, std::vector<VertexId>> open;
    for (VertexId v = 0; v < nv; ++v) {
      if (hi[v] - lo[v] >= gap) open[{lo[v], hi[v]}].push_back(v);
    }
    if (open.empty()) return hi;
    for (auto& [range, members] : open) {
      Rational mid = (range.first + range.second) / 2;
      Rational probe = snap_down(mid, n);
      if (probe <= range.first) {
        for (VertexId v : members) lo[v] = mid;
        continue;
      }
      VertexSet region = mean_payoff_region(a, probe);
      for (VertexId v : members) {
        if (region[v]) {
          hi[v] = probe;
        } else {
          lo[v] = mid;
        }
      }
    }
  }
}

SolveResult solve_energy_l(const Arena& a) {
  a.require_integer_weights("Energy_L");
  std::vector<int64_t> w(a.num_edges());
  for (EdgeId e = 0; e < a.num_edges(); ++e) w[e] = a.edge(e).weight.value();
  EnergyMeasure m = energy_progress_measure(a, w, Player::P0);
  SolveResult r;
  r.region0.assign(a.num_vertices(), false);
  for (VertexId v = 0; v < a.num_vertices(); ++v) r.region0[v] = m.credit[v] == int64_t{0};
  r.winner = r.region0[a.initial()] ? Player::P0 : Player::P1;
  if (r.winner == Player::P0) r.strategy = FiniteStateStrategy::positional(a, Player::P0, m.choice);
  r.certificate = measure_text(a, m, "minimal-credit");
  return r;
}

EnergySafety solve_energy_safety(const Arena& a, const EnergyMemory& m) {
  EnergySafety es{product(a, m.memory(), keep_weights(a), m.namer()), {}, {}, {}};
  const Arena& p = es.product.arena;
  size_t n = p.num_vertices();
  VertexSet bad(n, false);
  for (VertexId v = 0; v < n; ++v) bad[v] = m.is_bottom(es.product.origin[v].second);
  es.choice1.assign(n, kNoVertex);
  VertexSet lost = attractor(p, Player::P1, bad, &es.choice1);
  es.safe.assign(n, false);
  for (VertexId v = 0; v < n; ++v) es.safe[v] = !lost[v];
  es.choice0.assign(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    if (es.safe[v] && p.owner(v) == Player::P0) es.choice0[v] = first_successor_in(p, v, es.safe);
  }
  complete(p, Player::P0, es.choice0);
  complete(p, Player::P1, es.choice1);
  return es;
}

SolveResult solve_energy_lu(const Arena& a, int64_t cap) {
  return safety_result(a, EnergyMemory(a, cap, EnergyMemory::Mode::LowerUpper), "energy-lu");
}

SolveResult solve_recharge(const Arena& a, int64_t cap) {
  return safety_result(a, EnergyMemory(a, cap, EnergyMemory::Mode::Recharge), "recharge");
}

void check_countdown_shape(const Arena& a) {
  a.require_integer_weights("countdown game");
  auto sink = countdown_sink(a);
  auto edge_name = [&](const Edge& e) { return a.name(e.src) + " -> " + a.name(e.dst); };
  if (!sink) throw ArenaError("countdown rule 1: no unique Player1 sink vertex with only a self loop");
  if (a.owner(a.initial()) != Player::P0) throw ArenaError("countdown rule 1: initial vertex is not a Player0 vertex");
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) == Player::P0 && !a.find_edge(v, *sink)) {
      throw ArenaError("countdown rule 2: '" + a.name(v) + "' has no edge to the sink");
    }
  }
  std::unordered_map<VertexId, std::vector<int64_t>> seen;
  for (const Edge& e : a.edges()) {
    bool src0 = a.owner(e.src) == Player::P0;
    bool dst0 = a.owner(e.dst) == Player::P0;
    int64_t w = e.weight.value();
    if (e.src == *sink) continue;
    if (e.dst == *sink) {
      if (!src0) throw ArenaError("countdown rule 2: Player1 edge into the sink " + edge_name(e));
      if (w != 0) throw ArenaError("countdown rule 4: edge " + edge_name(e) + " must weigh 0");
    } else if (src0 && !dst0) {
      if (w >= 0) throw ArenaError("countdown rule 3: edge " + edge_name(e) + " must have negative weight");
      auto& ws = seen[e.src];
      if (std::find(ws.begin(), ws.end(), w) != ws.end()) {
        throw ArenaError("countdown rule 3: two edges from '" + a.name(e.src) + "' weigh " + std::to_string(w));
      }
      ws.push_back(w);
    } else if (!src0 && dst0) {
      if (w != 0) throw ArenaError("countdown rule 4: edge " + edge_name(e) + " must weigh 0");
    } else {
      throw ArenaError("countdown rule 2: edge " + edge_name(e) + " connects two vertices of the same player");
    }
  }
}

SolveResult solve_countdown(const Arena& a, CountdownBudget budget) {
  check_countdown_shape(a);
  if (budget.c < 0) throw ArenaError("countdown budget must be non-negative");
  const VertexId sink = *countdown_sink(a);
  const auto n = static_cast<uint64_t>(a.num_vertices());
  auto key = [&](VertexId v, int64_t r) { return static_cast<uint64_t>(r) * n + v; };
  if (static_cast<uint64_t>(budget.c) > (std::numeric_limits<uint64_t>::max() - n) / n) {
    throw ArenaError("countdown budget too large");
  }
  struct Entry {
    bool win;
    VertexId choice;
  };
  std::unordered_map<uint64_t, Entry> table;
  struct Frame {
    VertexId v;
    int64_t r;
    size_t next;
  };
  auto base = [&](VertexId v, int64_t r) -> std::optional<bool> {
    if (v == sink) return r == 0;
    if (r < 0) return false;
    return std::nullopt;
  };
  auto child = [&](VertexId v, int64_t r, size_t i) {
    const Edge& e = a.edge(a.out_edges(v)[i]);
    return std::pair{e.dst, r + e.weight.value()};
  };
  auto lookup = [&](VertexId v, int64_t r) -> std::optional<bool> {
    if (auto b = base(v, r)) return b;
    auto it = table.find(key(v, r));
    if (it == table.end()) return std::nullopt;
    return it->second.win;
  };
  std::vector<Frame> stack;
  if (!base(a.initial(), budget.c)) stack.push_back({a.initial(), budget.c, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    bool mine = a.owner(f.v) == Player::P0;
    auto out = a.out_edges(f.v);
    std::optional<Entry> done;
    while (f.next < out.size()) {
      auto [u, ru] = child(f.v, f.r, f.next);
      auto res = lookup(u, ru);
      if (!res) break;
      if (*res == mine) {
        done = Entry{mine, u};
        break;
      }
      ++f.next;
    }
    if (!done && f.next == out.size()) {
      done = Entry{!mine, first_successor(a, f.v)};
    }
    if (done) {
      table.emplace(key(f.v, f.r), *done);
      stack.pop_back();
      continue;
    }
    auto [u, ru] = child(f.v, f.r, f.next);
    stack.push_back({u, ru, 0});
  }

  SolveResult r;
  r.winner = lookup(a.initial(), budget.c).value() ? Player::P0 : Player::P1;
  // Memory: remaining budget 0..c, and c+1 once the budget is overdrawn.
  const auto c = static_cast<MemState>(budget.c);
  const MemState dead = c + 1;
  if (static_cast<uint64_t>(budget.c) + 2 <= kMaxMemoryTable &&
      (static_cast<size_t>(budget.c) + 2) * a.num_edges() <= kMaxMemoryTable) {
    auto mem = MemoryStructure::from_function(a, static_cast<size_t>(dead) + 1, c, [&](MemState s, EdgeId e) {
      if (s == dead) return dead;
      int64_t next = static_cast<int64_t>(s) + a.edge(e).weight.value();
      return next < 0 ? dead : static_cast<MemState>(next);
    });
    size_t k = mem.num_states();
    std::vector<VertexId> next(a.num_vertices() * k, kNoVertex);
    for (VertexId v = 0; v < a.num_vertices(); ++v) {
      if (a.owner(v) != r.winner) continue;
      for (MemState s = 0; s < k; ++s) next[v * k + s] = first_successor(a, v);
    }
    for (const auto& [kk, entry] : table) {
      auto v = static_cast<VertexId>(kk % n);
      auto s = static_cast<MemState>(kk / n);
      if (a.owner(v) == r.winner) next[v * k + s] = entry.choice;
    }
    r.strategy = FiniteStateStrategy(r.winner, std::move(mem), std::move(next));
  }
  std::vector<std::pair<uint64_t, bool>> rows;
  rows.reserve(table.size());
  for (const auto& [kk, entry] : table) rows.emplace_back(kk, entry.win);
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  os << "countdown-table budget=" << budget.c << " states=" << rows.size() << "\n";
  for (const auto& [kk, win] : rows) {
    os << "state " << a.name(static_cast<VertexId>(kk % n)) << " " << kk / n << " " << (win ? "win" : "lose") << "\n";
  }
  r.certificate = os.str();
  r.region0.assign(a.num_vertices(), false);
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    auto res = lookup(v, budget.c);
    r.region0[v] = res.value_or(false);
  }
  return r;
}

}  // namespace qg
