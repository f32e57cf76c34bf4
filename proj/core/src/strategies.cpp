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

#include "qg/strategies.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace qg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int64_t kNeg = std::numeric_limits<int64_t>::min();
constexpr size_t kMaxTrackedNodes = size_t{1} << 24;

// ---------------------------------------------------------------------------
// Graph algorithms

std::vector<std::vector<uint32_t>> strongly_connected(const WeightedGraph& g) {
  const auto n = static_cast<uint32_t>(g.size());
  constexpr uint32_t kUnseen = std::numeric_limits<uint32_t>::max();
  std::vector<uint32_t> idx(n, kUnseen), low(n, 0);
  std::vector<bool> on(n, false);
  std::vector<uint32_t> stack;
  std::vector<std::vector<uint32_t>> out;
  uint32_t counter = 0;
  struct Frame {
    uint32_t v;
    size_t next;
  };
  std::vector<Frame> call;
  for (uint32_t root = 0; root < n; ++root) {
    if (idx[root] != kUnseen) continue;
    call.push_back({root, 0});
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < g[f.v].size()) {
        uint32_t u = g[f.v][f.next++].first;
        if (idx[u] == kUnseen) {
          idx[u] = low[u] = counter++;
          stack.push_back(u);
          on[u] = true;
          call.push_back({u, 0});
        } else if (on[u]) {
          low[f.v] = std::min(low[f.v], idx[u]);
        }
        continue;
      }
      uint32_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == idx[v]) {
        std::vector<uint32_t> comp;
        uint32_t u;
        do {
          u = stack.back();
          stack.pop_back();
          on[u] = false;
          comp.push_back(u);
        } while (u != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

bool has_cycle(const WeightedGraph& g, const std::vector<uint32_t>& comp) {
  if (comp.size() > 1) return true;
  uint32_t v = comp[0];
  return std::any_of(g[v].begin(), g[v].end(), [v](const auto& e) { return e.first == v; });
}

// Karp's maximum cycle mean on one strongly connected component. Two passes keep
// the memory linear in the component size.
Rational karp(const WeightedGraph& g, const std::vector<uint32_t>& comp, const std::vector<int32_t>& local) {
  const size_t s = comp.size();
  auto sweep = [&](std::vector<int64_t>& cur) {
    std::vector<int64_t> next(s, kNeg);
    for (size_t i = 0; i < s; ++i) {
      if (cur[i] == kNeg) continue;
      for (const auto& [u, w] : g[comp[i]]) {
        int32_t j = local[u];
        if (j < 0) continue;
        next[j] = std::max(next[j], checked::add(cur[i], w));
      }
    }
    cur.swap(next);
  };
  std::vector<int64_t> d(s, kNeg);
  d[0] = 0;
  for (size_t k = 0; k < s; ++k) sweep(d);
  const std::vector<int64_t> last = d;
  std::vector<std::optional<Rational>> worst(s);
  std::fill(d.begin(), d.end(), kNeg);
  d[0] = 0;
  for (size_t k = 0; k < s; ++k) {
    for (size_t v = 0; v < s; ++v) {
      if (last[v] == kNeg || d[v] == kNeg) continue;
      Rational cand(checked::sub(last[v], d[v]), static_cast<int64_t>(s - k));
      if (!worst[v] || cand < *worst[v]) worst[v] = cand;
    }
    sweep(d);
  }
  std::optional<Rational> best;
  for (size_t v = 0; v < s; ++v) {
    if (worst[v] && (!best || *worst[v] > *best)) best = worst[v];
  }
  return *best;
}

// A cycle of mean exactly `mean` inside `comp`, found among the edges that are tight
// for a longest-path potential of the weights q*w - p.
std::vector<uint32_t> critical_cycle(const WeightedGraph& g, const std::vector<uint32_t>& comp,
                                     const std::vector<int32_t>& local, const Rational& mean) {
  const size_t s = comp.size();
  auto shifted = [&](int64_t w) { return checked::sub(checked::mul(mean.den(), w), mean.num()); };
  std::vector<int64_t> pi(s, 0);
  std::deque<size_t> work;
  std::vector<bool> queued(s, true);
  for (size_t i = 0; i < s; ++i) work.push_back(i);
  size_t edges = 0;
  for (uint32_t v : comp) edges += g[v].size();
  uint64_t budget = static_cast<uint64_t>(s + 1) * (edges + 1);
  while (!work.empty()) {
    if (budget-- == 0) throw std::logic_error("positive cycle above the computed maximum mean");
    size_t i = work.front();
    work.pop_front();
    queued[i] = false;
    for (const auto& [u, w] : g[comp[i]]) {
      int32_t j = local[u];
      if (j < 0) continue;
      int64_t cand = checked::add(pi[i], shifted(w));
      if (cand > pi[j]) {
        pi[j] = cand;
        if (!queued[j]) {
          queued[j] = true;
          work.push_back(static_cast<size_t>(j));
        }
      }
    }
  }
  // Depth-first search for a cycle of tight edges.
  std::vector<uint8_t> color(s, 0);
  std::vector<size_t> parent(s, 0);
  for (size_t root = 0; root < s; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<size_t, size_t>> call{{root, 0}};
    color[root] = 1;
    while (!call.empty()) {
      auto& [i, next] = call.back();
      const auto& succ = g[comp[i]];
      if (next == succ.size()) {
        color[i] = 2;
        call.pop_back();
        continue;
      }
      const auto& [u, w] = succ[next++];
      int32_t j = local[u];
      if (j < 0 || checked::add(pi[i], shifted(w)) != pi[j]) continue;
      auto ju = static_cast<size_t>(j);
      if (color[ju] == 1) {
        std::vector<uint32_t> cyc{comp[i]};
        for (size_t x = i; x != ju;) {
          x = parent[x];
          cyc.push_back(comp[x]);
        }
        std::reverse(cyc.begin(), cyc.end());
        return cyc;
      }
      if (color[ju] == 0) {
        color[ju] = 1;
        parent[ju] = i;
        call.emplace_back(ju, 0);
      }
    }
  }
  throw std::logic_error("no critical cycle in the tight subgraph");
}

// ---------------------------------------------------------------------------
// The product of the arena with the strategy, extended by a tracked quantity.

enum class Step { Ok, Violation, Exceed, Drop };

struct StepResult {
  Step kind;
  int64_t x;
};

struct NodeKey {
  VertexId v;
  MemState m;
  int64_t x;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
  size_t operator()(const NodeKey& k) const {
    uint64_t h = k.v * 0x9E3779B97F4A7C15ULL;
    h ^= (static_cast<uint64_t>(k.m) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
    h ^= (static_cast<uint64_t>(k.x) + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2));
    return static_cast<size_t>(h);
  }
};

struct Event {
  Step kind;
  uint32_t from;
  VertexId to;
};

struct Tracked {
  std::vector<NodeKey> node;
  std::vector<uint32_t> parent;
  WeightedGraph succ;
  std::vector<bool> terminal;
  std::optional<Event> event;
};

struct TrackerSpec {
  int64_t x0 = 0;
  std::function<StepResult(int64_t x, const Edge& e)> step;
  std::function<int64_t(int64_t x, const Edge& e)> weight;
  std::function<bool(VertexId v, int64_t x)> terminal;  // no successors explored
  bool stop_on_event = true;
};

template <typename Fn>
void strategy_successors(const Arena& a, const FiniteStateStrategy& s, VertexId v, MemState m, Fn&& fn) {
  if (a.owner(v) == s.player()) {
    VertexId to = s.next_move(v, m);
    fn(*a.find_edge(v, to));
  } else {
    for (EdgeId e : a.out_edges(v)) fn(e);
  }
}

Tracked explore(const Arena& a, const FiniteStateStrategy& s, const TrackerSpec& spec) {
  Tracked t;
  std::unordered_map<NodeKey, uint32_t, NodeKeyHash> ids;
  auto intern = [&](NodeKey k, uint32_t parent) {
    auto [it, fresh] = ids.emplace(k, static_cast<uint32_t>(t.node.size()));
    if (fresh) {
      if (t.node.size() >= kMaxTrackedNodes) throw std::runtime_error("strategy product too large to verify");
      t.node.push_back(k);
      t.parent.push_back(parent);
      t.succ.emplace_back();
      t.terminal.push_back(spec.terminal && spec.terminal(k.v, k.x));
    }
    return it->second;
  };
  intern({a.initial(), s.memory().initial(), spec.x0}, 0);
  for (uint32_t i = 0; i < t.node.size(); ++i) {
    if (t.terminal[i]) continue;
    const NodeKey cur = t.node[i];
    bool stop = false;
    strategy_successors(a, s, cur.v, cur.m, [&](EdgeId e) {
      if (stop) return;
      const Edge& edge = a.edge(e);
      StepResult r = spec.step(cur.x, edge);
      if (r.kind == Step::Drop) return;
      if (r.kind != Step::Ok) {
        if (!t.event) t.event = Event{r.kind, i, edge.dst};
        stop = spec.stop_on_event;
        return;
      }
      int64_t w = spec.weight ? spec.weight(cur.x, edge) : 0;
      uint32_t j = intern({edge.dst, s.memory().update(cur.m, e), r.x}, i);
      t.succ[i].emplace_back(j, w);
    });
    if (stop) break;
  }
  return t;
}

std::vector<uint32_t> path_to(const Tracked& t, uint32_t i) {
  std::vector<uint32_t> path{i};
  while (i != 0) {
    i = t.parent[i];
    path.push_back(i);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

struct HNode {
  VertexId v;
  MemState m;
  friend bool operator==(const HNode&, const HNode&) = default;
};

// Extends a consistent walk into a lasso whose cycle starts at or after the walk's
// last position. Player1 continues with its first edge.
Lasso close_walk(const Arena& a, const FiniteStateStrategy& s, std::vector<HNode> walk) {
  const size_t k = s.memory().num_states();
  std::unordered_map<uint64_t, size_t> seen;
  auto key = [&](const HNode& h) { return static_cast<uint64_t>(h.v) * k + h.m; };
  size_t start = walk.size() - 1;
  seen[key(walk.back())] = start;
  while (true) {
    HNode cur = walk.back();
    EdgeId e = a.owner(cur.v) == s.player() ? *a.find_edge(cur.v, s.next_move(cur.v, cur.m)) : a.out_edges(cur.v).front();
    HNode nxt{a.edge(e).dst, s.memory().update(cur.m, e)};
    auto it = seen.find(key(nxt));
    if (it != seen.end()) {
      Lasso l;
      for (size_t i = 0; i < it->second; ++i) l.prefix.push_back(walk[i].v);
      for (size_t i = it->second; i < walk.size(); ++i) l.cycle.push_back(walk[i].v);
      return l;
    }
    seen[key(nxt)] = walk.size();
    walk.push_back(nxt);
  }
}

std::vector<HNode> hwalk(const Tracked& t, const std::vector<uint32_t>& path) {
  std::vector<HNode> w;
  for (uint32_t i : path) w.push_back({t.node[i].v, t.node[i].m});
  return w;
}

Lasso lasso_through_cycle(const Tracked& t, const std::vector<uint32_t>& cycle) {
  auto path = path_to(t, cycle.front());
  Lasso l;
  for (size_t i = 0; i + 1 < path.size(); ++i) l.prefix.push_back(t.node[path[i]].v);
  for (uint32_t i : cycle) l.cycle.push_back(t.node[i].v);
  return l;
}

// Finds, in a consistent walk with integer weights, a cycle whose weight has the given
// sign by peeling cycles off the walk. Returns prefix + cycle as a lasso.
std::optional<Lasso> signed_cycle(const Arena& a, const FiniteStateStrategy& s, const std::vector<HNode>& walk,
                                  int sign) {
  const size_t k = s.memory().num_states();
  struct Item {
    HNode h;
    int64_t level;
  };
  std::vector<Item> stack;
  std::unordered_map<uint64_t, size_t> pos;
  auto key = [&](const HNode& h) { return static_cast<uint64_t>(h.v) * k + h.m; };
  int64_t level = 0, offset = 0;
  for (size_t i = 0; i < walk.size(); ++i) {
    if (i > 0) level = checked::add(level, a.edge(*a.find_edge(walk[i - 1].v, walk[i].v)).weight.value());
    int64_t path_level = checked::sub(level, offset);
    auto it = pos.find(key(walk[i]));
    if (it != pos.end()) {
      size_t p = it->second;
      int64_t cw = checked::sub(path_level, stack[p].level);
      if ((sign > 0 && cw > 0) || (sign < 0 && cw < 0)) {
        Lasso l;
        for (size_t j = 0; j < p; ++j) l.prefix.push_back(stack[j].h.v);
        for (size_t j = p; j < stack.size(); ++j) l.cycle.push_back(stack[j].h.v);
        return l;
      }
      offset = checked::add(offset, cw);
      while (stack.size() > p + 1) {
        pos.erase(key(stack.back().h));
        stack.pop_back();
      }
      continue;
    }
    pos[key(walk[i])] = stack.size();
    stack.push_back({walk[i], path_level});
  }
  return std::nullopt;
}

size_t count_h_nodes(const Arena& a, const FiniteStateStrategy& s) {
  TrackerSpec spec;
  spec.step = [](int64_t, const Edge&) { return StepResult{Step::Ok, 0}; };
  return explore(a, s, spec).node.size();
}

// ---------------------------------------------------------------------------
// Per-objective analysis for Player0 strategies.

struct Analysis {
  ObjectiveValue value = ObjectiveValue::minus_infinity();
  std::optional<Lasso> witness;
};

ObjectiveValue evaluate_witness(const Arena& a, const Lasso& l, EvalMode mode) { return avg_energy_of_lasso(a, l, mode); }

Lasso violation_lasso(const Arena& a, const FiniteStateStrategy& s, const Tracked& t) {
  auto walk = hwalk(t, path_to(t, t.event->from));
  EdgeId e = *a.find_edge(walk.back().v, t.event->to);
  walk.push_back({t.event->to, s.memory().update(walk.back().m, e)});
  return close_walk(a, s, std::move(walk));
}

// Worst value over a tracked product whose edge weights are the quantity to average.
Analysis worst_over(const Arena& a, const FiniteStateStrategy& s, const Tracked& t, EvalMode mode, bool mean_payoff) {
  Analysis out;
  if (t.event && t.event->kind == Step::Violation) {
    out.witness = violation_lasso(a, s, t);
    out.value = evaluate_witness(a, *out.witness, mode);
    if (!out.value.is_violated()) throw std::logic_error("violation witness does not violate the bound");
    return out;
  }
  auto best = max_cycle_mean(t.succ);
  if (!best) throw std::logic_error("strategy product without cycles");
  out.witness = lasso_through_cycle(t, best->cycle);
  out.value = ObjectiveValue::finite(best->mean);
  ObjectiveValue check = mean_payoff ? ObjectiveValue::finite(mean_payoff_of_lasso(a, *out.witness))
                                     : evaluate_witness(a, *out.witness, mode);
  if (check != out.value) throw std::logic_error("critical lasso evaluates to " + check.str() + ", expected " + out.value.str());
  return out;
}

TrackerSpec energy_spec(const Arena& a, EvalMode mode, int64_t lower_drop, int64_t upper) {
  TrackerSpec spec;
  spec.x0 = mode.kind == EvalMode::Kind::RechargeWith ? mode.cap : 0;
  spec.weight = [](int64_t x, const Edge&) { return x; };
  switch (mode.kind) {
    case EvalMode::Kind::RechargeWith:
      spec.step = [cap = mode.cap](int64_t x, const Edge& e) {
        if (e.weight.is_recharge()) return StepResult{Step::Ok, cap};
        int64_t y = x + e.weight.value();
        return y < 0 ? StepResult{Step::Violation, y} : StepResult{Step::Ok, y};
      };
      break;
    case EvalMode::Kind::Bounded:
      spec.step = [cap = mode.cap](int64_t x, const Edge& e) {
        int64_t y = checked::add(x, e.weight.value());
        return y < 0 || y > cap ? StepResult{Step::Violation, y} : StepResult{Step::Ok, y};
      };
      break;
    case EvalMode::Kind::LowerBounded:
      spec.step = [upper](int64_t x, const Edge& e) {
        int64_t y = checked::add(x, e.weight.value());
        if (y < 0) return StepResult{Step::Violation, y};
        return y > upper ? StepResult{Step::Exceed, y} : StepResult{Step::Ok, y};
      };
      break;
    case EvalMode::Kind::Plain:
      spec.step = [upper, lower_drop](int64_t x, const Edge& e) {
        int64_t y = checked::add(x, e.weight.value());
        if (y < lower_drop) return StepResult{Step::Drop, y};
        return y > upper ? StepResult{Step::Exceed, y} : StepResult{Step::Ok, y};
      };
      break;
  }
  (void)a;
  return spec;
}

Analysis analyze_energy_l(const Arena& a, const FiniteStateStrategy& s, bool* violated) {
  // A level above |H|*W can never be spent down to below zero without a negative
  // cycle, so clamping there preserves violations.
  const int64_t h = static_cast<int64_t>(count_h_nodes(a, s));
  const int64_t bound = checked::mul(h, max_abs_weight(a));
  TrackerSpec spec;
  spec.step = [bound](int64_t x, const Edge& e) {
    int64_t y = checked::add(x, e.weight.value());
    if (y < 0) return StepResult{Step::Violation, y};
    return StepResult{Step::Ok, std::min(y, bound)};
  };
  Tracked t = explore(a, s, spec);
  Analysis out;
  *violated = t.event.has_value();
  if (!t.event) return out;
  auto walk = hwalk(t, path_to(t, t.event->from));
  EdgeId e = *a.find_edge(walk.back().v, t.event->to);
  walk.push_back({t.event->to, s.memory().update(walk.back().m, e)});
  int64_t level = 0;
  for (size_t i = 1; i < walk.size(); ++i) {
    level = checked::add(level, a.edge(*a.find_edge(walk[i - 1].v, walk[i].v)).weight.value());
    if (level < 0) {
      walk.resize(i + 1);
      out.witness = close_walk(a, s, std::move(walk));
      break;
    }
  }
  if (!out.witness) out.witness = signed_cycle(a, s, walk, -1);
  if (!out.witness) throw std::logic_error("no negative cycle behind a clamped violation");
  out.value = avg_energy_of_lasso(a, *out.witness, EvalMode::lower_bounded());
  if (!out.value.is_violated()) throw std::logic_error("Energy_L witness does not violate the lower bound");
  return out;
}

Analysis analyze_value(const Arena& a, const FiniteStateStrategy& s, const ValueFamily& f) {
  switch (f.kind) {
    case ValueFamily::Kind::MeanPayoff: {
      a.require_integer_weights("mean-payoff objective");
      TrackerSpec spec;
      spec.step = [](int64_t, const Edge&) { return StepResult{Step::Ok, 0}; };
      spec.weight = [](int64_t, const Edge& e) { return e.weight.value(); };
      return worst_over(a, s, explore(a, s, spec), EvalMode::plain(), true);
    }
    case ValueFamily::Kind::AvgRecharge:
      a.require_recharge_mode("average-bounded recharge objective");
      if (f.cap < 0) throw ArenaError("capacity must be non-negative");
      return worst_over(a, s, explore(a, s, energy_spec(a, EvalMode::recharge_with(f.cap), 0, 0)),
                        EvalMode::recharge_with(f.cap), false);
    case ValueFamily::Kind::AvgEnergyLU:
      a.require_integer_weights("AvgEnergy_LU objective");
      if (f.cap < 0) throw ArenaError("capacity must be non-negative");
      return worst_over(a, s, explore(a, s, energy_spec(a, EvalMode::bounded(f.cap), 0, 0)), EvalMode::bounded(f.cap),
                        false);
    case ValueFamily::Kind::AvgEnergyL:
    case ValueFamily::Kind::AvgEnergy: {
      a.require_integer_weights("average-energy objective");
      const bool lower = f.kind == ValueFamily::Kind::AvgEnergyL;
      const EvalMode mode = lower ? EvalMode::lower_bounded() : EvalMode::plain();
      if (lower) {
        bool violated = false;
        Analysis v = analyze_energy_l(a, s, &violated);
        if (violated) return v;
      }
      const int64_t h = static_cast<int64_t>(count_h_nodes(a, s));
      const int64_t w = max_abs_weight(a);
      const int64_t upper = checked::mul(h - 1, w);
      const int64_t drop = checked::sub(0, checked::add(checked::mul(checked::mul(2, h), w), 1));
      Tracked t = explore(a, s, energy_spec(a, mode, drop, upper));
      Analysis out;
      if (t.event && t.event->kind == Step::Exceed) {
        auto walk = hwalk(t, path_to(t, t.event->from));
        EdgeId e = *a.find_edge(walk.back().v, t.event->to);
        walk.push_back({t.event->to, s.memory().update(walk.back().m, e)});
        out.witness = signed_cycle(a, s, walk, +1);
        if (!out.witness) throw std::logic_error("no positive cycle behind an unbounded level");
        out.value = avg_energy_of_lasso(a, *out.witness, mode);
        if (out.value.kind() != ObjectiveValue::Kind::PlusInfinity) {
          throw std::logic_error("positive-cycle witness evaluates to " + out.value.str());
        }
        return out;
      }
      if (!max_cycle_mean(t.succ)) {
        out.witness = close_walk(a, s, {HNode{a.initial(), s.memory().initial()}});
        out.value = avg_energy_of_lasso(a, *out.witness, mode);
        if (out.value.kind() != ObjectiveValue::Kind::MinusInfinity) {
          throw std::logic_error("drifting witness evaluates to " + out.value.str());
        }
        return out;
      }
      return worst_over(a, s, t, mode, false);
    }
  }
  throw std::logic_error("unknown value family");
}

// ---------------------------------------------------------------------------
// Parity and countdown.

std::optional<Lasso> dominated_cycle(const Tracked& t, const Coloring& c, int parity) {
  int top = 0;
  for (const auto& n : t.node) top = std::max(top, c[n.v]);
  for (int d = parity; d <= top; d += 2) {
    WeightedGraph g(t.node.size());
    for (uint32_t i = 0; i < t.node.size(); ++i) {
      if (c[t.node[i].v] > d) continue;
      for (const auto& [j, w] : t.succ[i]) {
        if (c[t.node[j].v] <= d) g[i].emplace_back(j, w);
      }
    }
    for (const auto& comp : strongly_connected(g)) {
      if (!has_cycle(g, comp)) continue;
      auto it = std::find_if(comp.begin(), comp.end(), [&](uint32_t i) { return c[t.node[i].v] == d; });
      if (it == comp.end()) continue;
      // Breadth-first search from *it back to itself inside the component.
      std::vector<bool> in(t.node.size(), false);
      for (uint32_t i : comp) in[i] = true;
      std::unordered_map<uint32_t, uint32_t> parent;
      std::deque<uint32_t> q{*it};
      std::optional<uint32_t> closing;
      while (!q.empty() && !closing) {
        uint32_t u = q.front();
        q.pop_front();
        for (const auto& [j, w] : g[u]) {
          if (!in[j]) continue;
          if (j == *it) {
            closing = u;
            break;
          }
          if (parent.emplace(j, u).second) q.push_back(j);
        }
      }
      std::vector<uint32_t> cyc;
      for (uint32_t x = *closing; x != *it; x = parent.at(x)) cyc.push_back(x);
      cyc.push_back(*it);
      std::reverse(cyc.begin(), cyc.end());
      return lasso_through_cycle(t, cyc);
    }
  }
  return std::nullopt;
}

std::optional<std::vector<uint32_t>> any_cycle(const Tracked& t) {
  for (const auto& comp : strongly_connected(t.succ)) {
    if (!has_cycle(t.succ, comp)) continue;
    auto best = max_cycle_mean([&] {
      WeightedGraph g(t.succ.size());
      std::vector<bool> in(t.succ.size(), false);
      for (uint32_t i : comp) in[i] = true;
      for (uint32_t i : comp) {
        for (const auto& [j, w] : t.succ[i]) {
          if (in[j]) g[i].emplace_back(j, 0);
        }
      }
      return g;
    }());
    return best->cycle;
  }
  return std::nullopt;
}

TrackerSpec countdown_spec(const Arena& a, int64_t budget, VertexId sink) {
  (void)a;
  TrackerSpec spec;
  spec.x0 = budget;
  spec.step = [](int64_t x, const Edge& e) {
    int64_t y = x + e.weight.value();
    return y < 0 ? StepResult{Step::Violation, y} : StepResult{Step::Ok, y};
  };
  spec.terminal = [sink](VertexId v, int64_t x) { return v == sink && x == 0; };
  return spec;
}

VertexId require_countdown_arena(const Arena& a, const obj::Countdown& c) {
  a.require_integer_weights("countdown objective");
  a.require_recharge_mode("countdown objective");
  if (c.budget.c < 0) throw ArenaError("countdown budget must be non-negative");
  auto sink = countdown_sink(a);
  if (!sink) throw ArenaError("countdown objective needs a unique sink vertex");
  return *sink;
}

Verdict verdict_from(const Analysis& an, bool accepted, std::string detail) {
  return Verdict{accepted, an.witness, an.value, std::move(detail)};
}

Verdict verify_player0(const Arena& a, const FiniteStateStrategy& s, const Objective& o) {
  return std::visit(
      overloaded{
          [&](const obj::EnergyL&) {
            bool violated = false;
            Analysis an = analyze_energy_l(a, s, &violated);
            if (!violated) return Verdict{true, std::nullopt, std::nullopt, "no consistent play drops below 0"};
            return verdict_from(an, false, "energy drops below 0");
          },
          [&](const obj::EnergyLU& x) {
            Analysis an = analyze_value(a, s, ValueFamily::avg_energy_lu(x.cap));
            if (!an.value.is_violated()) return Verdict{true, std::nullopt, std::nullopt, "energy stays within bounds"};
            return verdict_from(an, false, "energy leaves [0, cap]");
          },
          [&](const obj::Recharge& x) {
            Analysis an = analyze_value(a, s, ValueFamily::avg_recharge(x.cap));
            if (!an.value.is_violated()) return Verdict{true, std::nullopt, std::nullopt, "recharge level stays non-negative"};
            return verdict_from(an, false, "recharge level drops below 0");
          },
          [&](const obj::AvgEnergy& x) {
            Analysis an = analyze_value(a, s, ValueFamily::avg_energy());
            return verdict_from(an, an.value.at_most(x.t), "worst average " + an.value.str());
          },
          [&](const obj::AvgEnergyL& x) {
            Analysis an = analyze_value(a, s, ValueFamily::avg_energy_l());
            return verdict_from(an, an.value.at_most(x.t), "worst average " + an.value.str());
          },
          [&](const obj::AvgEnergyLU& x) {
            Analysis an = analyze_value(a, s, ValueFamily::avg_energy_lu(x.cap));
            return verdict_from(an, an.value.at_most(x.t), "worst average " + an.value.str());
          },
          [&](const obj::AvgRecharge& x) {
            Analysis an = analyze_value(a, s, ValueFamily::avg_recharge(x.cap));
            return verdict_from(an, an.value.at_most(x.t), "worst average " + an.value.str());
          },
          [&](const obj::MeanPayoff& x) {
            Analysis an = analyze_value(a, s, ValueFamily::mean_payoff());
            return verdict_from(an, an.value.at_most(x.t), "worst mean payoff " + an.value.str());
          },
          [&](const obj::Parity& x) {
            check_mode(a, x);
            TrackerSpec spec;
            spec.step = [](int64_t, const Edge&) { return StepResult{Step::Ok, 0}; };
            auto bad = dominated_cycle(explore(a, s, spec), x.coloring, 1);
            if (!bad) return Verdict{true, std::nullopt, std::nullopt, "no reachable odd-dominated cycle"};
            return Verdict{false, bad, std::nullopt, "reachable odd-dominated cycle"};
          },
          [&](const obj::Countdown& x) {
            VertexId sink = require_countdown_arena(a, x);
            Tracked t = explore(a, s, countdown_spec(a, x.budget.c, sink));
            if (t.event) return Verdict{false, violation_lasso(a, s, t), std::nullopt, "budget overdrawn"};
            if (auto cyc = any_cycle(t)) {
              return Verdict{false, lasso_through_cycle(t, *cyc), std::nullopt, "play avoids the sink with budget 0"};
            }
            return Verdict{true, std::nullopt, std::nullopt, "every consistent play reaches the sink with budget 0"};
          },
      },
      o);
}

// Player1 strategies win iff no consistent play satisfies the objective.
Verdict verify_player1(const Arena& a, const FiniteStateStrategy& s, const Objective& o) {
  auto cycle_good = [&](const TrackerSpec& spec_in, const std::optional<Rational>& t,
                        bool mean_payoff) -> Verdict {
    TrackerSpec spec = spec_in;
    spec.stop_on_event = false;
    Tracked tr = explore(a, s, spec);
    if (!t) {
      if (auto cyc = any_cycle(tr)) {
        return Verdict{false, lasso_through_cycle(tr, *cyc), std::nullopt, "a consistent play stays within bounds"};
      }
      return Verdict{true, std::nullopt, std::nullopt, "every consistent play violates the bound"};
    }
    WeightedGraph neg = tr.succ;
    for (auto& out : neg) {
      for (auto& [j, w] : out) w = checked::sub(0, w);
    }
    auto best = max_cycle_mean(neg);
    if (!best) return Verdict{true, std::nullopt, std::nullopt, "every consistent play violates the bound"};
    Rational low = -best->mean;
    Lasso l = lasso_through_cycle(tr, best->cycle);
    (void)mean_payoff;
    auto value = ObjectiveValue::finite(low);
    bool accepted = !(low <= *t);
    return Verdict{accepted, l, value, "best consistent average for Player0 " + low.str()};
  };
  return std::visit(
      overloaded{
          [&](const obj::EnergyLU& x) {
            a.require_integer_weights("Energy_LU objective");
            return cycle_good(energy_spec(a, EvalMode::bounded(x.cap), 0, 0), std::nullopt, false);
          },
          [&](const obj::Recharge& x) {
            a.require_recharge_mode("recharge objective");
            return cycle_good(energy_spec(a, EvalMode::recharge_with(x.cap), 0, 0), std::nullopt, false);
          },
          [&](const obj::AvgEnergyLU& x) {
            a.require_integer_weights("AvgEnergy_LU objective");
            return cycle_good(energy_spec(a, EvalMode::bounded(x.cap), 0, 0), x.t, false);
          },
          [&](const obj::AvgRecharge& x) {
            a.require_recharge_mode("average-bounded recharge objective");
            return cycle_good(energy_spec(a, EvalMode::recharge_with(x.cap), 0, 0), x.t, false);
          },
          [&](const obj::MeanPayoff& x) {
            a.require_integer_weights("mean-payoff objective");
            TrackerSpec spec;
            spec.step = [](int64_t, const Edge&) { return StepResult{Step::Ok, 0}; };
            spec.weight = [](int64_t, const Edge& e) { return e.weight.value(); };
            return cycle_good(spec, x.t, true);
          },
          [&](const obj::Parity& x) {
            check_mode(a, x);
            TrackerSpec spec;
            spec.step = [](int64_t, const Edge&) { return StepResult{Step::Ok, 0}; };
            auto good = dominated_cycle(explore(a, s, spec), x.coloring, 0);
            if (!good) return Verdict{true, std::nullopt, std::nullopt, "no reachable even-dominated cycle"};
            return Verdict{false, good, std::nullopt, "reachable even-dominated cycle"};
          },
          [&](const obj::Countdown& x) {
            VertexId sink = require_countdown_arena(a, x);
            TrackerSpec spec = countdown_spec(a, x.budget.c, sink);
            spec.stop_on_event = false;
            Tracked t = explore(a, s, spec);
            for (uint32_t i = 0; i < t.node.size(); ++i) {
              if (!t.terminal[i]) continue;
              auto path = path_to(t, i);
              Lasso l;
              for (size_t j = 0; j + 1 < path.size(); ++j) l.prefix.push_back(t.node[path[j]].v);
              l.cycle.push_back(sink);
              return Verdict{false, l, std::nullopt, "a consistent play reaches the sink with budget 0"};
            }
            return Verdict{true, std::nullopt, std::nullopt, "no consistent play reaches the sink with budget 0"};
          },
          [&](const auto&) -> Verdict {
            throw std::invalid_argument("Player1 strategies can only be verified for bounded objectives, "
                                        "mean-payoff, parity and countdown, not " + describe(o));
          },
      },
      o);
}

}  // namespace

std::optional<CycleMean> max_cycle_mean(const WeightedGraph& g) {
  std::optional<CycleMean> best;
  std::vector<int32_t> local(g.size(), -1);
  for (const auto& comp : strongly_connected(g)) {
    if (!has_cycle(g, comp)) continue;
    for (size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int32_t>(i);
    Rational m = karp(g, comp, local);
    if (!best || m > best->mean) best = CycleMean{m, critical_cycle(g, comp, local, m)};
    for (uint32_t v : comp) local[v] = -1;
  }
  return best;
}

Verdict verify_strategy(const Arena& a, const FiniteStateStrategy& s, const Objective& o) {
  s.validate(a);
  check_mode(a, o);
  return s.player() == Player::P0 ? verify_player0(a, s, o) : verify_player1(a, s, o);
}

ObjectiveValue worst_consistent_value(const Arena& a, const FiniteStateStrategy& s, const ValueFamily& f,
                                      Lasso* witness) {
  s.validate(a);
  if (s.player() != Player::P0) throw std::invalid_argument("worst_consistent_value expects a Player0 strategy");
  Analysis an = analyze_value(a, s, f);
  if (witness && an.witness) *witness = *an.witness;
  return an.value;
}

size_t reachable_memory_states(const Arena& a, const FiniteStateStrategy& s) {
  TrackerSpec spec;
  spec.step = [](int64_t, const Edge&) { return StepResult{Step::Ok, 0}; };
  Tracked t = explore(a, s, spec);
  std::vector<bool> used(s.memory().num_states(), false);
  for (const auto& n : t.node) used[n.m] = true;
  return static_cast<size_t>(std::count(used.begin(), used.end(), true));
}

FiniteStateStrategy canonicalize(const Arena& a, const FiniteStateStrategy& s) {
  TrackerSpec spec;
  spec.step = [](int64_t, const Edge&) { return StepResult{Step::Ok, 0}; };
  Tracked t = explore(a, s, spec);
  constexpr MemState kNone = std::numeric_limits<MemState>::max();
  std::vector<MemState> rename(s.memory().num_states(), kNone);
  MemState fresh = 0;
  for (const auto& n : t.node) {
    if (rename[n.m] == kNone) rename[n.m] = fresh++;
  }
  const size_t k = fresh;
  const auto& mem = s.memory();
  std::vector<MemState> table(k * a.num_edges());
  std::vector<VertexId> next(a.num_vertices() * k, kNoVertex);
  for (MemState old = 0; old < mem.num_states(); ++old) {
    if (rename[old] == kNone) continue;
    MemState ns = rename[old];
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
      MemState to = mem.update(old, e);
      table[ns * a.num_edges() + e] = rename[to] == kNone ? ns : rename[to];
    }
    for (VertexId v = 0; v < a.num_vertices(); ++v) {
      if (a.owner(v) == s.player()) next[v * k + ns] = s.next_move(v, old);
    }
  }
  return FiniteStateStrategy(s.player(), MemoryStructure(k, 0, a.num_edges(), std::move(table)), std::move(next));
}

uint64_t enumerate_strategies(const Arena& a, size_t memory_size,
                              const std::function<bool(const FiniteStateStrategy&)>& visit, uint64_t limit) {
  if (memory_size == 0) throw std::invalid_argument("memory size must be positive");
  const size_t k = memory_size;
  const size_t ne = a.num_edges();
  std::vector<MemState> table(k * ne);
  std::vector<VertexId> next(a.num_vertices() * k, kNoVertex);
  std::vector<bool> seen(a.num_vertices() * k, false);
  std::vector<HNode> order;
  uint64_t explored = 0, visited = 0;
  bool stopped = false;

  auto emit = [&]() {
    std::vector<MemState> tab(k * ne);
    std::vector<VertexId> nxt(a.num_vertices() * k);
    for (MemState s = 0; s < k; ++s) {
      for (EdgeId e = 0; e < ne; ++e) tab[s * ne + e] = s;
      for (VertexId v = 0; v < a.num_vertices(); ++v) {
        nxt[v * k + s] = a.owner(v) == Player::P0 ? a.edge(a.out_edges(v).front()).dst : kNoVertex;
      }
    }
    for (const auto& h : order) {
      if (a.owner(h.v) == Player::P0) {
        VertexId to = next[h.v * k + h.m];
        nxt[h.v * k + h.m] = to;
        EdgeId e = *a.find_edge(h.v, to);
        tab[h.m * ne + e] = table[h.m * ne + e];
      } else {
        for (EdgeId e : a.out_edges(h.v)) tab[h.m * ne + e] = table[h.m * ne + e];
      }
    }
    ++visited;
    if (!visit(FiniteStateStrategy(Player::P0, MemoryStructure(k, 0, ne, std::move(tab)), std::move(nxt)))) {
      stopped = true;
    }
  };

  // Assigns the updates of the listed edges of node order[pos], then moves on.
  std::function<void(size_t, size_t)> node;
  std::function<void(size_t, const std::vector<EdgeId>&, size_t, size_t)> edges;
  edges = [&](size_t pos, const std::vector<EdgeId>& es, size_t i, size_t created) {
    if (stopped) return;
    if (++explored > limit) {
      throw EnumerationLimitExceeded("strategy enumeration exceeded " + std::to_string(limit) + " partial strategies");
    }
    if (i == es.size()) {
      node(pos + 1, created);
      return;
    }
    const HNode h = order[pos];
    const EdgeId e = es[i];
    const size_t options = std::min(created + 1, k);
    for (MemState s2 = 0; s2 < options && !stopped; ++s2) {
      table[h.m * ne + e] = s2;
      const size_t before = order.size();
      const HNode to{a.edge(e).dst, s2};
      if (!seen[to.v * k + to.m]) {
        seen[to.v * k + to.m] = true;
        order.push_back(to);
      }
      edges(pos, es, i + 1, std::max(created, static_cast<size_t>(s2) + 1));
      while (order.size() > before) {
        seen[order.back().v * k + order.back().m] = false;
        order.pop_back();
      }
    }
  };
  node = [&](size_t pos, size_t created) {
    if (stopped) return;
    if (pos == order.size()) {
      if (created == k) emit();
      return;
    }
    const HNode h = order[pos];
    if (a.owner(h.v) == Player::P0) {
      for (EdgeId e : a.out_edges(h.v)) {
        if (stopped) return;
        next[h.v * k + h.m] = a.edge(e).dst;
        edges(pos, {e}, 0, created);
      }
    } else {
      std::vector<EdgeId> es(a.out_edges(h.v).begin(), a.out_edges(h.v).end());
      edges(pos, es, 0, created);
    }
  };
  const HNode root{a.initial(), 0};
  seen[root.v * k] = true;
  order.push_back(root);
  node(0, 1);
  return visited;
}

Lasso sample_consistent_lasso(const Arena& a, const FiniteStateStrategy& s, std::mt19937_64& rng) {
  const size_t k = s.memory().num_states();
  std::unordered_map<uint64_t, size_t> seen;
  std::vector<HNode> walk{{a.initial(), s.memory().initial()}};
  seen[static_cast<uint64_t>(a.initial()) * k + s.memory().initial()] = 0;
  while (true) {
    HNode cur = walk.back();
    EdgeId e;
    if (a.owner(cur.v) == s.player()) {
      e = *a.find_edge(cur.v, s.next_move(cur.v, cur.m));
    } else {
      auto out = a.out_edges(cur.v);
      e = out[rng() % out.size()];
    }
    HNode nxt{a.edge(e).dst, s.memory().update(cur.m, e)};
    auto key = static_cast<uint64_t>(nxt.v) * k + nxt.m;
    if (auto it = seen.find(key); it != seen.end()) {
      Lasso l;
      for (size_t i = 0; i < it->second; ++i) l.prefix.push_back(walk[i].v);
      for (size_t i = it->second; i < walk.size(); ++i) l.cycle.push_back(walk[i].v);
      return l;
    }
    seen[key] = walk.size();
    walk.push_back(nxt);
  }
}

}  // namespace qg
