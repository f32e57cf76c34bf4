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

#include "qg/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>

namespace qg::oracle {

namespace {

void check_size(const Arena& a, size_t limit) {
  if (a.num_vertices() > limit) {
    throw OracleLimitError("oracle limit: " + std::to_string(a.num_vertices()) + " vertices exceed " +
                           std::to_string(limit));
  }
}

uint64_t count_positional(const Arena& a, Player p) {
  uint64_t n = 1;
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) != p) continue;
    n *= a.out_edges(v).size();
    if (n > kMaxStrategyPairs) return kMaxStrategyPairs + 1;
  }
  return n;
}

void check_pairs(const Arena& a) {
  uint64_t n0 = count_positional(a, Player::P0), n1 = count_positional(a, Player::P1);
  if (n0 > kMaxStrategyPairs || n1 > kMaxStrategyPairs || n0 * n1 > kMaxStrategyPairs) {
    throw OracleLimitError("oracle limit: too many positional strategy pairs");
  }
}

/// Calls fn(succ) for every positional strategy of `p`; succ is filled in for p's vertices only.
void for_each_positional(const Arena& a, Player p, std::vector<VertexId>& succ,
                         const std::function<void()>& fn) {
  std::vector<VertexId> own;
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) == p) own.push_back(v);
  }
  std::vector<size_t> digit(own.size(), 0);
  for (;;) {
    for (size_t i = 0; i < own.size(); ++i) succ[own[i]] = a.edge(a.out_edges(own[i])[digit[i]]).dst;
    fn();
    size_t i = 0;
    while (i < own.size() && ++digit[i] == a.out_edges(own[i]).size()) digit[i++] = 0;
    if (i == own.size()) return;
  }
}

/// Vertices of the cycle reached from v in the functional graph succ.
std::vector<VertexId> reached_cycle(const std::vector<VertexId>& succ, VertexId v) {
  for (size_t i = 0; i < succ.size(); ++i) v = succ[v];
  std::vector<VertexId> cyc{v};
  for (VertexId u = succ[v]; u != v; u = succ[u]) cyc.push_back(u);
  return cyc;
}

Rational cycle_mean(const Arena& a, const std::vector<VertexId>& cyc) {
  int64_t sum = 0;
  for (size_t i = 0; i < cyc.size(); ++i) {
    sum += a.edge(*a.find_edge(cyc[i], cyc[(i + 1) % cyc.size()])).weight.value();
  }
  return Rational(sum, static_cast<int64_t>(cyc.size()));
}

bool safety_wins(const Arena& a, int64_t cap, bool recharge) {
  if (cap < 0) throw std::invalid_argument("capacity must be non-negative");
  const auto levels = static_cast<size_t>(cap) + 1;
  const size_t bot = a.num_vertices() * levels;
  auto id = [&](VertexId v, int64_t l) { return v * levels + static_cast<size_t>(l); };
  auto next = [&](EdgeId e, int64_t l) -> size_t {
    const Edge& ed = a.edge(e);
    int64_t l2 = ed.weight.is_recharge() ? cap : l + ed.weight.value();
    return l2 < 0 || l2 > cap ? bot : id(ed.dst, l2);
  };
  std::vector<bool> lose(bot + 1, false);
  lose[bot] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (VertexId v = 0; v < a.num_vertices(); ++v) {
      for (int64_t l = 0; l <= cap; ++l) {
        if (lose[id(v, l)]) continue;
        bool all = true, any = false;
        for (EdgeId e : a.out_edges(v)) {
          bool x = lose[next(e, l)];
          all = all && x;
          any = any || x;
        }
        if (a.owner(v) == Player::P0 ? all : any) {
          lose[id(v, l)] = true;
          changed = true;
        }
      }
    }
  }
  return !lose[id(a.initial(), recharge ? cap : 0)];
}

bool one_in(std::mt19937_64& rng, double p) { return static_cast<double>(rng() % 1'000'000) < p * 1'000'000.0; }

int64_t uniform(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

}  // namespace

std::vector<Rational> mp_value_by_enumeration(const Arena& a, size_t vertex_limit) {
  a.require_integer_weights("mean-payoff oracle");
  check_size(a, vertex_limit);
  check_pairs(a);
  const size_t n = a.num_vertices();
  std::vector<std::optional<Rational>> best(n);
  std::vector<VertexId> succ(n, kNoVertex);
  for_each_positional(a, Player::P0, succ, [&] {
    std::vector<std::optional<Rational>> worst(n);
    for_each_positional(a, Player::P1, succ, [&] {
      for (VertexId v = 0; v < n; ++v) {
        Rational m = cycle_mean(a, reached_cycle(succ, v));
        if (!worst[v] || m > *worst[v]) worst[v] = m;
      }
    });
    for (VertexId v = 0; v < n; ++v) {
      if (!best[v] || *worst[v] < *best[v]) best[v] = worst[v];
    }
  });
  std::vector<Rational> out;
  for (auto& b : best) out.push_back(*b);
  return out;
}

std::vector<bool> parity_region_by_enumeration(const Arena& a, const Coloring& c, size_t vertex_limit) {
  check_size(a, vertex_limit);
  check_pairs(a);
  if (c.color.size() != a.num_vertices()) throw std::invalid_argument("coloring size does not match the arena");
  const size_t n = a.num_vertices();
  std::vector<bool> region(n, false);
  std::vector<VertexId> succ(n, kNoVertex);
  for_each_positional(a, Player::P0, succ, [&] {
    std::vector<bool> good(n, true);
    for_each_positional(a, Player::P1, succ, [&] {
      for (VertexId v = 0; v < n; ++v) {
        int top = -1;
        for (VertexId u : reached_cycle(succ, v)) top = std::max(top, c[u]);
        if (top % 2 != 0) good[v] = false;
      }
    });
    for (VertexId v = 0; v < n; ++v) region[v] = region[v] || good[v];
  });
  return region;
}

bool energy_lu_wins_by_safety(const Arena& a, int64_t cap) {
  a.require_integer_weights("energy oracle");
  return safety_wins(a, cap, false);
}

bool recharge_wins_by_safety(const Arena& a, int64_t cap) {
  a.require_recharge_mode("recharge oracle");
  return safety_wins(a, cap, true);
}

CapSearch exists_cap_by_search(const Arena& a, int64_t cap_max) {
  CapSearch r;
  r.searched_up_to = cap_max;
  for (int64_t cap = 0; cap <= cap_max; ++cap) {
    if (recharge_wins_by_safety(a, cap)) {
      r.yes = true;
      r.cap = cap;
      return r;
    }
  }
  return r;
}

void require_solitaire(const Arena& a) {
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) == Player::P1 && a.out_edges(v).size() != 1) {
      throw std::invalid_argument("arena is not solitaire: Player1 vertex '" + a.name(v) + "' has a choice");
    }
  }
}

BestLasso solitaire_best_lasso(const Arena& a, const ValueFamily& f, size_t length_bound) {
  require_solitaire(a);
  if (length_bound < 1) throw std::invalid_argument("length bound must be at least 1");
  using K = ValueFamily::Kind;
  const bool mp = f.kind == K::MeanPayoff;
  if (mp || f.kind == K::AvgEnergy || f.kind == K::AvgEnergyL) a.require_integer_weights("solitaire oracle");
  if (f.kind == K::AvgRecharge) a.require_recharge_mode("solitaire oracle");
  if (f.kind == K::AvgEnergyLU) a.require_integer_weights("solitaire oracle");
  const bool capped = f.kind == K::AvgEnergyLU || f.kind == K::AvgRecharge;
  // Exact-state closures suffice when bounds are tracked; otherwise any revisit of a vertex may close.
  const bool exact_close = capped || f.kind == K::AvgEnergyL;
  const int64_t start = f.kind == K::AvgRecharge ? f.cap : 0;

  auto step = [&](int64_t l, const Edge& e) -> std::optional<int64_t> {
    if (mp) return 0;
    int64_t l2 = e.weight.is_recharge() ? f.cap : l + e.weight.value();
    if (f.kind != K::AvgEnergy && l2 < 0) return std::nullopt;
    if (f.kind == K::AvgEnergyLU && l2 > f.cap) return std::nullopt;
    return l2;
  };
  auto evaluate = [&](const Lasso& l) {
    switch (f.kind) {
      case K::MeanPayoff: return ObjectiveValue::finite(mean_payoff_of_lasso(a, l));
      case K::AvgEnergy: return avg_energy_of_lasso(a, l, EvalMode::plain());
      case K::AvgEnergyL: return avg_energy_of_lasso(a, l, EvalMode::lower_bounded());
      case K::AvgEnergyLU: return avg_energy_of_lasso(a, l, EvalMode::bounded(f.cap));
      case K::AvgRecharge: break;
    }
    return avg_energy_of_lasso(a, l, EvalMode::recharge_with(f.cap));
  };

  std::optional<BestLasso> best;
  auto offer = [&](const std::vector<VertexId>& walk, size_t i) {
    Lasso l{std::vector<VertexId>(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(i)),
            std::vector<VertexId>(walk.begin() + static_cast<std::ptrdiff_t>(i), walk.end())};
    ObjectiveValue v = evaluate(l);
    if (!best || v < best->value) best = BestLasso{std::move(l), v, 0};
  };

  std::vector<VertexId> walk{a.initial()};
  std::vector<int64_t> level{start};
  std::set<std::pair<VertexId, int64_t>> on_path{{a.initial(), mp ? 0 : start}};
  std::function<void()> dfs = [&] {
    const VertexId v = walk.back();
    for (EdgeId e : a.out_edges(v)) {
      const Edge& ed = a.edge(e);
      auto l2 = step(level.back(), ed);
      if (!l2) {
        // Only violating continuations: offer a violating lasso so some value is always reported.
        if (best) continue;
        std::vector<VertexId> w = walk;
        w.push_back(ed.dst);
        for (;;) {
          VertexId next = a.edge(a.out_edges(w.back()).front()).dst;
          auto it = std::find(w.begin(), w.end(), next);
          if (it != w.end()) {
            offer(w, static_cast<size_t>(it - w.begin()));
            break;
          }
          w.push_back(next);
        }
        continue;
      }
      for (size_t i = 0; i < walk.size(); ++i) {
        if (walk[i] == ed.dst && (!exact_close || level[i] == *l2)) offer(walk, i);
      }
      if (walk.size() >= length_bound || on_path.contains({ed.dst, *l2})) continue;
      walk.push_back(ed.dst);
      level.push_back(*l2);
      on_path.insert({ed.dst, *l2});
      dfs();
      on_path.erase({ed.dst, *l2});
      walk.pop_back();
      level.pop_back();
    }
  };
  dfs();
  if (!best) throw std::invalid_argument("length bound " + std::to_string(length_bound) + " closes no cycle");
  best->stabilization_bound = mp ? a.num_vertices() : capped ? a.num_vertices() * static_cast<size_t>(f.cap + 1) : 0;
  return *best;
}

Arena random_arena(const GenParams& p, uint64_t seed) {
  if (p.vertices == 0) throw std::invalid_argument("random arena needs at least one vertex");
  if (p.max_weight < 0) throw std::invalid_argument("weight range must be non-negative");
  std::mt19937_64 rng(seed);
  ArenaBuilder b;
  for (size_t i = 0; i < p.vertices; ++i) {
    b.add_vertex("v" + std::to_string(i), one_in(rng, p.player0_fraction) ? Player::P0 : Player::P1);
  }
  auto label = [&] {
    if (p.recharge_mode) {
      return one_in(rng, p.recharge_probability) ? WeightLabel::recharge()
                                                 : WeightLabel::integer(-uniform(rng, 0, p.max_weight));
    }
    return WeightLabel::integer(uniform(rng, -p.max_weight, p.max_weight));
  };
  const auto n = static_cast<VertexId>(p.vertices);
  for (VertexId s = 0; s < n; ++s) {
    bool any = false;
    for (VertexId d = 0; d < n; ++d) {
      if (!one_in(rng, p.edge_density)) continue;
      b.add_edge(s, d, label());
      any = true;
    }
    if (!any) b.add_edge(s, static_cast<VertexId>(rng() % n), label());
  }
  b.set_initial(0);
  return std::move(b).build();
}

CountdownInstance random_countdown(uint64_t seed, size_t side, int64_t max_weight, int64_t max_budget) {
  if (side == 0 || max_weight < 1 || max_budget < 0) throw std::invalid_argument("bad countdown generator parameters");
  std::mt19937_64 rng(seed);
  const size_t n0 = 1 + rng() % side, n1 = 1 + rng() % side;
  ArenaBuilder b;
  std::vector<VertexId> p0, p1;
  for (size_t i = 0; i < n0; ++i) p0.push_back(b.add_vertex("a" + std::to_string(i), Player::P0));
  for (size_t i = 0; i < n1; ++i) p1.push_back(b.add_vertex("b" + std::to_string(i), Player::P1));
  VertexId sink = b.add_vertex("sink", Player::P1);
  b.add_edge(sink, sink, WeightLabel::integer(0));
  for (VertexId v : p0) {
    b.add_edge(v, sink, WeightLabel::integer(0));
    std::vector<int64_t> weights;
    for (int64_t w = 1; w <= max_weight; ++w) weights.push_back(-w);
    std::shuffle(weights.begin(), weights.end(), rng);
    size_t used = 0;
    for (VertexId u : p1) {
      if (used < weights.size() && one_in(rng, 0.6)) b.add_edge(v, u, WeightLabel::integer(weights[used++]));
    }
  }
  for (VertexId u : p1) {
    bool any = false;
    for (VertexId v : p0) {
      if (!one_in(rng, 0.5)) continue;
      b.add_edge(u, v, WeightLabel::integer(0));
      any = true;
    }
    if (!any) b.add_edge(u, p0[rng() % p0.size()], WeightLabel::integer(0));
  }
  b.set_initial(p0.front());
  return {std::move(b).build(), CountdownBudget{uniform(rng, 0, max_budget)}};
}

}  // namespace qg::oracle
