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

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "qg/reductions.hpp"
#include "qg/strategies.hpp"

namespace qg {

namespace {

constexpr size_t kMaxConfigurations = size_t{1} << 24;

struct Config {
  VertexId v;
  MemState m;
  int64_t e;
  friend bool operator==(const Config&, const Config&) = default;
};

struct ConfigHash {
  size_t operator()(const Config& c) const {
    size_t h = std::hash<int64_t>{}(c.e);
    h ^= std::hash<uint64_t>{}((static_cast<uint64_t>(c.v) << 32) ^ c.m) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class ConfigIndex {
 public:
  std::pair<uint32_t, bool> insert(const Config& c) {
    auto [it, fresh] = ids_.try_emplace(c, static_cast<uint32_t>(configs_.size()));
    if (fresh) {
      if (configs_.size() >= kMaxConfigurations) throw std::length_error("too many configurations while bounding");
      configs_.push_back(c);
    }
    return {it->second, fresh};
  }
  const Config& operator[](uint32_t i) const { return configs_[i]; }
  size_t size() const { return configs_.size(); }

 private:
  std::unordered_map<Config, uint32_t, ConfigHash> ids_;
  std::vector<Config> configs_;
};

template <typename Fn>
void for_each_move(const Arena& a, const FiniteStateStrategy& s, VertexId v, MemState m, Fn&& fn) {
  if (a.owner(v) == s.player()) {
    fn(*a.find_edge(v, s.next_move(v, m)));
  } else {
    for (EdgeId e : a.out_edges(v)) fn(e);
  }
}

}  // namespace

BoundifyResult boundify_strategy(const Arena& a, const FiniteStateStrategy& sigma, int64_t t) {
  a.require_integer_weights("strategy bounding");
  if (sigma.player() != Player::P0) throw std::invalid_argument("bounding needs a Player0 strategy");
  sigma.validate(a);
  Verdict v = verify_strategy(a, sigma, obj::AvgEnergyL{Rational(t)});
  if (!v.accepted) {
    throw NotWinningError("strategy does not win AvgEnergy_L(" + std::to_string(t) + ")", v.witness);
  }
  const MemoryStructure& mem = sigma.memory();
  const int64_t w = max_abs_weight(a);

  ConfigIndex x;
  std::vector<std::vector<uint32_t>> succ;
  std::deque<uint32_t> queue{x.insert({a.initial(), mem.initial(), 0}).first};
  succ.emplace_back();
  while (!queue.empty()) {
    uint32_t i = queue.front();
    queue.pop_front();
    Config c = x[i];
    for_each_move(a, sigma, c.v, c.m, [&](EdgeId e) {
      const Edge& ed = a.edge(e);
      auto [j, fresh] = x.insert({ed.dst, mem.update(c.m, e), c.e + ed.weight.value()});
      if (fresh) {
        succ.emplace_back();
        queue.push_back(j);
      }
      succ[i].push_back(j);
    });
  }

  // Peak over the part of X strictly above t; that part is acyclic for a winning sigma.
  const size_t n = x.size();
  std::vector<std::vector<uint32_t>> pred(n);
  std::vector<uint32_t> pending(n, 0);
  std::vector<int64_t> peak(n, std::numeric_limits<int64_t>::min());
  size_t above = 0;
  std::vector<uint32_t> ready;
  for (uint32_t i = 0; i < n; ++i) {
    if (x[i].e <= t) continue;
    ++above;
    peak[i] = x[i].e;
    for (uint32_t j : succ[i]) {
      if (x[j].e <= t) continue;
      pred[j].push_back(i);
      ++pending[i];
    }
    if (pending[i] == 0) ready.push_back(i);
  }
  size_t done = 0;
  while (!ready.empty()) {
    uint32_t j = ready.back();
    ready.pop_back();
    ++done;
    for (uint32_t i : pred[j]) {
      peak[i] = std::max(peak[i], peak[j]);
      if (--pending[i] == 0) ready.push_back(i);
    }
  }
  if (done != above) throw std::logic_error("consistent cycle above the threshold in a winning strategy");

  std::map<std::pair<VertexId, int64_t>, std::pair<int64_t, MemState>> rep;
  for (uint32_t i = 0; i < n; ++i) {
    const Config& c = x[i];
    if (c.e <= t || c.e > t + w) continue;
    auto key = std::make_pair(c.v, c.e);
    auto cand = std::make_pair(peak[i], c.m);
    auto it = rep.find(key);
    if (it == rep.end()) rep.emplace(key, cand);
    else it->second = std::min(it->second, cand);
  }

  // Memory of the new strategy: (state of sigma, level), plus a trap state.
  auto step = [&](MemState m, int64_t e, EdgeId id) -> std::optional<std::pair<MemState, int64_t>> {
    const Edge& ed = a.edge(id);
    int64_t e2 = e + ed.weight.value();
    MemState m2 = mem.update(m, id);
    if (e <= t && e2 > t) {
      auto it = rep.find({ed.dst, e2});
      if (it == rep.end()) return std::nullopt;
      m2 = it->second.second;
    }
    return std::make_pair(m2, e2);
  };

  std::map<std::pair<MemState, int64_t>, MemState> state_id;
  std::vector<std::pair<MemState, int64_t>> states;
  auto state_of = [&](MemState m, int64_t e) {
    auto [it, fresh] = state_id.try_emplace({m, e}, static_cast<MemState>(states.size()));
    if (fresh) states.emplace_back(m, e);
    return it->second;
  };
  ConfigIndex y;
  queue.assign({y.insert({a.initial(), state_of(mem.initial(), 0), 0}).first});
  int64_t cap = 0;
  while (!queue.empty()) {
    Config c = y[queue.front()];
    queue.pop_front();
    auto [m, e] = states[c.m];
    cap = std::max(cap, e);
    for_each_move(a, sigma, c.v, m, [&](EdgeId id) {
      auto next = step(m, e, id);
      if (!next) throw std::logic_error("no representative for a reachable upward crossing");
      MemState s = state_of(next->first, next->second);
      auto [j, fresh] = y.insert({a.edge(id).dst, s, next->second});
      if (fresh) queue.push_back(j);
    });
  }

  const size_t k = states.size() + 1;
  const MemState bot = static_cast<MemState>(states.size());
  auto memory = MemoryStructure::from_function(a, k, state_of(mem.initial(), 0), [&](MemState s, EdgeId id) {
    if (s == bot) return bot;
    auto next = step(states[s].first, states[s].second, id);
    if (!next || next->second < 0 || next->second > cap) return bot;
    auto it = state_id.find(*next);
    return it == state_id.end() ? bot : it->second;
  });
  std::vector<VertexId> nxt(a.num_vertices() * k, kNoVertex);
  for (VertexId u = 0; u < a.num_vertices(); ++u) {
    if (a.owner(u) != Player::P0) continue;
    for (MemState s = 0; s < k; ++s) {
      nxt[u * k + s] = s == bot ? a.edge(a.out_edges(u).front()).dst : sigma.next_move(u, states[s].first);
    }
  }
  FiniteStateStrategy bounded(Player::P0, std::move(memory), std::move(nxt));
  if (!verify_strategy(a, bounded, obj::EnergyLU{cap}).accepted) {
    throw std::logic_error("bounded strategy fails its certified capacity");
  }
  BoundifyResult r{std::move(bounded), cap, ObjectiveValue::minus_infinity()};
  r.measured_average = worst_consistent_value(a, r.strategy, ValueFamily::avg_energy_l());
  return r;
}

}  // namespace qg
