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

#include "qg/reductions.hpp"

#include <map>
#include <stdexcept>

namespace qg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ReductionOutput reduce_energy_average(const Arena& a, int64_t cap, const Rational& t, EnergyMemory::Mode mode) {
  EnergyMemory mem(a, cap, mode);
  const int64_t p = t.num(), q = t.den();
  const MemState bot = mem.bottom();
  const int64_t over = checked::add(p, 1);
  auto relabel = [&](EdgeId, MemState s) {
    return WeightLabel::integer(s == bot ? over : checked::mul(static_cast<int64_t>(s), q));
  };
  ReductionOutput out{product(a, mem.memory(), relabel, mem.namer()), mem.memory(), mem.namer(),
                      obj::MeanPayoff{Rational(p)}, ""};
  out.objective_note = "MeanPayoff(t=" + std::to_string(p) + ") on levels scaled by " + std::to_string(q) +
                       (mode == EnergyMemory::Mode::Recharge ? "; source AvgRecharge(cap=" : "; source AvgEnergy_LU(cap=") +
                       std::to_string(cap) + ", t=" + t.str() + ")";
  return out;
}

std::vector<VertexId> positional_choice(const Arena& a, const FiniteStateStrategy& s) {
  std::vector<VertexId> c(a.num_vertices(), kNoVertex);
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    if (a.owner(v) == s.player()) c[v] = s.next_move(v, s.memory().initial());
  }
  return c;
}

SolveResult solve_through(const Arena& a, const ReductionOutput& red) {
  const auto& target = std::get<obj::MeanPayoff>(red.target);
  SolveResult r = solve_mean_payoff_threshold(red.product.arena, target.t);
  auto choice = positional_choice(red.product.arena, *r.strategy);
  r.strategy = pull_back(a, *red.memory, red.product, r.winner, choice);
  r.certificate = red.objective_note + "\n" + r.certificate;
  return r;
}

std::string fresh_name(const Arena& a, std::string base) {
  while (a.find_vertex(base)) base += "'";
  return base;
}

}  // namespace

ReductionOutput reduce_avg_recharge(const Arena& a, int64_t cap, const Rational& t) {
  return reduce_energy_average(a, cap, t, EnergyMemory::Mode::Recharge);
}

ReductionOutput reduce_avg_energy_lu(const Arena& a, int64_t cap, const Rational& t) {
  return reduce_energy_average(a, cap, t, EnergyMemory::Mode::LowerUpper);
}

ParityReduction reduce_exists_cap_to_parity(const Arena& a) {
  a.require_recharge_mode("existential capacity");
  auto kind = [&](EdgeId e) -> MemState {
    const auto& w = a.edge(e).weight;
    if (w.is_recharge()) return 1;
    return w.value() == 0 ? 0 : 2;
  };
  auto mem = MemoryStructure::from_function(a, 3, 0, [&](MemState, EdgeId e) { return kind(e); });
  StateNamer namer = [](MemState s) { return std::string(s == 0 ? "Z" : s == 1 ? "R" : "N"); };
  ProductArena prod = product(a, mem, keep_weights(a), namer);
  Coloring c{std::vector<int>(prod.origin.size())};
  for (VertexId v = 0; v < prod.origin.size(); ++v) {
    MemState s = prod.origin[v].second;
    c.color[v] = s == 1 ? 2 : s == 2 ? 1 : 0;
  }
  return ParityReduction{std::move(prod), std::move(mem), std::move(c), namer};
}

ExistsCapResult exists_cap_recharge(const Arena& a) {
  ParityReduction tri = reduce_exists_cap_to_parity(a);
  ParitySolution sol = solve_parity(tri.product.arena, tri.coloring);
  ExistsCapResult r;
  if (!sol.region0[tri.product.arena.initial()]) return r;
  FiniteStateStrategy sigma = pull_back(a, tri.memory, tri.product, Player::P0, sol.strategy0);
  int64_t decrements = 0;
  for (const auto& [v, s] : tri.product.origin) decrements += s == 2 ? 1 : 0;
  const int64_t w = max_abs_weight(a);
  r.yes = true;
  r.cap = checked::mul(decrements, w);
  if (!verify_strategy(a, sigma, obj::Recharge{r.cap}).accepted) {
    r.fallback_used = true;
    r.cap = checked::mul(static_cast<int64_t>(tri.product.origin.size()) - 1, w);
    if (!verify_strategy(a, sigma, obj::Recharge{r.cap}).accepted) {
      throw std::logic_error("parity strategy does not win Recharge at the fallback capacity");
    }
  }
  r.strategy = std::move(sigma);
  return r;
}

int64_t default_cap_max(const Arena& a) {
  int64_t base = checked::mul(static_cast<int64_t>(a.num_vertices()), max_abs_weight(a));
  return std::max<int64_t>(256, checked::mul(base, 256));
}

ExistsCapResult exists_cap_energy_lu(const Arena& a, std::optional<int64_t> cap_max) {
  a.require_integer_weights("existential capacity");
  const int64_t limit = cap_max.value_or(default_cap_max(a));
  if (limit < 0) throw std::invalid_argument("cap_max must be non-negative");
  std::map<int64_t, SolveResult> cache;
  auto wins = [&](int64_t c) {
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, solve_energy_lu(a, c)).first;
    return it->second.winner == Player::P0;
  };
  ExistsCapResult r;
  r.searched_up_to = limit;
  int64_t lo = -1, hi = 0;
  while (!wins(hi)) {
    if (hi == limit) return r;
    lo = hi;
    hi = std::min(limit, hi == 0 ? int64_t{1} : checked::mul(hi, 2));
  }
  while (hi - lo > 1) {
    int64_t mid = lo + (hi - lo) / 2;
    if (wins(mid)) hi = mid;
    else lo = mid;
  }
  r.yes = true;
  r.cap = hi;
  r.strategy = cache.at(hi).strategy;
  return r;
}

ExistsCapResult exists_threshold_avg_energy_l(const Arena& a, std::optional<int64_t> cap_max) {
  return exists_cap_energy_lu(a, cap_max);
}

ReductionOutput reduce_countdown_to_avg_recharge(const Arena& a, CountdownBudget budget) {
  check_countdown_shape(a);
  if (budget.c < 0) throw ArenaError("countdown budget must be non-negative");
  ArenaBuilder b;
  ProductArena prod;
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    b.add_vertex(a.name(v), a.owner(v));
    prod.origin.emplace_back(v, 0);
  }
  for (const auto& e : a.edges()) b.add_edge(e.src, e.dst, e.weight);
  VertexId fresh = b.add_vertex(fresh_name(a, a.name(a.initial()) + "'"), Player::P1);
  prod.origin.emplace_back(kNoVertex, 0);
  b.add_edge(fresh, a.initial(), WeightLabel::recharge());
  b.set_initial(fresh);
  prod.arena = std::move(b).build();
  ReductionOutput out{std::move(prod), std::nullopt, {}, obj::AvgRecharge{budget.c, Rational(0)}, ""};
  out.objective_note = "AvgRecharge(cap=" + std::to_string(budget.c) + ", t=0/1); source Countdown(c=" +
                       std::to_string(budget.c) + ")";
  return out;
}

Arena build_fig4_gadget(const Arena& a, CountdownBudget budget) {
  check_countdown_shape(a);
  if (budget.c < 0) throw ArenaError("countdown budget must be non-negative");
  ArenaBuilder b;
  for (VertexId v = 0; v < a.num_vertices(); ++v) b.add_vertex(a.name(v), a.owner(v));
  for (const auto& e : a.edges()) b.add_edge(e.src, e.dst, e.weight);
  VertexId g0 = b.add_vertex(fresh_name(a, "g0"), Player::P0);
  VertexId g1 = b.add_vertex(fresh_name(a, "g1"), Player::P1);
  VertexId g2 = b.add_vertex(fresh_name(a, "g2"), Player::P0);
  b.add_edge(g0, g0, WeightLabel::integer(-1));
  b.add_edge(g0, g1, WeightLabel::integer(0));
  b.add_edge(g1, g2, WeightLabel::integer(-budget.c));
  b.add_edge(g1, a.initial(), WeightLabel::integer(0));
  b.add_edge(g2, g2, WeightLabel::integer(0));
  b.set_initial(g0);
  return std::move(b).build();
}

std::optional<int64_t> gadget_capacity_sweep(const Arena& gadget, int64_t cap_max) {
  for (int64_t cap = 0; cap <= cap_max; ++cap) {
    if (solve_objective(gadget, obj::AvgRecharge{cap, Rational(0)}).winner == Player::P0) return cap;
  }
  return std::nullopt;
}

SolveResult solve_objective(const Arena& a, const Objective& o) {
  check_mode(a, o);
  return std::visit(
      overloaded{
          [&](const obj::EnergyL&) { return solve_energy_l(a); },
          [&](const obj::EnergyLU& x) { return solve_energy_lu(a, x.cap); },
          [&](const obj::AvgEnergy&) -> SolveResult {
            throw std::invalid_argument("AvgEnergy with a given threshold has no decision procedure here");
          },
          [&](const obj::AvgEnergyL&) -> SolveResult {
            throw std::invalid_argument("AvgEnergy_L with a given threshold has no decision procedure here");
          },
          [&](const obj::AvgEnergyLU& x) { return solve_through(a, reduce_avg_energy_lu(a, x.cap, x.t)); },
          [&](const obj::Recharge& x) { return solve_recharge(a, x.cap); },
          [&](const obj::AvgRecharge& x) { return solve_through(a, reduce_avg_recharge(a, x.cap, x.t)); },
          [&](const obj::MeanPayoff& x) { return solve_mean_payoff_threshold(a, x.t); },
          [&](const obj::Parity& x) { return solve_parity3(a, x.coloring); },
          [&](const obj::Countdown& x) { return solve_countdown(a, x.budget); },
      },
      o);
}

}  // namespace qg
