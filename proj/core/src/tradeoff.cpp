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

#include "qg/tradeoff.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qg/oracle.hpp"
#include "qg/solvers.hpp"

namespace qg {

namespace {

/// Runs task(i) for i in [0, n) on up to `jobs` threads; rethrows the first failure.
void parallel_for(size_t n, unsigned jobs, const std::function<void(size_t)>& task) {
  if (jobs == 0) jobs = default_jobs();
  jobs = static_cast<unsigned>(std::min<size_t>(jobs, n));
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < n;) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_range(int64_t from, int64_t to, int64_t min) {
  if (from < min || to < from) {
    throw std::invalid_argument("bad sweep range [" + std::to_string(from) + ", " + std::to_string(to) + "]");
  }
}

}  // namespace

unsigned default_jobs() {
  if (const char* env = std::getenv("QG_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ObjectiveValue optimal_avg_recharge(const Arena& a, int64_t cap) {
  EnergyMemory mem(a, cap, EnergyMemory::Mode::Recharge);
  EnergySafety es = solve_energy_safety(a, mem);
  const Arena& p = es.product.arena;
  if (!es.safe[p.initial()]) return ObjectiveValue::plus_infinity();
  ArenaBuilder b;
  std::vector<VertexId> id(p.num_vertices(), kNoVertex);
  for (VertexId v = 0; v < p.num_vertices(); ++v) {
    if (es.safe[v]) id[v] = b.add_vertex(p.name(v), p.owner(v));
  }
  for (const Edge& e : p.edges()) {
    if (id[e.src] == kNoVertex || id[e.dst] == kNoVertex) continue;
    b.add_edge(id[e.src], id[e.dst], WeightLabel::integer(static_cast<int64_t>(es.product.origin[e.src].second)));
  }
  b.set_initial(id[p.initial()]);
  Arena safe = std::move(b).build();
  return ObjectiveValue::finite(mean_payoff_value(safe, safe.initial()));
}

std::vector<SweepPoint> sweep_capacity(const Arena& a, int64_t from, int64_t to, unsigned jobs) {
  check_range(from, to, 0);
  a.require_recharge_mode("capacity sweep");
  std::vector<SweepPoint> out(static_cast<size_t>(to - from + 1));
  parallel_for(out.size(), jobs, [&](size_t i) {
    int64_t cap = from + static_cast<int64_t>(i);
    out[i] = {cap, optimal_avg_recharge(a, cap)};
  });
  return out;
}

std::vector<SweepPoint> sweep_memory(const Arena& a, int64_t cap, int64_t from, int64_t to, unsigned jobs,
                                     uint64_t limit) {
  check_range(from, to, 1);
  oracle::require_solitaire(a);
  a.require_recharge_mode("memory sweep");
  if (cap < 0) throw std::invalid_argument("capacity must be non-negative");
  const auto family = ValueFamily::avg_recharge(cap);
  std::vector<std::optional<ObjectiveValue>> exact(static_cast<size_t>(to));
  parallel_for(exact.size(), jobs, [&](size_t i) {
    enumerate_strategies(
        a, i + 1,
        [&](const FiniteStateStrategy& s) {
          ObjectiveValue v = worst_consistent_value(a, s, family);
          if (!exact[i] || v < *exact[i]) exact[i] = v;
          return true;
        },
        limit);
  });
  std::vector<SweepPoint> out;
  std::optional<ObjectiveValue> best;
  for (int64_t n = 1; n <= to; ++n) {
    const auto& e = exact[static_cast<size_t>(n - 1)];
    if (e && (!best || *e < *best)) best = e;
    if (n >= from) out.push_back({n, best.value_or(ObjectiveValue::plus_infinity())});
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& points, std::string_view key) {
  std::ostringstream os;
  os << key << ",numerator,denominator,status\n";
  for (const auto& p : points) {
    os << p.x << ',';
    switch (p.value.kind()) {
      case ObjectiveValue::Kind::Finite:
        os << p.value.value().num() << ',' << p.value.value().den() << ",OK\n";
        break;
      case ObjectiveValue::Kind::PlusInfinity:
        os << ",,INF\n";
        break;
      case ObjectiveValue::Kind::MinusInfinity:
        os << ",,-INF\n";
        break;
      case ObjectiveValue::Kind::Violated:
        os << ",,VIOLATED@" << p.value.index() << '\n';
        break;
    }
  }
  return os.str();
}

std::string ascii_plot(const std::vector<SweepPoint>& points, std::string_view key, int width) {
  Rational top(0);
  for (const auto& p : points) {
    if (p.value.is_finite()) top = std::max(top, p.value.value());
  }
  std::ostringstream os;
  for (const auto& p : points) {
    os << key << '=' << p.x << '\t';
    if (!p.value.is_finite()) {
      os << p.value.str() << '\n';
      continue;
    }
    int len = 0;
    if (top > Rational(0) && p.value.value() > Rational(0)) {
      Rational scaled = p.value.value() * Rational(width) / top;
      len = static_cast<int>(scaled.floor());
    }
    os << std::string(static_cast<size_t>(len), '#') << ' ' << p.value.str() << '\n';
  }
  return os.str();
}

}  // namespace qg
