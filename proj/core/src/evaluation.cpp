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

#include "qg/evaluation.hpp"

#include <algorithm>
#include <sstream>

namespace qg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const WeightLabel& label(const Arena& a, VertexId u, VertexId v) {
  auto e = a.find_edge(u, v);
  if (!e) throw ArenaError("not an edge: " + a.name(u) + " -> " + a.name(v));
  return a.edge(*e).weight;
}

int64_t int_weight(const Arena& a, VertexId u, VertexId v) {
  const auto& w = label(a, u, v);
  if (w.is_recharge()) throw ArenaError("recharge edge " + a.name(u) + " -> " + a.name(v) + " in an integer-weight evaluation");
  return w.value();
}

// Earliest position P + k*p + j at which base + s[j] + k*d leaves the allowed range.
// `lower` tests level < 0, otherwise level > cap.
std::optional<int64_t> first_cycle_violation(int64_t prefix_len, int64_t base, const std::vector<int64_t>& s, int64_t d,
                                             bool lower, int64_t cap) {
  std::optional<int64_t> best;
  auto p = static_cast<int64_t>(s.size());
  for (int64_t j = 0; j < p; ++j) {
    int64_t level = checked::add(base, s[j]);
    std::optional<int64_t> k;
    if (lower) {
      if (level < 0) k = 0;
      else if (d < 0) k = level / -d + 1;
    } else {
      if (level > cap) k = 0;
      else if (d > 0) k = (cap - level) / d + 1;
    }
    if (!k) continue;
    int64_t idx = checked::add(prefix_len, checked::add(checked::mul(*k, p), j));
    if (!best || idx < *best) best = idx;
  }
  return best;
}

}  // namespace

void Lasso::validate(const Arena& a) const {
  if (cycle.empty()) throw ArenaError("lasso cycle is empty");
  for (VertexId v : prefix) {
    if (v >= a.num_vertices()) throw ArenaError("lasso vertex out of range");
  }
  for (VertexId v : cycle) {
    if (v >= a.num_vertices()) throw ArenaError("lasso vertex out of range");
  }
  VertexId first = prefix.empty() ? cycle.front() : prefix.front();
  if (first != a.initial()) throw ArenaError("lasso does not start at the initial vertex");
  auto need = [&](VertexId u, VertexId v) {
    if (!a.find_edge(u, v)) throw ArenaError("lasso step " + a.name(u) + " -> " + a.name(v) + " is not an edge");
  };
  for (size_t i = 0; i + 1 < prefix.size(); ++i) need(prefix[i], prefix[i + 1]);
  if (!prefix.empty()) need(prefix.back(), cycle.front());
  for (size_t i = 0; i < cycle.size(); ++i) need(cycle[i], cycle[(i + 1) % cycle.size()]);
}

Lasso parse_lasso(const Arena& a, std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ArenaError("lasso needs 'prefix: ... ; cycle: ...'");
  auto part = [&](std::string_view s, std::string_view key) {
    std::istringstream is{std::string(s)};
    std::string tok;
    if (!(is >> tok) || tok != std::string(key) + ":") throw ArenaError("expected '" + std::string(key) + ":' in lasso");
    std::vector<VertexId> out;
    while (is >> tok) out.push_back(a.vertex(tok));
    return out;
  };
  Lasso l{part(text.substr(0, semi), "prefix"), part(text.substr(semi + 1), "cycle")};
  l.validate(a);
  return l;
}

std::string format_lasso(const Arena& a, const Lasso& l) {
  std::string out = "prefix:";
  for (VertexId v : l.prefix) out += " " + a.name(v);
  out += " ; cycle:";
  for (VertexId v : l.cycle) out += " " + a.name(v);
  return out;
}

std::string to_string(ViolationReason r) {
  switch (r) {
    case ViolationReason::LowerBound:
      return "LowerBound";
    case ViolationReason::UpperBound:
      return "UpperBound";
    case ViolationReason::NegativeRecharge:
      return "NegativeRecharge";
  }
  return "?";
}

bool ObjectiveValue::at_most(const Rational& t) const {
  return kind_ == Kind::MinusInfinity || (kind_ == Kind::Finite && value_ <= t);
}

std::string ObjectiveValue::str() const {
  switch (kind_) {
    case Kind::MinusInfinity:
      return "-INF";
    case Kind::Finite:
      return value_.str();
    case Kind::PlusInfinity:
      return "INF";
    case Kind::Violated:
      return "VIOLATED(" + to_string(reason_) + "@" + std::to_string(index_) + ")";
  }
  return "?";
}

std::strong_ordering operator<=>(const ObjectiveValue& a, const ObjectiveValue& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ == ObjectiveValue::Kind::Finite) return a.value_ <=> b.value_;
  if (a.kind_ == ObjectiveValue::Kind::Violated) {
    if (a.index_ != b.index_) return b.index_ <=> a.index_;
    return static_cast<int>(a.reason_) <=> static_cast<int>(b.reason_);
  }
  return std::strong_ordering::equal;
}

int64_t energy_level(const Arena& a, std::span<const VertexId> prefix) {
  int64_t sum = 0;
  for (size_t i = 0; i + 1 < prefix.size(); ++i) sum = checked::add(sum, int_weight(a, prefix[i], prefix[i + 1]));
  return sum;
}

int64_t recharge_energy_level(const Arena& a, int64_t cap, std::span<const VertexId> prefix) {
  int64_t level = cap;
  for (size_t i = 0; i + 1 < prefix.size(); ++i) {
    const auto& w = label(a, prefix[i], prefix[i + 1]);
    level = w.is_recharge() ? cap : checked::add(level, w.value());
  }
  return level;
}

ObjectiveValue avg_energy_of_lasso(const Arena& a, const Lasso& l, EvalMode mode) {
  l.validate(a);
  const auto P = static_cast<int64_t>(l.prefix.size());
  const auto p = static_cast<int64_t>(l.cycle.size());
  const bool recharge = mode.kind == EvalMode::Kind::RechargeWith;
  if (recharge) {
    a.require_recharge_mode("recharge evaluation");
  } else {
    a.require_integer_weights("energy evaluation");
  }
  auto step = [&](int64_t level, int64_t i) {
    const auto& w = label(a, l.at(i), l.at(i + 1));
    if (w.is_recharge()) return mode.cap;
    return checked::add(level, w.value());
  };

  if (recharge) {
    bool cycle_recharges = false;
    for (int64_t j = 0; j < p; ++j) cycle_recharges |= label(a, l.cycle[j], l.cycle[(j + 1) % p]).is_recharge();
    int64_t level = mode.cap;
    if (cycle_recharges) {
      // Levels are periodic from the first recharge inside the cycle, which happens before P + p.
      Rational sum = 0;
      for (int64_t i = 0; i < P + 2 * p; ++i) {
        if (i > 0) level = step(level, i - 1);
        if (level < 0) return ObjectiveValue::violated(ViolationReason::NegativeRecharge, i);
        if (i >= P + p) sum += level;
      }
      return ObjectiveValue::finite(sum / p);
    }
    for (int64_t i = 0; i < P; ++i) {
      if (i > 0) level = step(level, i - 1);
      if (level < 0) return ObjectiveValue::violated(ViolationReason::NegativeRecharge, i);
    }
    if (P > 0) level = step(level, P - 1);
    std::vector<int64_t> s(p, 0);
    for (int64_t j = 1; j < p; ++j) s[j] = checked::add(s[j - 1], int_weight(a, l.cycle[j - 1], l.cycle[j]));
    int64_t d = checked::add(s[p - 1], int_weight(a, l.cycle[p - 1], l.cycle[0]));
    if (auto idx = first_cycle_violation(P, level, s, d, true, 0)) {
      return ObjectiveValue::violated(ViolationReason::NegativeRecharge, *idx);
    }
    Rational sum = 0;
    for (int64_t j = 0; j < p; ++j) sum += checked::add(level, s[j]);
    return ObjectiveValue::finite(sum / p);
  }

  const bool lower = mode.kind != EvalMode::Kind::Plain;
  const bool upper = mode.kind == EvalMode::Kind::Bounded;
  int64_t level = 0;
  std::optional<ObjectiveValue> violation;
  for (int64_t i = 0; i < P && !violation; ++i) {
    if (i > 0) level = step(level, i - 1);
    if (lower && level < 0) violation = ObjectiveValue::violated(ViolationReason::LowerBound, i);
    else if (upper && level > mode.cap) violation = ObjectiveValue::violated(ViolationReason::UpperBound, i);
  }
  if (violation) return *violation;
  if (P > 0) level = step(level, P - 1);
  std::vector<int64_t> s(p, 0);
  for (int64_t j = 1; j < p; ++j) s[j] = checked::add(s[j - 1], int_weight(a, l.cycle[j - 1], l.cycle[j]));
  int64_t d = checked::add(s[p - 1], int_weight(a, l.cycle[p - 1], l.cycle[0]));
  std::optional<int64_t> lo = lower ? first_cycle_violation(P, level, s, d, true, 0) : std::nullopt;
  std::optional<int64_t> hi = upper ? first_cycle_violation(P, level, s, d, false, mode.cap) : std::nullopt;
  if (lo && (!hi || *lo <= *hi)) return ObjectiveValue::violated(ViolationReason::LowerBound, *lo);
  if (hi) return ObjectiveValue::violated(ViolationReason::UpperBound, *hi);
  if (d > 0) return ObjectiveValue::plus_infinity();
  if (d < 0) return ObjectiveValue::minus_infinity();
  Rational sum = 0;
  for (int64_t j = 0; j < p; ++j) sum += checked::add(level, s[j]);
  return ObjectiveValue::finite(sum / p);
}

Rational mean_payoff_of_lasso(const Arena& a, const Lasso& l) {
  l.validate(a);
  int64_t sum = 0;
  for (size_t j = 0; j < l.cycle.size(); ++j) {
    sum = checked::add(sum, int_weight(a, l.cycle[j], l.cycle[(j + 1) % l.cycle.size()]));
  }
  return Rational(sum, static_cast<int64_t>(l.cycle.size()));
}

std::optional<VertexId> countdown_sink(const Arena& a) {
  std::optional<VertexId> sink;
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    auto out = a.out_edges(v);
    if (a.owner(v) == Player::P1 && out.size() == 1 && a.edge(out[0]).dst == v) {
      if (sink) return std::nullopt;
      sink = v;
    }
  }
  return sink;
}

bool lasso_satisfies(const Arena& a, const Lasso& l, const Objective& o) {
  return std::visit(
      overloaded{
          [&](const obj::EnergyL&) { return !avg_energy_of_lasso(a, l, EvalMode::lower_bounded()).is_violated(); },
          [&](const obj::EnergyLU& x) { return !avg_energy_of_lasso(a, l, EvalMode::bounded(x.cap)).is_violated(); },
          [&](const obj::AvgEnergy& x) { return avg_energy_of_lasso(a, l, EvalMode::plain()).at_most(x.t); },
          [&](const obj::AvgEnergyL& x) { return avg_energy_of_lasso(a, l, EvalMode::lower_bounded()).at_most(x.t); },
          [&](const obj::AvgEnergyLU& x) { return avg_energy_of_lasso(a, l, EvalMode::bounded(x.cap)).at_most(x.t); },
          [&](const obj::Recharge& x) {
            return !avg_energy_of_lasso(a, l, EvalMode::recharge_with(x.cap)).is_violated();
          },
          [&](const obj::AvgRecharge& x) {
            return avg_energy_of_lasso(a, l, EvalMode::recharge_with(x.cap)).at_most(x.t);
          },
          [&](const obj::MeanPayoff& x) { return mean_payoff_of_lasso(a, l) <= x.t; },
          [&](const obj::Parity& x) {
            l.validate(a);
            int top = -1;
            for (VertexId v : l.cycle) top = std::max(top, x.coloring[v]);
            return top % 2 == 0;
          },
          [&](const obj::Countdown& x) {
            l.validate(a);
            auto sink = countdown_sink(a);
            if (!sink) throw ArenaError("countdown objective needs a sink vertex");
            const auto P = static_cast<int64_t>(l.prefix.size());
            const auto p = static_cast<int64_t>(l.cycle.size());
            int64_t d = 0;
            for (int64_t j = 0; j < p; ++j) d = checked::add(d, int_weight(a, l.cycle[j], l.cycle[(j + 1) % p]));
            if (d > 0) throw ArenaError("countdown objective on a cycle with positive weight");
            int64_t remaining = x.budget.c;
            for (int64_t i = 0;; ++i) {
              if (i > 0) remaining = checked::add(remaining, int_weight(a, l.at(i - 1), l.at(i)));
              if (l.at(i) == *sink && remaining == 0) return true;
              if (remaining < 0) return false;  // weights are non-positive from here on
              if (d == 0 && i >= P + p) return false;
            }
          },
      },
      o);
}

}  // namespace qg
