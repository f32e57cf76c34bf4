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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qg/arena.hpp"
#include "qg/evaluation.hpp"
#include "qg/strategies.hpp"

namespace qg {

struct SweepPoint {
  int64_t x = 0;  // capacity or memory size
  ObjectiveValue value = ObjectiveValue::plus_infinity();
};

/// QG_JOBS when set to a positive integer, otherwise the hardware concurrency.
unsigned default_jobs();

/// Least long-run average of the recharge levels Player0 can guarantee with
/// capacity `cap`; +inf when she cannot avoid a violation.
ObjectiveValue optimal_avg_recharge(const Arena& a, int64_t cap);

/// optimal_avg_recharge for every cap in [from, to]. `jobs` = 0 uses default_jobs().
std::vector<SweepPoint> sweep_capacity(const Arena& a, int64_t from, int64_t to, unsigned jobs = 0);

/// For each n in [from, to], the best worst-case AvgRecharge(cap) value of a Player0
/// strategy with at most n memory states, on a solitaire arena.
std::vector<SweepPoint> sweep_memory(const Arena& a, int64_t cap, int64_t from, int64_t to, unsigned jobs = 0,
                                     uint64_t limit = kDefaultEnumerationLimit);

/// `<key>,numerator,denominator,status` rows; status is OK, INF, -INF or VIOLATED@<index>.
std::string sweep_csv(const std::vector<SweepPoint>& points, std::string_view key);

/// Horizontal bar chart of the finite values.
std::string ascii_plot(const std::vector<SweepPoint>& points, std::string_view key, int width = 50);

}  // namespace qg
