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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qg/evaluation.hpp"
#include "qg/fixtures.hpp"
#include "qg/io.hpp"
#include "qg/objective.hpp"
#include "qg/oracle.hpp"
#include "qg/reductions.hpp"
#include "qg/solvers.hpp"
#include "qg/strategies.hpp"
#include "qg/tradeoff.hpp"

namespace qg::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Loaded {
  Arena arena;
  std::string text;  // file contents, empty for built-in arenas
};

/// A file path, or a built-in arena such as @INTRO, MEMLB or CYCLE(3,1).
Loaded load_arena(const std::string& spec) {
  if (!spec.starts_with('@') && std::filesystem::exists(spec)) {
    std::string text = read_file(spec);
    return {parse_arena(text), text};
  }
  if (auto a = fixtures::by_name(spec)) return {std::move(*a), ""};
  throw UsageError("no arena file or built-in arena named '" + spec + "'");
}

struct ObjectiveArgs {
  std::string name;
  std::optional<int64_t> cap;
  std::string threshold;
  std::string color_file;
  std::optional<int64_t> budget;

  void add_to(CLI::App* app, bool objective_required) {
    auto* o = app->add_option("--objective", name, "objective name");
    if (objective_required) o->required();
    app->add_option("--cap", cap, "energy capacity");
    app->add_option("--threshold", threshold, "threshold P/Q or integer");
    app->add_option("--color-file", color_file, "file with color lines");
    app->add_option("--budget", budget, "countdown budget");
  }

  int64_t need_cap() const {
    if (!cap) throw UsageError("objective " + name + " needs --cap");
    if (*cap < 0) throw UsageError("--cap must be non-negative");
    return *cap;
  }
  Rational need_threshold() const {
    if (threshold.empty()) throw UsageError("objective " + name + " needs --threshold");
    try {
      return Rational::parse(threshold);
    } catch (const std::invalid_argument& e) {
      throw UsageError("bad --threshold '" + threshold + "': " + e.what());
    }
  }
  Coloring need_coloring(const Loaded& l) const {
    if (!color_file.empty()) return parse_coloring(l.arena, read_file(color_file));
    if (l.text.find("\ncolor ") != std::string::npos) return parse_coloring(l.arena, l.text);
    throw UsageError("objective parity3 needs --color-file");
  }

  Objective build(const Loaded& l) const {
    if (name == "energy-l") return obj::EnergyL{};
    if (name == "energy-lu") return obj::EnergyLU{need_cap()};
    if (name == "avg-energy") return obj::AvgEnergy{need_threshold()};
    if (name == "avg-energy-l") return obj::AvgEnergyL{need_threshold()};
    if (name == "avg-energy-lu") return obj::AvgEnergyLU{need_cap(), need_threshold()};
    if (name == "recharge") return obj::Recharge{need_cap()};
    if (name == "avg-recharge") return obj::AvgRecharge{need_cap(), need_threshold()};
    if (name == "mean-payoff") return obj::MeanPayoff{need_threshold()};
    if (name == "parity3") return obj::Parity{need_coloring(l)};
    if (name == "countdown") {
      if (!budget) throw UsageError("objective countdown needs --budget");
      return obj::Countdown{CountdownBudget{*budget}};
    }
    throw UsageError("unknown objective '" + name + "'");
  }

  /// The long-run family measured by eval-lasso, if the objective has one.
  std::optional<ValueFamily> family() const {
    if (name == "avg-energy") return ValueFamily::avg_energy();
    if (name == "avg-energy-l") return ValueFamily::avg_energy_l();
    if (name == "avg-energy-lu") return ValueFamily::avg_energy_lu(need_cap());
    if (name == "avg-recharge") return ValueFamily::avg_recharge(need_cap());
    if (name == "mean-payoff") return ValueFamily::mean_payoff();
    return std::nullopt;
  }
};

ObjectiveValue lasso_value(const Arena& a, const Lasso& l, const ValueFamily& f) {
  switch (f.kind) {
    case ValueFamily::Kind::AvgEnergy: return avg_energy_of_lasso(a, l, EvalMode::plain());
    case ValueFamily::Kind::AvgEnergyL: return avg_energy_of_lasso(a, l, EvalMode::lower_bounded());
    case ValueFamily::Kind::AvgEnergyLU: return avg_energy_of_lasso(a, l, EvalMode::bounded(f.cap));
    case ValueFamily::Kind::AvgRecharge: return avg_energy_of_lasso(a, l, EvalMode::recharge_with(f.cap));
    case ValueFamily::Kind::MeanPayoff: break;
  }
  return ObjectiveValue::finite(mean_payoff_of_lasso(a, l));
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  write_file_atomic(path, content);
  out << "wrote " << path << "\n";
}

int winner_code(Player p) { return p == Player::P0 ? kExitPlayer0 : kExitPlayer1; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted two-player graph games: solving, reductions, verification and sweeps", "qgame"};
  app.require_subcommand(1);
  std::function<int()> action;
  std::string arena_spec;
  auto arena_arg = [&](CLI::App* sub) {
    sub->add_option("arena", arena_spec, "arena file or built-in (@INTRO, @MEMLB, @TRADEOFF, @CYCLE(n,W))")->required();
  };

  ObjectiveArgs solve_args;
  std::string strategy_out, certificate_out;
  auto* solve = app.add_subcommand("solve", "decide who wins an objective from the initial vertex");
  solve_args.add_to(solve, true);
  solve->add_option("--strategy-out,--emit-strategy", strategy_out, "write the winner's strategy");
  solve->add_option("--certificate-out,--emit-certificate", certificate_out, "write the solver certificate");
  arena_arg(solve);
  solve->callback([&] {
    action = [&] {
      Loaded l = load_arena(arena_spec);
      Objective o = solve_args.build(l);
      SolveResult r = solve_objective(l.arena, o);
      out << "objective=" << describe(o) << "\n";
      out << "winner=" << to_string(r.winner) << "\n";
      if (solve_args.name == "mean-payoff") {
        out << "value=" << mean_payoff_value(l.arena, l.arena.initial()).str() << "\n";
      }
      if (!strategy_out.empty()) {
        if (!r.strategy) throw std::runtime_error("the solver produced no strategy for " + to_string(r.winner));
        write_file_atomic(strategy_out, serialize_strategy(l.arena, *r.strategy));
      }
      if (!certificate_out.empty()) write_file_atomic(certificate_out, r.certificate + "\n");
      return winner_code(r.winner);
    };
  });

  auto* exists_cap = app.add_subcommand("exists-cap", "is there a capacity for which Player0 wins Recharge");
  exists_cap->add_option("--strategy-out", strategy_out, "write the witness strategy");
  arena_arg(exists_cap);
  exists_cap->callback([&] {
    action = [&] {
      Loaded l = load_arena(arena_spec);
      ExistsCapResult r = exists_cap_recharge(l.arena);
      if (!r.yes) {
        out << "result=NO\n";
        return kExitPlayer1;
      }
      out << "result=YES cap=" << r.cap << "\n";
      out << "witness_memory=" << reachable_memory_states(l.arena, *r.strategy) << "\n";
      if (r.fallback_used) out << "note=capacity from the product-size bound\n";
      if (!strategy_out.empty()) write_file_atomic(strategy_out, serialize_strategy(l.arena, *r.strategy));
      return kExitPlayer0;
    };
  });

  std::optional<int64_t> cap_max;
  auto bounded_search = [&](const std::string& name, const std::string& help, bool threshold) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--cap-max", cap_max, "largest capacity searched");
    sub->add_option("--strategy-out", strategy_out, "write the witness strategy");
    arena_arg(sub);
    sub->callback([&, threshold] {
      action = [&, threshold] {
        Loaded l = load_arena(arena_spec);
        if (cap_max && *cap_max < 0) throw UsageError("--cap-max must be non-negative");
        ExistsCapResult r = threshold ? exists_threshold_avg_energy_l(l.arena, cap_max)
                                      : exists_cap_energy_lu(l.arena, cap_max);
        if (!r.yes) {
          out << "result=NO-UP-TO-BOUND bound=" << r.searched_up_to << "\n";
          return kExitPlayer1;
        }
        out << "result=YES cap=" << r.cap;
        if (threshold) out << " threshold=" << r.cap;
        out << "\n";
        if (!strategy_out.empty()) write_file_atomic(strategy_out, serialize_strategy(l.arena, *r.strategy));
        return kExitPlayer0;
      };
    });
  };
  bounded_search("exists-cap-lu", "least capacity for which Player0 wins Energy_LU", false);
  bounded_search("exists-threshold", "integer threshold for which Player0 wins AvgEnergy_L", true);

  ObjectiveArgs verify_args;
  std::string strategy_file;
  auto* verify = app.add_subcommand("verify-strategy", "check that every consistent play meets the objective");
  verify_args.add_to(verify, true);
  verify->add_option("--strategy", strategy_file, "strategy file")->required();
  arena_arg(verify);
  verify->callback([&] {
    action = [&] {
      Loaded l = load_arena(arena_spec);
      Objective o = verify_args.build(l);
      FiniteStateStrategy s = parse_strategy(l.arena, read_file(strategy_file));
      Verdict v = verify_strategy(l.arena, s, o);
      out << "verdict=" << (v.accepted ? "ACCEPTED" : "REJECTED") << "\n";
      if (v.worst_value) out << "worst=" << v.worst_value->str() << "\n";
      if (v.witness) out << "witness=" << format_lasso(l.arena, *v.witness) << "\n";
      if (!v.detail.empty()) out << "detail=" << v.detail << "\n";
      return v.accepted ? kExitPlayer0 : kExitPlayer1;
    };
  });

  int64_t from = 0, to = 0, sweep_cap = 0;
  unsigned jobs = 0;
  std::string out_file;
  bool plot = false;
  uint64_t limit = kDefaultEnumerationLimit;
  auto sweep_options = [&](CLI::App* sub) {
    sub->add_option("--from", from, "first point")->required();
    sub->add_option("--to", to, "last point")->required();
    sub->add_option("--out", out_file, "CSV output file (stdout if absent)");
    sub->add_option("--jobs", jobs, "worker threads (default: QG_JOBS or all cores)");
    sub->add_flag("--ascii-plot", plot, "print a text chart");
    arena_arg(sub);
  };
  auto finish_sweep = [&](const std::vector<SweepPoint>& points, const char* key) {
    emit(out_file, sweep_csv(points, key), out);
    if (plot) out << ascii_plot(points, key);
    return 0;
  };
  auto* sweep_cap_cmd = app.add_subcommand("sweep-cap", "optimal AvgRecharge value for each capacity");
  sweep_options(sweep_cap_cmd);
  sweep_cap_cmd->callback([&] {
    action = [&] {
      Loaded l = load_arena(arena_spec);
      return finish_sweep(sweep_capacity(l.arena, from, to, jobs), "cap");
    };
  });
  auto* sweep_mem_cmd = app.add_subcommand("sweep-memory", "best AvgRecharge value for each memory size");
  sweep_options(sweep_mem_cmd);
  sweep_mem_cmd->add_option("--cap", sweep_cap, "capacity")->required();
  sweep_mem_cmd->add_option("--limit", limit, "enumeration guard");
  sweep_mem_cmd->callback([&] {
    action = [&] {
      Loaded l = load_arena(arena_spec);
      return finish_sweep(sweep_memory(l.arena, sweep_cap, from, to, jobs, limit), "n");
    };
  });

  ObjectiveArgs reduce_args;
  std::string kind;
  auto* reduce = app.add_subcommand("reduce", "write a reduced arena");
  reduce->add_option("--kind", kind, "avg-recharge-mp, avg-energy-lu-mp, exists-cap-parity, countdown-avg-recharge or fig4")
      ->required();
  reduce->add_option("--cap", reduce_args.cap, "capacity");
  reduce->add_option("--threshold", reduce_args.threshold, "threshold P/Q");
  reduce->add_option("--budget", reduce_args.budget, "countdown budget");
  reduce->add_option("--out", out_file, "output file (stdout if absent)");
  arena_arg(reduce);
  reduce->callback([&] {
    action = [&] {
      Loaded l = load_arena(arena_spec);
      const Arena& a = l.arena;
      reduce_args.name = kind;
      std::string text;
      auto need_budget = [&] {
        if (!reduce_args.budget) throw UsageError("--kind " + kind + " needs --budget");
        return CountdownBudget{*reduce_args.budget};
      };
      if (kind == "avg-recharge-mp" || kind == "avg-energy-lu-mp") {
        ReductionOutput r = kind == "avg-recharge-mp"
                                ? reduce_avg_recharge(a, reduce_args.need_cap(), reduce_args.need_threshold())
                                : reduce_avg_energy_lu(a, reduce_args.need_cap(), reduce_args.need_threshold());
        text = "# " + r.objective_note + "\n" + serialize_arena(r.product.arena) +
               serialize_backmap(a, r.product, r.namer);
      } else if (kind == "exists-cap-parity") {
        ParityReduction r = reduce_exists_cap_to_parity(a);
        text = "# Parity with colors R=2 N=1 Z=0\n" + serialize_arena(r.product.arena) +
               serialize_coloring(r.product.arena, r.coloring) + serialize_backmap(a, r.product, r.namer);
      } else if (kind == "countdown-avg-recharge") {
        ReductionOutput r = reduce_countdown_to_avg_recharge(a, need_budget());
        text = "# " + r.objective_note + "\n" + serialize_arena(r.product.arena) + serialize_backmap(a, r.product);
      } else if (kind == "fig4") {
        CountdownBudget c = need_budget();
        text = "# gadget for countdown budget " + std::to_string(c.c) + "\n" + serialize_arena(build_fig4_gadget(a, c));
      } else {
        throw UsageError("unknown reduction kind '" + kind + "'");
      }
      emit(out_file, text, out);
      return 0;
    };
  });

  uint64_t seed = 0;
  oracle::GenParams gen_params;
  bool countdown = false;
  size_t side = 3;
  int64_t max_budget = 12;
  auto* gen = app.add_subcommand("gen", "write a seeded random arena");
  gen->add_option("--seed", seed, "random seed")->required();
  gen->add_option("--vertices", gen_params.vertices, "vertex count");
  gen->add_option("--density", gen_params.edge_density, "edge probability");
  gen->add_option("--max-weight", gen_params.max_weight, "largest absolute weight");
  gen->add_flag("--recharge", gen_params.recharge_mode, "recharge arena (weights <= 0 and R edges)");
  gen->add_option("--recharge-prob", gen_params.recharge_probability, "chance of an R edge");
  gen->add_option("--p0-fraction", gen_params.player0_fraction, "chance that a vertex belongs to Player0");
  gen->add_flag("--countdown", countdown, "countdown-shaped arena");
  gen->add_option("--side", side, "countdown: vertices per player at most");
  gen->add_option("--max-budget", max_budget, "countdown: largest budget");
  gen->add_option("--out", out_file, "output file (stdout if absent)");
  gen->callback([&] {
    action = [&] {
      std::string text = "# seed " + std::to_string(seed) + "\n";
      if (countdown) {
        auto inst = oracle::random_countdown(seed, side, gen_params.max_weight, max_budget);
        text += "# budget " + std::to_string(inst.budget.c) + "\n" + serialize_arena(inst.arena);
      } else {
        text += serialize_arena(oracle::random_arena(gen_params, seed));
      }
      emit(out_file, text, out);
      return 0;
    };
  });

  ObjectiveArgs lasso_args;
  lasso_args.name = "avg-energy";
  std::string lasso_text;
  auto* eval = app.add_subcommand("eval-lasso", "evaluate an ultimately periodic play");
  eval->add_option("--lasso", lasso_text, "\"prefix: v0 ; cycle: v2 v0 v1\"")->required();
  lasso_args.add_to(eval, false);
  arena_arg(eval);
  eval->callback([&] {
    action = [&] {
      Loaded l = load_arena(arena_spec);
      Lasso lasso = parse_lasso(l.arena, lasso_text);
      if (auto f = lasso_args.family()) {
        out << "value=" << lasso_value(l.arena, lasso, *f).str() << "\n";
        if (lasso_args.threshold.empty()) return 0;
      }
      out << "satisfied=" << (lasso_satisfies(l.arena, lasso, lasso_args.build(l)) ? "yes" : "no") << "\n";
      return 0;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace qg::cli
