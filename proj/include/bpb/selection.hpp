#pragma once

#include <optional>

#include "bpb/instance.hpp"

namespace bpb {

// Inspection-order tie resolution among equal bang-per-buck modules.
struct TieBreak {
  enum class Kind { ByCostRatio, ByIndex, Explicit };
  Kind kind = Kind::ByCostRatio;
  std::vector<int> perm;  // Explicit only: modules listed in priority order (0-based)

  static TieBreak by_cost_ratio() { return {Kind::ByCostRatio, {}}; }
  static TieBreak by_index() { return {Kind::ByIndex, {}}; }
  static TieBreak explicit_order(std::vector<int> perm) { return {Kind::Explicit, std::move(perm)}; }

  // true if i beats j under this rule (used only on exact bang-per-buck ties)
  bool prefers(const Instance& inst, int i, int j) const;
};

enum class Rule { Bpb, Knapsack, Skip, Opt };

// Serial reference vs. OpenMP execution for the parallel kernels.
enum class ExecPolicy { Serial, Parallel };

// Descending v(i)/p(i), exact comparisons by cross multiplication.
// p(i)=0 with v(i)>0 sorts first; v(i)=0 modules sort last (ratio 0).
std::vector<int> bpb_order(const Instance& inst, const PriceVector& p, const TieBreak& tb);

// Circuit-swap greedy: admit in bang-per-buck order; a spanned module evicts
// the minimum-value member of its fundamental circuit (ties: the
// latest-inspected member loses); stop, without committing, at the first
// budget violation.
// unbounded_budget disables the budget check entirely.
SelectionResult greedy_bpb(const Instance& inst, const PriceVector& p, const TieBreak& tb,
                           bool unbounded_budget = false);

// Free-matroid greedy: stop at the first module that does not fit the budget.
SelectionResult greedy_knapsack(const Instance& inst, const PriceVector& p,
                                const TieBreak& tb = TieBreak::by_cost_ratio());

// Skip matroid-infeasible modules, stop at the first budget violation by a
// feasible one.
SelectionResult greedy_skip(const Instance& inst, const PriceVector& p, const TieBreak& tb);

// Exhaustive max-value independent budget-feasible set; ties resolved to the
// lexicographically smallest set. Refuses n above the cap.
SelectionResult optimal_select(const Instance& inst, const PriceVector& p, int cap = 20);

SelectionResult run_rule(Rule rule, const Instance& inst, const PriceVector& p, const TieBreak& tb);

// Largest bid in `grid_bids` at which module i gets selected with the other
// prices fixed; full scan, one selection run per grid point.
std::optional<Scalar> critical_price(const Instance& inst, const PriceVector& p, int i,
                                     const std::vector<Scalar>& grid_bids, Rule rule,
                                     const TieBreak& tb, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace bpb
