#pragma once

#include <string>

#include "bpb/selection.hpp"

namespace bpb {

// Per-iteration snapshot of an equilibrium constructor. For the unweighted
// constructor T is the set of price-raisers; the weighted constructor leaves
// it empty and uses A alone.
struct IterSnap {
  int k = 0;                 // 1-based iteration index
  std::vector<int> pi;       // bang-per-buck order after this iteration's update
  std::vector<int> A;        // frozen / raised set (sorted)
  std::vector<int> T;        // raisers (unweighted constructor only, sorted)
  PriceVector p;             // prices after this iteration (incl. rollback cap)
  std::vector<int> circuit;  // fundamental circuit if the spanned branch ran
  int evicted = -1;          // module dropped from the circuit (-1 if none)
  bool rollback = false;
};

struct EquilibriumOutput {
  PriceVector prices;
  std::vector<int> order;     // final bang-per-buck order
  std::vector<int> selected;  // greedy_bpb at `prices` under ByCostRatio
  std::vector<int> pi0;       // initial cost-ratio order
  int k_star = 0;             // last constructor iteration
  Scalar delta;               // additive constructor's price shift (0 otherwise)
  std::vector<IterSnap> trace;
};

struct ModuleDeviation {
  int module = -1;
  Scalar best_price;  // deviation achieving the largest utility
  Scalar best_utility;
  Scalar gain;        // best_utility - utility at the posted price
  bool violates = false;
};

struct DeviationReport {
  bool pass = false;
  Scalar eps;
  std::vector<ModuleDeviation> modules;
};

struct TransformResult {
  PriceVector prices;
  bool ok = false;
  std::string diagnostic;
};

struct InvariantReport {
  bool ok = false;
  std::string diagnostic;  // names the violated invariant and iteration
};

// Deterministic stand-in for random value perturbation: adds (i+1)*eps'/n to
// v(i), halving eps' until all v/c ratios are pairwise distinct.
Instance perturb_distinct_ratios(const Instance& inst, const Scalar& eps,
                                 Scalar* eps_used = nullptr);

// Exact supremum of {x : sum_i v(i)*x*[c(i) <= v(i)*x] <= B} via breakpoint
// analysis over the thresholds c(i)/v(i). Free matroid only.
Scalar cpv_star(const Instance& inst);

// Critical cost-per-value equilibrium for the free matroid.
EquilibriumOutput additive_equilibrium(const Instance& inst, const Scalar& eps);

// Circuit-freeze / price-raiser construction (matroid, exact equilibrium
// under the cost-ratio tiebreak).
EquilibriumOutput construct_eq_unweighted(const Instance& inst,
                                          const TieBreak& tb = TieBreak::by_cost_ratio());

// Lift-and-swap construction for weighted matroids.
EquilibriumOutput construct_eq_weighted(const Instance& inst,
                                        const TieBreak& tb = TieBreak::by_cost_ratio());

// Checks the six invariants of a constructor trace; the held set at each
// iteration is A ∪ T (T empty on lift-and-swap traces).
InvariantReport check_alg5_invariants(const Instance& inst, const EquilibriumOutput& out);

// Exact-up-to-eta deviation scan. The candidate grid per module is the set of
// prices at which its rank in the bang-per-buck order or the budget
// feasibility can change (plus nudges eta); utilities are piecewise linear
// increasing between candidates, so the scan is exhaustive.
DeviationReport verify_eps_equilibrium(const Instance& inst, const PriceVector& p,
                                       const Scalar& eps, Rule rule, const TieBreak& tb,
                                       ExecPolicy policy = ExecPolicy::Parallel);

// The per-module candidate grids used by the verifier (exposed for tests).
std::vector<std::vector<Scalar>> deviation_grids(const Instance& inst, const PriceVector& p,
                                                 const Scalar& eps, Rule rule,
                                                 const TieBreak& tb);

// Two-step worst-equilibrium transform: drop rejected module i to c(i)+eps,
// then re-price the members of S_p that fall out. Free matroid only.
PriceVector canonicalize_worst_additive(const Instance& inst, const PriceVector& p,
                                        const Scalar& eps, int i);

// Push every rejected module inspected before the last selected one down to
// c(i)+eps; checks that the selected value is unchanged and that the result
// still verifies at eps.
TransformResult lower_rejected_prefix_to_cost(const Instance& inst, const PriceVector& p,
                                              const Scalar& eps,
                                              const TieBreak& tb = TieBreak::by_cost_ratio());

// Exact optimum of v(S) over independent S with c(S) <= B.
std::pair<std::vector<int>, Scalar> opt_with_costs(const Instance& inst, int cap = 20);

// v(rule(inst,p)) / OPT, exact; OPT = 0 is reported as ratio 1.
Scalar approx_ratio(const Instance& inst, const PriceVector& p, Rule rule,
                    const TieBreak& tb = TieBreak::by_cost_ratio());

std::string equilibrium_to_json_string(const EquilibriumOutput& out, bool with_trace);
std::string deviation_report_to_json_string(const DeviationReport& rep);

}  // namespace bpb
