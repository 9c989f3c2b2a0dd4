#include "bpb/selection.hpp"

#include <algorithm>
#include <stdexcept>

namespace bpb {

namespace {

// Exact ratio key with an explicit point at infinity (positive value, zero
// denominator), so zero prices and zero costs order correctly.
struct RatioKey {
  bool inf = false;
  Scalar r;  // meaningful when !inf
};

RatioKey ratio_key(const Scalar& num, const Scalar& den) {
  if (num == 0) return {false, Scalar(0)};
  if (den == 0) return {true, Scalar(0)};
  return {false, num / den};
}

bool key_greater(const RatioKey& a, const RatioKey& b) {
  if (a.inf || b.inf) return a.inf && !b.inf;
  return a.r > b.r;
}

bool key_equal(const RatioKey& a, const RatioKey& b) {
  if (a.inf || b.inf) return a.inf == b.inf;
  return a.r == b.r;
}

Scalar price_sum(const PriceVector& p, const std::vector<int>& S) {
  Scalar s = 0;
  for (int i : S) s += p[i];
  return s;
}

}  // namespace

bool TieBreak::prefers(const Instance& inst, int i, int j) const {
  switch (kind) {
    case Kind::ByIndex:
      return i < j;
    case Kind::Explicit: {
      auto pos = [&](int x) {
        return std::find(perm.begin(), perm.end(), x) - perm.begin();
      };
      return pos(i) < pos(j);
    }
    case Kind::ByCostRatio: {
      RatioKey ki = ratio_key(inst.v[i], inst.c[i]);
      RatioKey kj = ratio_key(inst.v[j], inst.c[j]);
      if (!key_equal(ki, kj)) return key_greater(ki, kj);
      return i < j;
    }
  }
  return i < j;
}

std::vector<int> bpb_order(const Instance& inst, const PriceVector& p, const TieBreak& tb) {
  std::vector<RatioKey> keys(inst.n);
  for (int i = 0; i < inst.n; ++i) keys[i] = ratio_key(inst.v[i], p[i]);
  std::vector<int> order(inst.n);
  for (int i = 0; i < inst.n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (!key_equal(keys[a], keys[b])) return key_greater(keys[a], keys[b]);
    return tb.prefers(inst, a, b);
  });
  return order;
}

SelectionResult greedy_bpb(const Instance& inst, const PriceVector& p, const TieBreak& tb,
                           bool unbounded_budget) {
  SelectionResult res;
  res.inspection_order = bpb_order(inst, p, tb);
  std::vector<int> pos(inst.n);
  for (int k = 0; k < inst.n; ++k) pos[res.inspection_order[k]] = k;
  std::vector<int> G;
  Scalar spend = 0;
  for (int i : res.inspection_order) {
    std::vector<int> next = G;
    Scalar next_spend = spend;
    std::optional<Swap> swap;
    if (span_contains(inst.matroid, G, i)) {
      auto circuit = fundamental_circuit(inst.matroid, G, i);
      // evict the least valuable circuit member; on value ties the
      // latest-inspected one loses, so the entering module never displaces an
      // equal-value incumbent
      int evict = circuit[0];
      for (int x : circuit)
        if (inst.v[x] < inst.v[evict] ||
            (inst.v[x] == inst.v[evict] && pos[x] > pos[evict]))
          evict = x;
      if (evict == i) continue;  // i is the least valuable member of its own circuit
      next.erase(std::find(next.begin(), next.end(), evict));
      next.push_back(i);
      next_spend += p[i] - p[evict];
      swap = Swap{evict, i, circuit};
    } else {
      next.push_back(i);
      next_spend += p[i];
    }
    if (!unbounded_budget && next_spend > inst.B) {
      res.terminated_at = i;
      break;
    }
    G = std::move(next);
    spend = next_spend;
    if (swap) res.swaps.push_back(*swap);
  }
  std::sort(G.begin(), G.end());
  res.selected = std::move(G);
  res.spend = spend;
  return res;
}

SelectionResult greedy_knapsack(const Instance& inst, const PriceVector& p, const TieBreak& tb) {
  if (!std::holds_alternative<FreeMatroid>(inst.matroid.family))
    throw std::invalid_argument("greedy_knapsack requires a free matroid");
  SelectionResult res;
  res.inspection_order = bpb_order(inst, p, tb);
  Scalar spend = 0;
  for (int i : res.inspection_order) {
    if (spend + p[i] > inst.B) {
      res.terminated_at = i;
      break;
    }
    res.selected.push_back(i);
    spend += p[i];
  }
  std::sort(res.selected.begin(), res.selected.end());
  res.spend = spend;
  return res;
}

SelectionResult greedy_skip(const Instance& inst, const PriceVector& p, const TieBreak& tb) {
  SelectionResult res;
  res.inspection_order = bpb_order(inst, p, tb);
  std::vector<int> G;
  Scalar spend = 0;
  for (int i : res.inspection_order) {
    G.push_back(i);
    if (!is_independent(inst.matroid, G)) {
      G.pop_back();
      continue;
    }
    if (spend + p[i] > inst.B) {
      G.pop_back();
      res.terminated_at = i;
      break;
    }
    spend += p[i];
  }
  std::sort(G.begin(), G.end());
  res.selected = std::move(G);
  res.spend = spend;
  return res;
}

SelectionResult optimal_select(const Instance& inst, const PriceVector& p, int cap) {
  if (inst.n > cap)
    throw std::invalid_argument("optimal_select: instance exceeds brute-force cap");
  SelectionResult best;
  best.spend = 0;
  Scalar best_value = -1;
  std::vector<int> S;
  for (unsigned long mask = 0; mask < (1ul << inst.n); ++mask) {
    S.clear();
    Scalar spend = 0, value = 0;
    for (int i = 0; i < inst.n; ++i)
      if (mask >> i & 1) {
        S.push_back(i);
        spend += p[i];
        value += inst.v[i];
      }
    if (spend > inst.B || !is_independent(inst.matroid, S)) continue;
    if (value > best_value ||
        (value == best_value && std::lexicographical_compare(S.begin(), S.end(),
                                                             best.selected.begin(),
                                                             best.selected.end()))) {
      best_value = value;
      best.selected = S;
      best.spend = spend;
    }
  }
  best.inspection_order.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) best.inspection_order[i] = i;
  return best;
}

SelectionResult run_rule(Rule rule, const Instance& inst, const PriceVector& p,
                         const TieBreak& tb) {
  switch (rule) {
    case Rule::Bpb: return greedy_bpb(inst, p, tb);
    case Rule::Knapsack: return greedy_knapsack(inst, p, tb);
    case Rule::Skip: return greedy_skip(inst, p, tb);
    case Rule::Opt: return optimal_select(inst, p);
  }
  throw std::logic_error("unreachable");
}

std::optional<Scalar> critical_price(const Instance& inst, const PriceVector& p, int i,
                                     const std::vector<Scalar>& grid_bids, Rule rule,
                                     const TieBreak& tb, ExecPolicy policy) {
  const int m = static_cast<int>(grid_bids.size());
  std::vector<char> selected(m, 0);
  // Full scan: selection is not proven monotone in own price, so no bisection.
#pragma omp parallel for schedule(dynamic) if (policy == ExecPolicy::Parallel)
  for (int g = 0; g < m; ++g) {
    PriceVector q = p;
    q[i] = grid_bids[g];
    selected[g] = run_rule(rule, inst, q, tb).contains(i) ? 1 : 0;
  }
  for (int g = m - 1; g >= 0; --g)
    if (selected[g]) return grid_bids[g];
  return std::nullopt;
}

}  // namespace bpb
