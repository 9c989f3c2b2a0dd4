#include "bpb/equilibrium.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bpb {

namespace {

struct RatioKey {
  bool inf = false;
  Scalar r;
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

Scalar sum_over(const std::vector<Scalar>& xs, const std::vector<int>& S) {
  Scalar s = 0;
  for (int i : S) s += xs[i];
  return s;
}

// Bang-per-buck order with ties resolved by position in a reference order.
std::vector<int> order_with_ref(const Instance& inst, const PriceVector& p,
                                const std::vector<int>& ref_pos) {
  std::vector<RatioKey> keys(inst.n);
  for (int i = 0; i < inst.n; ++i) keys[i] = ratio_key(inst.v[i], p[i]);
  std::vector<int> order(inst.n);
  for (int i = 0; i < inst.n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (!key_equal(keys[a], keys[b])) return key_greater(keys[a], keys[b]);
    return ref_pos[a] < ref_pos[b];
  });
  return order;
}

std::vector<int> positions_of(const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
  return pos;
}

std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

bool in_sorted(const std::vector<int>& S, int x) {
  return std::binary_search(S.begin(), S.end(), x);
}

// Breakpoint analysis of the market-clearing cost-per-value level.
struct CpvInfo {
  Scalar star;
  bool at_breakpoint = false;
  int k = 0;            // 1-based index of star among the sorted thresholds
  Scalar prev;          // threshold below star (valid when has_prev)
  bool has_prev = false;
};

CpvInfo cpv_analysis(const Instance& inst) {
  std::vector<std::pair<Scalar, Scalar>> th;  // (c/v threshold, v mass)
  for (int i = 0; i < inst.n; ++i)
    if (inst.v[i] > 0) th.emplace_back(inst.c[i] / inst.v[i], inst.v[i]);
  if (th.empty())
    throw std::invalid_argument("cpv_star: requires at least one module with positive value");
  std::sort(th.begin(), th.end());
  // merge equal thresholds
  std::vector<Scalar> t, mass;
  for (auto& [ti, vi] : th) {
    if (!t.empty() && t.back() == ti)
      mass.back() += vi;
    else {
      t.push_back(ti);
      mass.push_back(vi);
    }
  }
  const int m = static_cast<int>(t.size());
  CpvInfo info;
  Scalar V = 0;
  for (int j = 0; j < m; ++j) {
    V += mass[j];
    // feasibility on [t_j, t_{j+1}) is V * x <= B
    if (V * t[j] > inst.B) {
      // infeasible already at the segment's left end: the supremum is t_j itself
      info.star = t[j];
      info.at_breakpoint = true;
      info.k = j + 1;
      if (j > 0) {
        info.prev = t[j - 1];
        info.has_prev = true;
      }
      return info;
    }
    Scalar limit = inst.B / V;
    if (j + 1 < m && limit >= t[j + 1]) continue;  // whole segment feasible
    info.star = limit;
    info.at_breakpoint = (limit == t[j]);
    info.k = j + 1;  // k thresholds are <= star
    if (info.at_breakpoint && j > 0) {
      info.prev = t[j - 1];
      info.has_prev = true;
    } else if (!info.at_breakpoint) {
      info.prev = t[j];
      info.has_prev = true;
    }
    return info;
  }
  throw std::logic_error("cpv_star: unreachable");
}

void check_price_floor(const Instance& inst, const PriceVector& p, const char* who) {
  for (int i = 0; i < inst.n; ++i)
    if (p[i] < inst.c[i])
      throw std::logic_error(std::string(who) + ": produced a price below cost for module " +
                             std::to_string(i + 1));
}

}  // namespace

Instance perturb_distinct_ratios(const Instance& inst, const Scalar& eps, Scalar* eps_used) {
  Scalar e = eps;
  if (e <= 0) throw std::invalid_argument("perturb_distinct_ratios: eps must be positive");
  for (int attempt = 0; attempt < 64; ++attempt) {
    Instance out = inst;
    for (int i = 0; i < inst.n; ++i) out.v[i] = inst.v[i] + Scalar(i + 1) * e / inst.n;
    bool distinct = true;
    for (int i = 0; i < inst.n && distinct; ++i)
      for (int j = i + 1; j < inst.n && distinct; ++j)
        if (key_equal(ratio_key(out.v[i], out.c[i]), ratio_key(out.v[j], out.c[j])))
          distinct = false;
    if (distinct) {
      if (eps_used) *eps_used = e;
      return out;
    }
    e /= 2;
  }
  throw std::invalid_argument(
      "perturb_distinct_ratios: could not separate ratios (two zero-cost modules?)");
}

Scalar cpv_star(const Instance& inst) { return cpv_analysis(inst).star; }

EquilibriumOutput additive_equilibrium(const Instance& inst, const Scalar& eps) {
  if (!std::holds_alternative<FreeMatroid>(inst.matroid.family))
    throw std::invalid_argument("additive_equilibrium requires a free matroid");
  if (eps <= 0) throw std::invalid_argument("additive_equilibrium: eps must be positive");
  // distinct cost-per-value thresholds among positive-value modules
  {
    std::vector<Scalar> ts;
    for (int i = 0; i < inst.n; ++i)
      if (inst.v[i] > 0) ts.push_back(inst.c[i] / inst.v[i]);
    std::sort(ts.begin(), ts.end());
    if (std::adjacent_find(ts.begin(), ts.end()) != ts.end())
      throw std::invalid_argument("additive_equilibrium: cost/value ratios must be distinct");
  }
  CpvInfo info = cpv_analysis(inst);
  Scalar vmax = 0;
  for (const auto& vi : inst.v) vmax = std::max(vmax, vi);
  Scalar delta = 0;
  if (info.at_breakpoint) {
    Scalar dmax = eps / (2 * Scalar(inst.n) * vmax);
    if (info.has_prev) dmax = std::min(dmax, Scalar(info.star - info.prev));
    delta = dmax / 2;
  }
  EquilibriumOutput out;
  out.delta = delta;
  out.k_star = info.k;
  out.prices.resize(inst.n);
  for (int i = 0; i < inst.n; ++i)
    out.prices[i] = std::max(Scalar((info.star - delta) * inst.v[i]), inst.c[i]);
  out.pi0 = bpb_order(inst, inst.c, TieBreak::by_cost_ratio());
  auto sel = greedy_bpb(inst, out.prices, TieBreak::by_cost_ratio());
  out.selected = sel.selected;
  out.order = sel.inspection_order;
  check_price_floor(inst, out.prices, "additive_equilibrium");
  return out;
}

EquilibriumOutput construct_eq_unweighted(const Instance& inst, const TieBreak& tb) {
  EquilibriumOutput out;
  out.delta = 0;
  out.pi0 = bpb_order(inst, inst.c, tb);
  const std::vector<int> pos0 = positions_of(out.pi0);
  PriceVector p = inst.c;
  std::vector<int> A, T;  // sorted, disjoint
  std::vector<int> pi = out.pi0;
  bool rolled_back = false;
  out.k_star = 0;
  for (int k = 1; k <= inst.n; ++k) {
    int mk = pi[k - 1];
    if (inst.v[mk] == 0) break;  // zero-value tail: go straight to the top-up
    Scalar cpv = p[mk] / inst.v[mk];
    for (int j : T) p[j] = cpv * inst.v[j];  // raise the raisers to mk's level
    std::vector<int> AuT = sorted_union(A, T);
    std::vector<int> newA = A, newT = T, circuit;
    int evicted = -1;
    if (!span_contains(inst.matroid, AuT, mk)) {
      newT = sorted_union(T, {mk});
    } else {
      circuit = fundamental_circuit(inst.matroid, AuT, mk);
      std::vector<int> grow;  // circuit members other than mk get frozen
      for (int x : circuit)
        if (x != mk) grow.push_back(x);
      newA = sorted_union(A, grow);
      newT.clear();
      for (int x : T)
        if (!in_sorted(newA, x)) newT.push_back(x);
      evicted = mk;  // the entering module is rejected, its circuit is frozen
    }
    Scalar spend = sum_over(p, newA) + sum_over(p, newT);
    if (spend > inst.B) {
      // revert to (A, T) and cap the raisers to exactly exhaust the budget
      Scalar resid = inst.B - sum_over(p, A);
      Scalar vT = sum_over(inst.v, T);
      for (int j : T) p[j] = std::min(Scalar(inst.v[j] * resid / vT), p[j]);
      pi = order_with_ref(inst, p, pos0);
      out.k_star = k;
      out.trace.push_back({k, pi, A, T, p, circuit, evicted, true});
      rolled_back = true;
      break;
    }
    A = std::move(newA);
    T = std::move(newT);
    pi = order_with_ref(inst, p, pos0);
    out.k_star = k;
    out.trace.push_back({k, pi, A, T, p, circuit, evicted, false});
  }
  if (!rolled_back && !T.empty()) {
    Scalar resid = inst.B - sum_over(p, A);
    Scalar vT = sum_over(inst.v, T);
    for (int j : T) p[j] = inst.v[j] * resid / vT;
  }
  check_price_floor(inst, p, "construct_eq_unweighted");
  out.prices = p;
  out.order = order_with_ref(inst, p, pos0);
  out.selected = greedy_bpb(inst, p, TieBreak::explicit_order(out.pi0)).selected;
  return out;
}

EquilibriumOutput construct_eq_weighted(const Instance& inst, const TieBreak& tb) {
  EquilibriumOutput out;
  out.delta = 0;
  out.pi0 = bpb_order(inst, inst.c, tb);
  const std::vector<int> pos0 = positions_of(out.pi0);
  PriceVector p = inst.c;
  std::vector<int> A;  // sorted
  std::vector<int> pi = out.pi0;
  bool rolled_back = false;
  out.k_star = 0;
  for (int k = 1; k <= inst.n; ++k) {
    int mk = pi[k - 1];
    if (inst.v[mk] == 0) break;
    Scalar cpv = p[mk] / inst.v[mk];
    for (int j : A) p[j] = cpv * inst.v[j];  // lift the whole held set to mk's level
    std::vector<int> newA, circuit;
    int evicted = -1;
    if (!span_contains(inst.matroid, A, mk)) {
      newA = sorted_union(A, {mk});
    } else {
      circuit = fundamental_circuit(inst.matroid, A, mk);
      // same eviction tie rule as the selection greedy: ties go against the
      // latest-inspected member, i.e. the entering module mk
      std::vector<int> pos(inst.n);
      for (int q = 0; q < inst.n; ++q) pos[pi[q]] = q;
      int evict = circuit[0];
      for (int x : circuit)
        if (inst.v[x] < inst.v[evict] ||
            (inst.v[x] == inst.v[evict] && pos[x] > pos[evict]))
          evict = x;
      evicted = evict;
      if (evict == mk) {
        newA = A;
      } else {
        newA = sorted_union(A, {mk});
        newA.erase(std::find(newA.begin(), newA.end(), evict));
      }
    }
    if (sum_over(p, newA) > inst.B) {
      // revert to A and cap at the budget-exhausting proportional prices
      Scalar vA = sum_over(inst.v, A);
      for (int j : A) p[j] = std::min(Scalar(inst.v[j] * inst.B / vA), p[j]);
      pi = order_with_ref(inst, p, pos0);
      out.k_star = k;
      out.trace.push_back({k, pi, A, {}, p, circuit, evicted, true});
      rolled_back = true;
      break;
    }
    A = std::move(newA);
    pi = order_with_ref(inst, p, pos0);
    out.k_star = k;
    out.trace.push_back({k, pi, A, {}, p, circuit, evicted, false});
  }
  if (!rolled_back && !A.empty()) {
    Scalar vA = sum_over(inst.v, A);
    for (int j : A) p[j] = inst.v[j] * inst.B / vA;
  }
  check_price_floor(inst, p, "construct_eq_weighted");
  out.prices = p;
  out.order = order_with_ref(inst, p, pos0);
  out.selected = greedy_bpb(inst, p, TieBreak::explicit_order(out.pi0)).selected;
  return out;
}

InvariantReport check_alg5_invariants(const Instance& inst, const EquilibriumOutput& out) {
  auto fail = [](int inv, int k) {
    return InvariantReport{false, "invariant " + std::to_string(inv) + " violated at iteration " +
                                      std::to_string(k)};
  };
  std::vector<int> prev_pi = out.pi0;
  const bool rolled_back = !out.trace.empty() && out.trace.back().rollback;
  for (const auto& snap : out.trace) {
    const int k = snap.k;
    // held set: frozen + raisers (T is empty on lift-and-swap traces)
    const std::vector<int> held = sorted_union(snap.A, snap.T);
    // (1) the processed prefix is stable as a set and the k-th entry as an
    // element (positions within the prefix may shuffle when a rejected module
    // re-emerges above the freshly lifted held set)
    {
      std::vector<int> a(prev_pi.begin(), prev_pi.begin() + (k - 1));
      std::vector<int> b(snap.pi.begin(), snap.pi.begin() + (k - 1));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b || prev_pi[k - 1] != snap.pi[k - 1]) return fail(1, k);
    }
    // (2) the held set dominates everything after position k in bang-per-buck
    {
      RatioKey worstA{true, 0};
      bool haveA = false;
      for (int j : held) {
        RatioKey kj = ratio_key(inst.v[j], snap.p[j]);
        if (!haveA || key_greater(worstA, kj)) worstA = kj;
        haveA = true;
      }
      if (haveA)
        for (int pos = k; pos < inst.n; ++pos) {
          int j = snap.pi[pos];
          if (in_sorted(held, j)) continue;
          if (key_greater(ratio_key(inst.v[j], snap.p[j]), worstA)) return fail(2, k);
        }
    }
    // (3) the held set stays affordable
    if (sum_over(snap.p, held) > inst.B) return fail(3, k);
    if (k < out.k_star) {
      // (4) the held set spans the inspected prefix
      std::vector<int> prefix(snap.pi.begin(), snap.pi.begin() + k);
      std::sort(prefix.begin(), prefix.end());
      if (rank(inst.matroid, held) != rank(inst.matroid, prefix)) return fail(4, k);
      // (5) every dropped prefix module closes a circuit as its cheapest member
      for (int i = 0; i < k; ++i) {
        int m = snap.pi[i];
        if (in_sorted(held, m)) continue;
        if (!span_contains(inst.matroid, held, m)) return fail(5, k);
        for (int x : fundamental_circuit(inst.matroid, held, m))
          if (inst.v[x] < inst.v[m]) return fail(5, k);
      }
    }
    prev_pi = snap.pi;
  }
  // (6) the final holding is what greedy selects and is max-weight in the prefix
  // (value comparison, so equal-value bases do not trip a spurious mismatch)
  if (!out.trace.empty()) {
    const auto& last = out.trace.back();
    if (out.selected != sorted_union(last.A, last.T)) return fail(6, out.k_star);
    int prefix_len = rolled_back ? out.k_star - 1 : out.k_star;
    std::vector<int> ground(out.pi0.begin(), out.pi0.begin() + prefix_len);
    auto best = max_weight_independent(inst.matroid, inst.v, ground);
    if (sum_over(inst.v, best) != sum_over(inst.v, out.selected)) return fail(6, out.k_star);
  }
  return {true, ""};
}

std::vector<std::vector<Scalar>> deviation_grids(const Instance& inst, const PriceVector& p,
                                                 const Scalar& eps, Rule rule,
                                                 const TieBreak& tb) {
  const int n = inst.n;
  std::vector<std::vector<Scalar>> raw(n);
  std::vector<std::vector<Scalar>> breakpoints(n);
  for (int i = 0; i < n; ++i) {
    auto& cand = raw[i];
    cand.push_back(inst.c[i]);
    if (eps > 0) cand.push_back(inst.c[i] + eps);
    cand.push_back(inst.B);
    cand.push_back(p[i]);
    if (inst.v[i] > 0)
      for (int j = 0; j < n; ++j) {
        if (j == i || inst.v[j] == 0) continue;
        Scalar b = p[j] * inst.v[i] / inst.v[j];  // i ties j's bang-per-buck
        breakpoints[i].push_back(b);
        cand.push_back(b);
      }
  }
  // eta: a nudge smaller than any gap between candidate levels
  std::vector<Scalar> all;
  for (const auto& cs : raw)
    for (const auto& x : cs)
      if (x > 0) all.push_back(x);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  Scalar eta = 0;
  for (size_t i = 1; i < all.size(); ++i) {
    Scalar gap = all[i] - all[i - 1];
    if (gap > 0 && (eta == 0 || gap < eta)) eta = gap;
  }
  if (eta == 0) eta = (eps > 0 ? eps : inst.B);
  eta /= 4;

  std::vector<std::vector<Scalar>> grids(n);
  auto finalize = [&](int i, std::vector<Scalar> cs) {
    std::vector<Scalar> g;
    for (auto& x : cs)
      if (x > 0 && x <= inst.B) g.push_back(x);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    grids[i] = std::move(g);
  };
  for (int i = 0; i < n; ++i) {
    auto cand = raw[i];
    for (const auto& t : breakpoints[i]) {
      cand.push_back(t - eta);
      cand.push_back(t + eta);
    }
    finalize(i, std::move(cand));
  }
  // refinement: budget residuals observed when actually deviating
  for (int i = 0; i < n; ++i) {
    std::vector<Scalar> extra;
    PriceVector q = p;
    for (const auto& b : grids[i]) {
      q[i] = b;
      auto sel = run_rule(rule, inst, q, tb);
      Scalar resid = inst.B - (sel.spend - (sel.contains(i) ? b : Scalar(0)));
      extra.push_back(resid);
      extra.push_back(resid - eta);
    }
    auto cand = grids[i];
    cand.insert(cand.end(), extra.begin(), extra.end());
    finalize(i, std::move(cand));
  }
  return grids;
}

DeviationReport verify_eps_equilibrium(const Instance& inst, const PriceVector& p,
                                       const Scalar& eps, Rule rule, const TieBreak& tb,
                                       ExecPolicy policy) {
  if (static_cast<int>(p.size()) != inst.n)
    throw std::invalid_argument("verify_eps_equilibrium: price vector length mismatch");
  if (eps < 0) throw std::invalid_argument("verify_eps_equilibrium: eps must be >= 0");
  DeviationReport rep;
  rep.eps = eps;
  rep.modules.resize(inst.n);
  auto grids = deviation_grids(inst, p, eps, rule, tb);
  auto base = run_rule(rule, inst, p, tb);
#pragma omp parallel for schedule(dynamic) if (policy == ExecPolicy::Parallel)
  for (int i = 0; i < inst.n; ++i) {
    ModuleDeviation d;
    d.module = i;
    Scalar u0 = utility(inst, p, base, i);
    d.best_price = p[i];
    d.best_utility = u0;
    PriceVector q = p;
    for (const auto& b : grids[i]) {
      if (b == p[i]) continue;
      q[i] = b;
      auto sel = run_rule(rule, inst, q, tb);
      Scalar u = sel.contains(i) ? Scalar(b - inst.c[i]) : Scalar(0);
      if (u > d.best_utility) {
        d.best_utility = u;
        d.best_price = b;
      }
    }
    d.gain = d.best_utility - u0;
    d.violates = d.gain > eps;
    rep.modules[i] = std::move(d);
  }
  rep.pass = std::none_of(rep.modules.begin(), rep.modules.end(),
                          [](const ModuleDeviation& d) { return d.violates; });
  return rep;
}

PriceVector canonicalize_worst_additive(const Instance& inst, const PriceVector& p,
                                        const Scalar& eps, int i) {
  if (!std::holds_alternative<FreeMatroid>(inst.matroid.family))
    throw std::invalid_argument("canonicalize_worst_additive requires a free matroid");
  if (i < 0 || i >= inst.n) throw std::out_of_range("canonicalize_worst_additive: bad module id");
  if (inst.v[i] == 0)
    throw std::invalid_argument("canonicalize_worst_additive: module must have positive value");
  auto tb = TieBreak::by_cost_ratio();
  auto sel = greedy_bpb(inst, p, tb);
  if (sel.contains(i))
    throw std::invalid_argument("canonicalize_worst_additive: module must be rejected at p");
  PriceVector p2 = p;
  p2[i] = inst.c[i] + eps;
  auto sel2 = greedy_bpb(inst, p2, tb);
  PriceVector out = p2;
  Scalar level = (inst.c[i] + eps) / inst.v[i];
  for (int j : sel.selected)
    if (!sel2.contains(j)) out[j] = std::max(inst.c[j], Scalar(level * inst.v[j] - eps / 2));
  return out;
}

TransformResult lower_rejected_prefix_to_cost(const Instance& inst, const PriceVector& p,
                                              const Scalar& eps, const TieBreak& tb) {
  auto sel = greedy_bpb(inst, p, tb);
  TransformResult res;
  res.prices = p;
  int last_sel_pos = -1;
  for (int pos = 0; pos < inst.n; ++pos)
    if (sel.contains(sel.inspection_order[pos])) last_sel_pos = pos;
  for (int pos = 0; pos < last_sel_pos; ++pos) {
    int m = sel.inspection_order[pos];
    if (!sel.contains(m)) res.prices[m] = std::min(p[m], Scalar(inst.c[m] + eps));
  }
  auto sel2 = greedy_bpb(inst, res.prices, tb);
  if (sel2.value(inst) != sel.value(inst)) {
    res.ok = false;
    res.diagnostic = "selected value changed after lowering rejected prefix";
    return res;
  }
  auto rep = verify_eps_equilibrium(inst, res.prices, eps, Rule::Bpb, tb);
  res.ok = rep.pass;
  if (!rep.pass) res.diagnostic = "lowered profile no longer verifies at eps";
  return res;
}

std::pair<std::vector<int>, Scalar> opt_with_costs(const Instance& inst, int cap) {
  auto sel = optimal_select(inst, inst.c, cap);
  return {sel.selected, sel.value(inst)};
}

Scalar approx_ratio(const Instance& inst, const PriceVector& p, Rule rule, const TieBreak& tb) {
  auto [opt_set, opt_val] = opt_with_costs(inst);
  if (opt_val == 0) return 1;
  return run_rule(rule, inst, p, tb).value(inst) / opt_val;
}

namespace {

nlohmann::json ids_1based(const std::vector<int>& xs) {
  auto arr = nlohmann::json::array();
  for (int x : xs) arr.push_back(x + 1);
  return arr;
}

nlohmann::json prices_json(const PriceVector& p) {
  auto arr = nlohmann::json::array();
  for (const auto& x : p) arr.push_back(to_fraction_string(x));
  return arr;
}

}  // namespace

std::string equilibrium_to_json_string(const EquilibriumOutput& out, bool with_trace) {
  nlohmann::json j;
  j["prices"] = prices_json(out.prices);
  j["order"] = ids_1based(out.order);
  j["selected"] = ids_1based(out.selected);
  j["initial_order"] = ids_1based(out.pi0);
  j["k_star"] = out.k_star;
  j["delta"] = to_fraction_string(out.delta);
  if (with_trace) {
    auto trace = nlohmann::json::array();
    for (const auto& s : out.trace) {
      nlohmann::json js;
      js["k"] = s.k;
      js["order"] = ids_1based(s.pi);
      js["frozen"] = ids_1based(s.A);
      js["raisers"] = ids_1based(s.T);
      js["prices"] = prices_json(s.p);
      js["circuit"] = ids_1based(s.circuit);
      js["evicted"] = s.evicted >= 0 ? nlohmann::json(s.evicted + 1) : nlohmann::json(nullptr);
      js["rollback"] = s.rollback;
      trace.push_back(js);
    }
    j["trace"] = trace;
  }
  return j.dump(2) + "\n";
}

std::string deviation_report_to_json_string(const DeviationReport& rep) {
  nlohmann::json j;
  j["pass"] = rep.pass;
  j["eps"] = to_fraction_string(rep.eps);
  auto mods = nlohmann::json::array();
  for (const auto& d : rep.modules) {
    nlohmann::json jd;
    jd["module"] = d.module + 1;
    jd["best_price"] = to_fraction_string(d.best_price);
    jd["best_utility"] = to_fraction_string(d.best_utility);
    jd["gain"] = to_fraction_string(d.gain);
    jd["violates"] = d.violates;
    mods.push_back(jd);
  }
  j["modules"] = mods;
  return j.dump(2) + "\n";
}

}  // namespace bpb
