#include <doctest.h>

#include <random>

#include "bpb/equilibrium.hpp"
#include "bpb/generator.hpp"

using namespace bpb;

namespace {

Instance free_inst(std::vector<Scalar> v, std::vector<Scalar> c, Scalar B) {
  Instance inst;
  inst.n = static_cast<int>(v.size());
  inst.v = std::move(v);
  inst.c = std::move(c);
  inst.B = std::move(B);
  inst.matroid = MatroidSpec::free(inst.n);
  inst.validate();
  return inst;
}

// feasibility of the market-clearing level, for the bisection oracle
bool cpv_feasible(const Instance& inst, double x) {
  double total = 0;
  for (int i = 0; i < inst.n; ++i) {
    double vi = to_double(inst.v[i]);
    if (vi > 0 && to_double(inst.c[i]) <= vi * x) total += vi * x;
  }
  return total <= to_double(inst.B);
}

double cpv_bisect(const Instance& inst) {
  double lo = 0, hi = to_double(inst.B) + 1;
  for (const auto& ci : inst.c) hi = std::max(hi, to_double(ci) + 1);
  for (int it = 0; it < 80; ++it) {
    double mid = (lo + hi) / 2;
    (cpv_feasible(inst, mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("cpv_star at a threshold breakpoint") {
  auto inst = free_inst({1, 1}, {Scalar(1) / 5, Scalar(3) / 5}, 1);
  CHECK(cpv_star(inst) == Scalar(3) / 5);  // the second module's entry overshoots
}

TEST_CASE("cpv_star strictly inside a segment") {
  auto inst = free_inst({1, 1}, {Scalar(1) / 5, Scalar(3) / 10}, 1);
  CHECK(cpv_star(inst) == Scalar(1) / 2);  // both accept, 2x = 1
}

TEST_CASE("cpv_star ignores zero-value modules and rejects all-zero") {
  auto inst = free_inst({1, 0, 1}, {Scalar(1) / 5, Scalar(1) / 2, Scalar(3) / 10}, 1);
  CHECK(cpv_star(inst) == Scalar(1) / 2);
  auto zero = free_inst({0, 0}, {Scalar(1) / 5, Scalar(1) / 2}, 1);
  CHECK_THROWS_AS(cpv_star(zero), std::invalid_argument);
}

TEST_CASE("cpv_star agrees with a bisection oracle") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Scalar> v(n), c(n);
    for (int i = 0; i < n; ++i) {
      v[i] = Scalar(1 + static_cast<long>(rng() % 12)) / 4;
      c[i] = Scalar(static_cast<long>(rng() % 8)) / 8;
    }
    auto inst = free_inst(v, c, Scalar(1 + static_cast<long>(rng() % 4)));
    double exact = to_double(cpv_star(inst));
    CHECK(std::abs(exact - cpv_bisect(inst)) < std::ldexp(1.0, -40));
  }
}

TEST_CASE("additive equilibrium, interior case: budget spent exactly") {
  auto inst = free_inst({1, 1}, {Scalar(1) / 5, Scalar(3) / 10}, 1);
  auto eq = additive_equilibrium(inst, Scalar(1) / 100);
  CHECK(eq.delta == 0);
  CHECK(eq.prices == PriceVector{Scalar(1) / 2, Scalar(1) / 2});
  CHECK(eq.selected == std::vector<int>{0, 1});
  auto rep = verify_eps_equilibrium(inst, eq.prices, Scalar(1) / 100, Rule::Bpb,
                                    TieBreak::by_cost_ratio());
  CHECK(rep.pass);
}

TEST_CASE("additive equilibrium, breakpoint case: small shift below the level") {
  auto inst = free_inst({1, 1}, {Scalar(1) / 5, Scalar(3) / 5}, 1);
  Scalar eps = Scalar(1) / 10;
  auto eq = additive_equilibrium(inst, eps);
  CHECK(eq.delta > 0);
  CHECK(eq.prices[0] == Scalar(3) / 5 - eq.delta);
  CHECK(eq.prices[1] == Scalar(3) / 5);  // its own cost binds at the level
  auto rep = verify_eps_equilibrium(inst, eq.prices, eps, Rule::Bpb, TieBreak::by_cost_ratio());
  CHECK(rep.pass);
}

TEST_CASE("additive equilibrium requires a free matroid, distinct ratios, positive eps") {
  auto inst = free_inst({1, 1}, {Scalar(1) / 5, Scalar(3) / 10}, 1);
  Instance uni = inst;
  uni.matroid = MatroidSpec::uniform(2, 1);
  CHECK_THROWS_AS(additive_equilibrium(uni, Scalar(1) / 10), std::invalid_argument);
  auto dup = free_inst({1, 2}, {Scalar(1) / 5, Scalar(2) / 5}, 1);
  CHECK_THROWS_AS(additive_equilibrium(dup, Scalar(1) / 10), std::invalid_argument);
  CHECK_THROWS_AS(additive_equilibrium(inst, 0), std::invalid_argument);
}

TEST_CASE("perturb_distinct_ratios separates collisions deterministically") {
  auto inst = free_inst({1, 1, 2}, {Scalar(1), Scalar(1), Scalar(2)}, 4);
  Scalar used;
  auto out = perturb_distinct_ratios(inst, Scalar(1) / 10, &used);
  CHECK(used == Scalar(1) / 10);
  for (int i = 0; i < out.n; ++i)
    for (int j = i + 1; j < out.n; ++j)
      CHECK(out.v[i] * out.c[j] != out.v[j] * out.c[i]);
  auto again = perturb_distinct_ratios(inst, Scalar(1) / 10);
  CHECK(again.v == out.v);
  // two zero-cost modules can never be separated
  auto stuck = free_inst({1, 1}, {Scalar(0), Scalar(0)}, 1);
  CHECK_THROWS_AS(perturb_distinct_ratios(stuck, Scalar(1) / 10), std::invalid_argument);
}

TEST_CASE("unit-value triple: constructed profile is exact under the cheap-first tiebreak") {
  auto inst = free_inst({1, 1, 1}, {2, 3, 4}, 10);
  auto eq = construct_eq_unweighted(inst);
  CHECK(eq.prices == PriceVector{Scalar(4), Scalar(4), Scalar(4)});
  CHECK(eq.selected == std::vector<int>{0, 1});
  auto rep = verify_eps_equilibrium(inst, eq.prices, 0, Rule::Bpb, TieBreak::by_cost_ratio());
  CHECK(rep.pass);
}

TEST_CASE("unit-value triple: the same profile breaks under an adversarial tiebreak") {
  auto inst = free_inst({1, 1, 1}, {2, 3, 4}, 10);
  PriceVector p = {Scalar(4), Scalar(4), Scalar(4)};
  auto tb = TieBreak::explicit_order({2, 0, 1});
  auto rep = verify_eps_equilibrium(inst, p, 0, Rule::Bpb, tb);
  CHECK_FALSE(rep.pass);
  // the rejected middle module undercuts and pockets nearly a unit
  CHECK(rep.modules[1].violates);
  CHECK(rep.modules[1].gain >= Scalar(1) / 2);
}

TEST_CASE("constructors verify exactly on seeded instances from every family") {
  const MatroidFamily fams[] = {MatroidFamily::Free, MatroidFamily::Uniform,
                                MatroidFamily::Partition, MatroidFamily::Graphic};
  auto tb = TieBreak::by_cost_ratio();
  int checked = 0;
  for (auto fam : fams)
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      int n = 3 + static_cast<int>(seed % 4);
      auto inst = random_instance(fam, n, seed);
      // the raiser-set constructor targets the unit-value game; the
      // lift-and-swap one handles general values
      Instance unit = inst;
      unit.v.assign(n, Scalar(1));
      for (bool weighted : {false, true}) {
        const Instance& gi = weighted ? inst : unit;
        auto eq = weighted ? construct_eq_weighted(gi) : construct_eq_unweighted(gi);
        auto rep = verify_eps_equilibrium(gi, eq.prices, 0, Rule::Bpb, tb);
        INFO("family ", static_cast<int>(fam), " seed ", seed, " weighted ", weighted);
        for (const auto& d : rep.modules) {
          INFO("module ", d.module + 1, " best price ", to_fraction_string(d.best_price),
               " gain ", to_fraction_string(d.gain));
          CHECK_FALSE(d.violates);
        }
        if (weighted) {
          auto inv = check_alg5_invariants(gi, eq);
          INFO(inv.diagnostic);
          CHECK(inv.ok);
        }
        ++checked;
      }
    }
  CHECK(checked == 64);
}

TEST_CASE("invariant checker flags a corrupted trace") {
  auto inst = random_instance(MatroidFamily::Uniform, 5, 42);
  auto eq = construct_eq_weighted(inst);
  REQUIRE(!eq.trace.empty());
  auto broken = eq;
  REQUIRE(!eq.trace.back().A.empty());
  broken.trace.back().p[eq.trace.back().A[0]] *= 100;  // held set no longer affordable
  CHECK_FALSE(check_alg5_invariants(inst, broken).ok);
  auto broken2 = eq;
  broken2.selected.clear();
  CHECK_FALSE(check_alg5_invariants(inst, broken2).ok);
}

TEST_CASE("canonicalization drops a rejected module to cost plus eps") {
  auto inst = free_inst({1, 1}, {Scalar(1) / 5, Scalar(3) / 5}, 1);
  Scalar eps = Scalar(1) / 10;
  // overpriced rejected module 1
  PriceVector p = {Scalar(3) / 5, Scalar(9) / 10};
  auto sel = greedy_bpb(inst, p, TieBreak::by_cost_ratio());
  REQUIRE(sel.selected == std::vector<int>{0});
  auto pbar = canonicalize_worst_additive(inst, p, eps, 1);
  CHECK(pbar[1] == inst.c[1] + eps);
  CHECK(pbar[1] <= p[1]);
  auto sel2 = greedy_bpb(inst, pbar, TieBreak::by_cost_ratio());
  // the selected set can only shrink within the original selection
  for (int i : sel2.selected) CHECK(sel.contains(i));
  CHECK_THROWS_AS(canonicalize_worst_additive(inst, p, eps, 0), std::invalid_argument);
}

TEST_CASE("lowering the rejected prefix preserves value and equilibrium") {
  auto inst = free_inst({2, 1, 1}, {Scalar(1) / 4, Scalar(1) / 5, Scalar(3) / 5}, 1);
  Scalar eps = Scalar(1) / 20;
  auto eq = additive_equilibrium(inst, eps);
  auto res = lower_rejected_prefix_to_cost(inst, eq.prices, eps);
  INFO(res.diagnostic);
  CHECK(res.ok);
  for (int i = 0; i < inst.n; ++i) CHECK(res.prices[i] <= eq.prices[i]);
}

TEST_CASE("opt_with_costs and approx_ratio on the one-module-wins family") {
  int n = 8;
  std::vector<Scalar> v(n, 1), c(n, 0);
  v[0] = Scalar(11) / 10;
  auto inst = free_inst(v, c, 1);
  auto [opt_set, opt_val] = opt_with_costs(inst);
  CHECK(opt_val == Scalar(n) + Scalar(1) / 10);
  PriceVector ones(n, Scalar(1));
  Scalar ratio = approx_ratio(inst, ones, Rule::Opt);
  CHECK(ratio == (Scalar(11) / 10) / opt_val);
  CHECK(ratio <= Scalar(2) / n);
}

TEST_CASE("verifier is identical under serial and parallel execution") {
  auto inst = random_instance(MatroidFamily::Graphic, 6, 7);
  auto eq = construct_eq_weighted(inst);
  PriceVector p = eq.prices;
  p[0] += Scalar(1) / 7;  // push off equilibrium so some gains are nonzero
  if (p[0] > inst.B) p[0] = inst.B;
  auto a = verify_eps_equilibrium(inst, p, Scalar(1) / 50, Rule::Bpb, TieBreak::by_cost_ratio(),
                                  ExecPolicy::Serial);
  auto b = verify_eps_equilibrium(inst, p, Scalar(1) / 50, Rule::Bpb, TieBreak::by_cost_ratio(),
                                  ExecPolicy::Parallel);
  CHECK(a.pass == b.pass);
  REQUIRE(a.modules.size() == b.modules.size());
  for (size_t i = 0; i < a.modules.size(); ++i) {
    CHECK(a.modules[i].best_price == b.modules[i].best_price);
    CHECK(a.modules[i].gain == b.modules[i].gain);
  }
}

TEST_CASE("deviation grids contain the decisive probes") {
  auto inst = free_inst({1, 1, 1}, {2, 3, 4}, 10);
  PriceVector p = {Scalar(4), Scalar(4), Scalar(4)};
  auto grids = deviation_grids(inst, p, 0, Rule::Bpb, TieBreak::explicit_order({2, 0, 1}));
  // module 1's winning undercut sits just below the common price level
  bool has_undercut = false;
  for (const auto& b : grids[1])
    if (b < Scalar(4) && b > Scalar(7) / 2) has_undercut = true;
  CHECK(has_undercut);
}
