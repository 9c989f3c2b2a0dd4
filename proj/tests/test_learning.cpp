#include <doctest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bpb/generator.hpp"
#include "bpb/learning.hpp"

using namespace bpb;

namespace {

Instance single_free_module() {
  Instance inst;
  inst.n = 1;
  inst.v = {Scalar(1)};
  inst.c = {Scalar(1) / 8};
  inst.B = Scalar(1);
  inst.matroid = MatroidSpec::free(1);
  inst.validate();
  return inst;
}

Instance two_free_modules() {
  Instance inst;
  inst.n = 2;
  inst.v = {Scalar(3), Scalar(2)};
  inst.c = {Scalar(1) / 8, Scalar(1) / 4};
  inst.B = Scalar(1);
  inst.matroid = MatroidSpec::free(2);
  inst.validate();
  return inst;
}

}  // namespace

TEST_CASE("bid grid construction and errors") {
  auto g = BidGrid::make(Scalar(1) / 20, Scalar(1));
  CHECK(g.m == 20);
  CHECK(g.bid(0) == Scalar(1) / 20);
  CHECK(g.bid(19) == Scalar(1));
  CHECK_THROWS_AS(BidGrid::make(Scalar(3) / 7, Scalar(1)), std::invalid_argument);
  CHECK_THROWS_AS(BidGrid::make(Scalar(0), Scalar(1)), std::invalid_argument);
  CHECK_THROWS_AS(BidGrid::make(Scalar(1) / 4, Scalar(-1)), std::invalid_argument);
}

TEST_CASE("distorted reward phases and modes") {
  PaymentRule rule{100, 0.1, PaymentMode::NetUtility};
  // phase 1: base + delta^2 * b, bonus paid regardless of selection
  CHECK(distorted_reward(rule, 50, 0.5, 0.2, true) == doctest::Approx(0.3 + 0.005));
  CHECK(distorted_reward(rule, 50, 0.5, 0.2, false) == doctest::Approx(0.005));
  // phase boundary is inclusive on the phase-1 side
  CHECK(distorted_reward(rule, 100, 0.5, 0.2, false) == doctest::Approx(0.005));
  // phase 2: base + delta^4 / b
  CHECK(distorted_reward(rule, 150, 0.5, 0.2, false) == doctest::Approx(0.0002));
  CHECK(distorted_reward(rule, 150, 0.5, 0.2, true) == doctest::Approx(0.3 + 0.0002));
  PaymentRule gross{100, 0.1, PaymentMode::GrossPayment};
  CHECK(distorted_reward(gross, 50, 0.5, 0.2, true) == doctest::Approx(0.5 + 0.005));
}

TEST_CASE("hedge starts uniform and keeps the exponential-weights ratio") {
  HedgeLearner h(3, 2.0);
  auto d0 = h.distribution();
  REQUIRE(d0.size() == 3);
  for (double x : d0) CHECK(x == doctest::Approx(1.0 / 3));
  CHECK(h.gamma() == doctest::Approx(2.0));  // c0 / sqrt(1)
  h.update({1.0, 0.0, 3.0});
  CHECK(h.t == 1);
  double g = 2.0 / std::sqrt(2.0);
  CHECK(h.gamma() == doctest::Approx(g));
  auto d1 = h.distribution();
  CHECK(d1[2] / d1[0] == doctest::Approx(std::exp(g * (3.0 - 1.0))));
  CHECK(d1[0] / d1[1] == doctest::Approx(std::exp(g * (1.0 - 0.0))));
  CHECK(d1[0] + d1[1] + d1[2] == doctest::Approx(1.0));
  CHECK_THROWS_AS(h.update({1.0}), std::invalid_argument);
}

TEST_CASE("hedge concentrates on a persistently better bid") {
  HedgeLearner h(2, 1.0);
  for (int t = 0; t < 400; ++t) h.update({0.1, 0.9});
  auto d = h.distribution();
  CHECK(d[1] > 0.99);
}

TEST_CASE("counterfactual rewards agree with a direct selection run") {
  Instance inst = two_free_modules();
  BidGrid grid = BidGrid::make(Scalar(1) / 8, inst.B);
  PaymentRule payment{10, to_double(Scalar(1) / 8), PaymentMode::NetUtility};
  PriceVector posted = {Scalar(1) / 2, Scalar(3) / 4};
  auto rewards = counterfactual_rewards(inst, posted, 1, grid, Rule::Bpb, payment, 5);
  REQUIRE(static_cast<int>(rewards.size()) == grid.m);
  for (int g = 0; g < grid.m; ++g) {
    PriceVector q = posted;
    q[1] = grid.bid(g);
    bool sel = greedy_bpb(inst, q, TieBreak::by_cost_ratio()).contains(1);
    CHECK(rewards[g] ==
          doctest::Approx(distorted_reward(payment, 5, to_double(q[1]), to_double(inst.c[1]), sel)));
  }
}

TEST_CASE("dynamics are reproducible per seed and across execution policies") {
  Instance inst = two_free_modules();
  DynamicsOptions serial;
  serial.policy = ExecPolicy::Serial;
  DynamicsOptions parallel;
  parallel.policy = ExecPolicy::Parallel;
  auto a = run_dynamics(inst, Scalar(1) / 8, 60, 20, 42, serial);
  auto b = run_dynamics(inst, Scalar(1) / 8, 60, 20, 42, serial);
  auto c = run_dynamics(inst, Scalar(1) / 8, 60, 20, 42, parallel);
  CHECK(a.bids == b.bids);
  CHECK(a.reward == b.reward);
  CHECK(a.selected == b.selected);
  CHECK(a.bids == c.bids);
  CHECK(a.reward == c.reward);
  CHECK(a.critical == c.critical);
  auto d = run_dynamics(inst, Scalar(1) / 8, 60, 20, 43, serial);
  CHECK(a.bids != d.bids);
}

TEST_CASE("recorded rewards match the payment rule applied to the trace") {
  Instance inst = two_free_modules();
  Scalar delta = Scalar(1) / 8;
  long t0 = 15;
  auto trace = run_dynamics(inst, delta, 40, t0, 7);
  PaymentRule payment{t0, to_double(delta), PaymentMode::NetUtility};
  for (long t = 0; t < trace.rounds; ++t)
    for (int i = 0; i < trace.n; ++i) {
      double expect = distorted_reward(payment, t + 1, to_double(trace.price(t, i)),
                                       to_double(inst.c[i]), trace.was_selected(t, i));
      CHECK(trace.reward[t * trace.n + i] == doctest::Approx(expect));
    }
}

TEST_CASE("a lone module learns to bid the whole budget") {
  Instance inst = single_free_module();
  auto trace = run_dynamics(inst, Scalar(1) / 4, 600, 200, 11);
  // always feasible, so the critical bid is the grid top every round
  for (long t = 0; t < trace.rounds; ++t) CHECK(trace.critical[t] == trace.grid_size - 1);
  long top = 0;
  for (long t = trace.rounds - 100; t < trace.rounds; ++t)
    if (trace.bids[t] == trace.grid_size - 1) ++top;
  CHECK(top > 90);
  auto j = nlohmann::json::parse(dynamics_summary_json(inst, trace, nullptr, 100));
  CHECK(j["modal_price"][0] == "1");
  CHECK(j["selected_frequency"][0].get<double>() == 1.0);
}

TEST_CASE("convergence check compares squared gaps exactly") {
  DynamicsTrace trace;
  trace.rounds = 5;
  trace.n = 1;
  trace.delta = Scalar(1) / 4;
  trace.grid_size = 4;
  trace.bids.assign(5, 3);  // price 1 every round
  trace.selected.assign(5, 1);
  CHECK(check_convergence(trace, {Scalar(1)}, Scalar(1) / 4, 5));
  CHECK(check_convergence(trace, {Scalar(1) / 2}, Scalar(1) / 4, 5));   // gap^2 == delta
  CHECK_FALSE(check_convergence(trace, {Scalar(1) / 4}, Scalar(1) / 4, 5));
  trace.bids[4] = 0;  // last round dips to 1/4
  CHECK_FALSE(check_convergence(trace, {Scalar(1)}, Scalar(1) / 4, 1));
  CHECK_THROWS_AS(check_convergence(trace, {Scalar(1)}, Scalar(1) / 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(check_convergence(trace, {Scalar(1)}, Scalar(1) / 4, 6), std::invalid_argument);
  CHECK_THROWS_AS(check_convergence(trace, {Scalar(1), Scalar(1)}, Scalar(1) / 4, 5),
                  std::invalid_argument);
}

TEST_CASE("exact shadow accumulators stay close to the float sigmas") {
  Instance inst = two_free_modules();
  DynamicsOptions opts;
  opts.exact_shadow = true;
  auto trace = run_dynamics(inst, Scalar(1) / 8, 200, 70, 3, opts);
  CHECK(trace.max_sigma_drift < 1e-9);
}

TEST_CASE("phase-switch constant saturates quickly") {
  // n = 2, delta = 1/2: ceil(4 * 2^22) = 2^24
  CHECK(paper_t0(2, Scalar(1) / 2) == (1L << 24));
  CHECK(paper_t0(3, Scalar(1) / 20) == 4000000000000000000L);
}

TEST_CASE("strict regime checks accept generated instances and reject violations") {
  Scalar delta = Scalar(1) / 20;
  Instance good = random_strict_instance(MatroidFamily::Free, 2, delta, 5);
  auto rep = check_strict_assumptions(good, delta);
  CHECK(rep.ok);
  CHECK(rep.diagnostic.empty());

  Instance bad = good;
  bad.B = Scalar(2);
  bad.c[0] = bad.c[0] * 2;  // keep validate-style sanity, budget is what trips
  CHECK_FALSE(check_strict_assumptions(bad, delta).ok);

  // delta >= 1/n^3
  CHECK_FALSE(check_strict_assumptions(good, Scalar(1) / 4).ok);
  // non-integral B/delta
  CHECK_FALSE(check_strict_assumptions(good, Scalar(3) / 7).ok);

  Instance cheap = good;
  cheap.c[0] = Scalar(1) / 10;  // (1/10)^3 <= 1/20
  CHECK(check_strict_assumptions(cheap, delta).diagnostic.find("cost") != std::string::npos);

  Instance heavy = good;
  heavy.v[0] = Scalar(100);  // above n^2
  CHECK(check_strict_assumptions(heavy, delta).diagnostic.find("value") != std::string::npos);

  DynamicsOptions opts;
  opts.strict = true;
  CHECK_THROWS_AS(run_dynamics(cheap, delta, 5, 1, 1, opts), std::invalid_argument);
}

TEST_CASE("structural properties hold around constructed equilibria") {
  Scalar delta = Scalar(1) / 100;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Instance inst = random_strict_instance(MatroidFamily::Uniform, 2, delta, seed);
    auto eq = construct_eq_weighted(inst);
    auto rep = check_structural_lemmas(inst, eq, delta, 200, seed * 97 + 1);
    CHECK(rep.ok);
    if (!rep.ok) {
      CAPTURE(rep.failed_lemma);
      CAPTURE(rep.diagnostic);
    }
    CHECK(rep.dominance_hyp + rep.rejection_hyp + rep.stability_hyp > 0);
  }
}

TEST_CASE("dynamics csv layout and summary json round-trip") {
  Instance inst = two_free_modules();
  auto trace = run_dynamics(inst, Scalar(1) / 8, 12, 4, 9);
  std::ostringstream os;
  write_dynamics_csv(trace, os, 3);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "round,module,price,selected,reward,critical_price");
  long rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 4 * trace.n);  // rounds 1, 4, 7, 10

  PriceVector target = {Scalar(1) / 2, Scalar(1) / 2};
  auto j = nlohmann::json::parse(dynamics_summary_json(inst, trace, &target, 8));
  CHECK(j["rounds"] == 12);
  CHECK(j["window"] == 8);
  CHECK(j["target"].size() == 2);
  CHECK(j.contains("converged"));
  CHECK(j["avg_price"].size() == 2);
}
