#include <doctest.h>

#include <random>

#include "bpb/matroid.hpp"

using namespace bpb;

namespace {

std::vector<int> subset_of(unsigned mask, int n) {
  std::vector<int> s;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1) s.push_back(i);
  return s;
}

// independence-oracle rank: greedily extend an independent subset
int oracle_rank(const MatroidSpec& m, const std::vector<int>& S) {
  std::vector<int> ind;
  for (int e : S) {
    ind.push_back(e);
    if (!is_independent(m, ind)) ind.pop_back();
  }
  return static_cast<int>(ind.size());
}

void check_axioms(const MatroidSpec& m) {
  const int n = m.n;
  REQUIRE(n <= 8);
  std::vector<char> indep(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    indep[mask] = is_independent(m, subset_of(mask, n));
  // empty set independent
  CHECK(indep[0]);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!indep[mask]) continue;
    // downward closure
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) CHECK(indep[mask & ~(1u << i)]);
    // exchange
    for (unsigned other = 0; other < (1u << n); ++other) {
      if (!indep[other]) continue;
      if (__builtin_popcount(mask) >= __builtin_popcount(other)) continue;
      bool extended = false;
      for (int i = 0; i < n && !extended; ++i)
        if ((other >> i & 1) && !(mask >> i & 1) && indep[mask | (1u << i)]) extended = true;
      CHECK(extended);
    }
  }
  // closed-form rank agrees with the oracle loop
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    auto S = subset_of(mask, n);
    CHECK(rank(m, S) == oracle_rank(m, S));
  }
}

}  // namespace

TEST_CASE("axioms hold for all four families") {
  check_axioms(MatroidSpec::free(4));
  check_axioms(MatroidSpec::uniform(5, 2));
  check_axioms(MatroidSpec::partition(5, {{0, 1, 2}, {3, 4}}, {2, 1}));
  // triangle plus a pendant edge and a parallel edge
  check_axioms(MatroidSpec::graphic(5, 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 1}}));
}

TEST_CASE("rank closed forms") {
  auto u = MatroidSpec::uniform(6, 3);
  CHECK(rank(u, {0, 1}) == 2);
  CHECK(rank(u, {0, 1, 2, 3, 4}) == 3);
  auto g = MatroidSpec::graphic(3, 3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(rank(g, {0, 1, 2}) == 2);  // a cycle
  CHECK(is_independent(g, {0, 1}));
  CHECK_FALSE(is_independent(g, {0, 1, 2}));
}

TEST_CASE("span_contains and fundamental_circuit") {
  auto g = MatroidSpec::graphic(4, 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  CHECK(span_contains(g, {0, 1}, 2));
  CHECK_FALSE(span_contains(g, {0, 1}, 3));
  CHECK(fundamental_circuit(g, {0, 1}, 2) == std::vector<int>{0, 1, 2});
  // circuit property: dependent, but every proper subset independent
  auto p = MatroidSpec::partition(4, {{0, 1, 2}, {3}}, {2, 1});
  CHECK(span_contains(p, {0, 1, 3}, 2));
  auto c = fundamental_circuit(p, {0, 1, 3}, 2);
  CHECK(c == std::vector<int>{0, 1, 2});
  CHECK_FALSE(is_independent(p, c));
  for (size_t drop = 0; drop < c.size(); ++drop) {
    auto sub = c;
    sub.erase(sub.begin() + drop);
    CHECK(is_independent(p, sub));
  }
}

TEST_CASE("fundamental_circuit preconditions") {
  auto u = MatroidSpec::uniform(4, 2);
  CHECK_THROWS_AS(fundamental_circuit(u, {0}, 1), std::logic_error);        // not spanned
  CHECK_THROWS_AS(fundamental_circuit(u, {0, 1, 2}, 3), std::logic_error);  // base dependent
}

TEST_CASE("max_weight_independent matches brute force") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 3 + static_cast<int>(rng() % 5);
    MatroidSpec m;
    switch (rng() % 3) {
      case 0: m = MatroidSpec::uniform(n, 1 + static_cast<int>(rng() % n)); break;
      case 1: {
        std::vector<std::vector<int>> blocks(2);
        for (int i = 0; i < n; ++i) blocks[rng() % 2].push_back(i);
        if (blocks[0].empty() || blocks[1].empty()) { m = MatroidSpec::free(n); break; }
        m = MatroidSpec::partition(n, blocks, {1 + (int)(rng() % blocks[0].size()),
                                               1 + (int)(rng() % blocks[1].size())});
        break;
      }
      default: {
        int V = 2 + static_cast<int>(rng() % 3);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) {
          int a = static_cast<int>(rng() % V), b = static_cast<int>(rng() % (V - 1));
          if (b >= a) ++b;
          edges.emplace_back(a, b);
        }
        m = MatroidSpec::graphic(n, V, edges);
      }
    }
    std::vector<Scalar> w(n);
    std::vector<int> ground(n);
    for (int i = 0; i < n; ++i) {
      w[i] = Scalar(static_cast<long>(rng() % 20)) / 3;  // may be zero
      ground[i] = i;
    }
    auto got = max_weight_independent(m, w, ground);
    Scalar got_w = 0;
    for (int i : got) got_w += w[i];
    CHECK(is_independent(m, got));
    Scalar best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      auto S = subset_of(mask, n);
      if (!is_independent(m, S)) continue;
      Scalar tw = 0;
      for (int i : S) tw += w[i];
      if (tw > best) best = tw;
    }
    CHECK(got_w == best);
  }
}

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(MatroidSpec::uniform(3, -1), std::invalid_argument);
  CHECK_THROWS_AS(MatroidSpec::partition(3, {{0, 1}}, {1}), std::invalid_argument);  // not covering
  CHECK_THROWS_AS(MatroidSpec::partition(3, {{0, 1}, {1, 2}}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(MatroidSpec::graphic(2, 2, {{0, 1}}), std::invalid_argument);  // edge count
  CHECK_THROWS_AS(MatroidSpec::graphic(1, 2, {{0, 5}}), std::invalid_argument);  // endpoint range
}
