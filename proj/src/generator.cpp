#include "bpb/generator.hpp"

#include <algorithm>
#include <stdexcept>

#include "bpb/equilibrium.hpp"
#include "bpb/learning.hpp"

namespace bpb {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<unsigned>(seed & 0xffffffffu), static_cast<unsigned>(seed >> 32),
                    static_cast<unsigned>(salt)};
  return std::mt19937_64(seq);
}

// uniform rational in [lo, hi] on a grid of `steps` intervals
Scalar uniform_scalar(std::mt19937_64& rng, const Scalar& lo, const Scalar& hi, int steps) {
  return lo + (hi - lo) * Scalar(static_cast<long>(rng() % (steps + 1))) / steps;
}

}  // namespace

MatroidSpec random_matroid(MatroidFamily family, int n, std::mt19937_64& rng) {
  switch (family) {
    case MatroidFamily::Free:
      return MatroidSpec::free(n);
    case MatroidFamily::Uniform:
      return MatroidSpec::uniform(n, 1 + static_cast<int>(rng() % n));
    case MatroidFamily::Partition: {
      int nblocks = 1 + static_cast<int>(rng() % std::min(n, 4));
      std::vector<std::vector<int>> blocks(nblocks);
      for (int i = 0; i < n; ++i) blocks[rng() % nblocks].push_back(i);
      blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                  [](const auto& b) { return b.empty(); }),
                   blocks.end());
      std::vector<int> caps;
      for (const auto& b : blocks)
        caps.push_back(1 + static_cast<int>(rng() % b.size()));
      return MatroidSpec::partition(n, std::move(blocks), std::move(caps));
    }
    case MatroidFamily::Graphic: {
      int vertices = 2 + static_cast<int>(rng() % n);
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i) {
        int u = static_cast<int>(rng() % vertices);
        int w = static_cast<int>(rng() % (vertices - 1));
        if (w >= u) ++w;  // no self-loops
        edges.emplace_back(u, w);
      }
      return MatroidSpec::graphic(n, vertices, std::move(edges));
    }
  }
  throw std::logic_error("unreachable");
}

Instance random_instance(MatroidFamily family, int n, std::uint64_t seed, const GenOptions& opts) {
  if (n <= 0) throw std::invalid_argument("random_instance: n must be positive");
  auto rng = seeded(seed, 0x6a09e667u);
  Instance inst;
  inst.n = n;
  inst.B = opts.B;
  Scalar cmax = opts.lambda * opts.B;
  Scalar cfloor = opts.cost_floor > 0 ? opts.cost_floor : Scalar(cmax / 100);
  if (cfloor > cmax) throw std::invalid_argument("random_instance: cost floor exceeds lambda*B");
  inst.v.resize(n);
  inst.c.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.v[i] = Scalar(1 + static_cast<long>(rng() % (opts.value_max * opts.granularity))) /
                opts.granularity;
    inst.c[i] = uniform_scalar(rng, cfloor, cmax, opts.granularity);
  }
  inst.matroid = random_matroid(family, n, rng);
  if (opts.distinct_ratios) inst = perturb_distinct_ratios(inst, opts.perturb_eps);
  inst.validate();
  return inst;
}

Instance random_strict_instance(MatroidFamily family, int n, const Scalar& delta,
                                std::uint64_t seed, int max_tries) {
  auto rng = seeded(seed, 0xbb67ae85u);
  // cost band (delta^(1/3), 1/2]: lower edge via the exact cubed comparison
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Instance inst;
    inst.n = n;
    inst.B = 1;
    inst.v.resize(n);
    inst.c.resize(n);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      inst.v[i] = Scalar(1 + static_cast<long>(rng() % (n * n)));
      inst.c[i] = uniform_scalar(rng, Scalar(1) / 8, Scalar(1) / 2, 96);
      if (inst.c[i] * inst.c[i] * inst.c[i] <= delta) ok = false;
    }
    if (!ok) continue;
    // distinct ratios, exactly
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        if (inst.v[i] * inst.c[j] == inst.v[j] * inst.c[i]) ok = false;
    if (!ok) continue;
    inst.matroid = random_matroid(family, n, rng);
    inst.validate();
    if (check_strict_assumptions(inst, delta).ok) return inst;
  }
  throw std::runtime_error("random_strict_instance: no admissible instance found");
}

}  // namespace bpb
