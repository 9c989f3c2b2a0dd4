#pragma once

#include <cstdint>
#include <random>

#include "bpb/instance.hpp"

namespace bpb {

enum class MatroidFamily { Free, Uniform, Partition, Graphic };

struct GenOptions {
  Scalar B = 1;
  Scalar lambda = Scalar(1) / 5;  // costs bounded by lambda * B
  Scalar cost_floor;              // default lambda * B / 100 when unset (<= 0)
  int value_max = 10;             // values in (0, value_max]
  int granularity = 64;           // denominator of generated rationals
  bool distinct_ratios = true;    // perturb values until v/c are pairwise distinct
  Scalar perturb_eps = Scalar(1) / 1000;
};

MatroidSpec random_matroid(MatroidFamily family, int n, std::mt19937_64& rng);

// Deterministic per (family, n, seed, opts).
Instance random_instance(MatroidFamily family, int n, std::uint64_t seed,
                         const GenOptions& opts = {});

// Instance passing check_strict_assumptions at `delta`: unit budget, integer
// values in [1, n^2], costs above delta^(1/3), distinct ratios, no-tie
// condition. Generate-and-filter; throws after max_tries rejections.
Instance random_strict_instance(MatroidFamily family, int n, const Scalar& delta,
                                std::uint64_t seed, int max_tries = 2000);

}  // namespace bpb
