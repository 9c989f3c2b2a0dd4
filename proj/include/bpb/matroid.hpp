#pragma once

#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bpb/scalar.hpp"

namespace bpb {

// Four concrete matroid families over the ground set {0..n-1} (module ids are
// 0-based internally; the file format is 1-based).

struct FreeMatroid {};

struct UniformMatroid {
  int k = 0;
};

struct PartitionMatroid {
  std::vector<std::vector<int>> blocks;  // disjoint cover of the ground set
  std::vector<int> caps;                 // one capacity per block
  std::vector<int> block_of;             // element -> block index (derived)
};

struct GraphicMatroid {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // edge i = ground element i
};

struct MatroidSpec {
  int n = 0;
  std::variant<FreeMatroid, UniformMatroid, PartitionMatroid, GraphicMatroid> family;

  static MatroidSpec free(int n);
  static MatroidSpec uniform(int n, int k);
  static MatroidSpec partition(int n, std::vector<std::vector<int>> blocks, std::vector<int> caps);
  static MatroidSpec graphic(int n, int vertices, std::vector<std::pair<int, int>> edges);
};

bool is_independent(const MatroidSpec& m, const std::vector<int>& S);

// Closed-form per family; no generic oracle loop.
int rank(const MatroidSpec& m, const std::vector<int>& S);

// rank(S ∪ {e}) == rank(S). e ∈ S is trivially spanned.
bool span_contains(const MatroidSpec& m, const std::vector<int>& S, int e);

// Unique circuit in G ∪ {e}; requires G independent and e ∈ span(G).
// Returned sorted ascending.
std::vector<int> fundamental_circuit(const MatroidSpec& m, const std::vector<int>& G, int e);

// Classic matroid greedy: descending weight, ties by lower index; zero- and
// negative-weight elements never enter. Returned sorted ascending.
std::vector<int> max_weight_independent(const MatroidSpec& m, const std::vector<Scalar>& weights,
                                        const std::vector<int>& ground);

MatroidSpec matroid_from_json(const nlohmann::json& j, int n);
nlohmann::json matroid_to_json(const MatroidSpec& m);

}  // namespace bpb
