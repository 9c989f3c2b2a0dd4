#include "bpb/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bpb {

namespace {

void check_range(const MatroidSpec& m, const std::vector<int>& S) {
  for (int e : S)
    if (e < 0 || e >= m.n) throw std::out_of_range("matroid element out of range");
}

// Union-find over graphic-matroid vertices.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns false if x and y were already connected.
  bool unite(int x, int y) {
    x = find(x); y = find(y);
    if (x == y) return false;
    parent[x] = y;
    return true;
  }
};

int graphic_rank(const GraphicMatroid& g, const std::vector<int>& S) {
  Dsu dsu(g.vertices);
  int r = 0;
  for (int e : S)
    if (dsu.unite(g.edges[e].first, g.edges[e].second)) ++r;
  return r;
}

int partition_rank(const PartitionMatroid& p, const std::vector<int>& S) {
  std::vector<int> count(p.caps.size(), 0);
  for (int e : S) ++count[p.block_of[e]];
  int r = 0;
  for (size_t b = 0; b < p.caps.size(); ++b) r += std::min(count[b], p.caps[b]);
  return r;
}

}  // namespace

MatroidSpec MatroidSpec::free(int n) { return {n, FreeMatroid{}}; }

MatroidSpec MatroidSpec::uniform(int n, int k) {
  if (k < 0) throw std::invalid_argument("uniform matroid capacity must be >= 0");
  return {n, UniformMatroid{k}};
}

MatroidSpec MatroidSpec::partition(int n, std::vector<std::vector<int>> blocks,
                                   std::vector<int> caps) {
  if (blocks.size() != caps.size())
    throw std::invalid_argument("partition matroid: one capacity per block required");
  PartitionMatroid p;
  p.block_of.assign(n, -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (caps[b] < 0) throw std::invalid_argument("partition matroid capacity must be >= 0");
    for (int e : blocks[b]) {
      if (e < 0 || e >= n) throw std::invalid_argument("partition matroid element out of range");
      if (p.block_of[e] != -1) throw std::invalid_argument("partition matroid blocks overlap");
      p.block_of[e] = static_cast<int>(b);
    }
  }
  for (int e = 0; e < n; ++e)
    if (p.block_of[e] == -1) throw std::invalid_argument("partition matroid blocks must cover ground set");
  p.blocks = std::move(blocks);
  p.caps = std::move(caps);
  return {n, std::move(p)};
}

MatroidSpec MatroidSpec::graphic(int n, int vertices, std::vector<std::pair<int, int>> edges) {
  if (static_cast<int>(edges.size()) != n)
    throw std::invalid_argument("graphic matroid: edge count must equal module count");
  for (auto& [u, w] : edges)
    if (u < 0 || u >= vertices || w < 0 || w >= vertices)
      throw std::invalid_argument("graphic matroid edge endpoint out of range");
  return {n, GraphicMatroid{vertices, std::move(edges)}};
}

int rank(const MatroidSpec& m, const std::vector<int>& S) {
  check_range(m, S);
  return std::visit(
      [&](const auto& fam) -> int {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, FreeMatroid>)
          return static_cast<int>(S.size());
        else if constexpr (std::is_same_v<T, UniformMatroid>)
          return std::min<int>(static_cast<int>(S.size()), fam.k);
        else if constexpr (std::is_same_v<T, PartitionMatroid>)
          return partition_rank(fam, S);
        else
          return graphic_rank(fam, S);
      },
      m.family);
}

bool is_independent(const MatroidSpec& m, const std::vector<int>& S) {
  return rank(m, S) == static_cast<int>(S.size());
}

bool span_contains(const MatroidSpec& m, const std::vector<int>& S, int e) {
  if (e < 0 || e >= m.n) throw std::out_of_range("matroid element out of range");
  if (std::find(S.begin(), S.end(), e) != S.end()) return true;
  std::vector<int> Se = S;
  Se.push_back(e);
  return rank(m, Se) == rank(m, S);
}

std::vector<int> fundamental_circuit(const MatroidSpec& m, const std::vector<int>& G, int e) {
  if (!is_independent(m, G))
    throw std::logic_error("fundamental_circuit: G must be independent");
  if (!span_contains(m, G, e))
    throw std::logic_error("fundamental_circuit: e must lie in span(G)");
  std::vector<int> Ge = G;
  Ge.push_back(e);
  std::vector<int> circuit;
  for (int j : Ge) {
    std::vector<int> without;
    without.reserve(Ge.size() - 1);
    for (int x : Ge)
      if (x != j) without.push_back(x);
    if (!is_independent(m, without)) continue;  // removing j did not break the circuit
    circuit.push_back(j);
  }
  std::sort(circuit.begin(), circuit.end());
  return circuit;
}

std::vector<int> max_weight_independent(const MatroidSpec& m, const std::vector<Scalar>& weights,
                                        const std::vector<int>& ground) {
  check_range(m, ground);
  std::vector<int> order;
  for (int e : ground)
    if (weights[e] > 0) order.push_back(e);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
  std::vector<int> chosen;
  for (int e : order) {
    chosen.push_back(e);
    if (!is_independent(m, chosen)) chosen.pop_back();
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

MatroidSpec matroid_from_json(const nlohmann::json& j, int n) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "free") return MatroidSpec::free(n);
  if (kind == "uniform") return MatroidSpec::uniform(n, j.at("k").get<int>());
  if (kind == "partition") {
    std::vector<std::vector<int>> blocks;
    for (const auto& jb : j.at("blocks")) {
      std::vector<int> block;
      for (const auto& e : jb) block.push_back(e.get<int>() - 1);  // file format is 1-based
      blocks.push_back(std::move(block));
    }
    return MatroidSpec::partition(n, std::move(blocks), j.at("caps").get<std::vector<int>>());
  }
  if (kind == "graphic") {
    std::vector<std::pair<int, int>> edges;
    for (const auto& je : j.at("edges"))
      edges.emplace_back(je.at(0).get<int>() - 1, je.at(1).get<int>() - 1);
    return MatroidSpec::graphic(n, j.at("vertices").get<int>(), std::move(edges));
  }
  throw std::invalid_argument("unknown matroid kind \"" + kind + "\"");
}

nlohmann::json matroid_to_json(const MatroidSpec& m) {
  nlohmann::json j;
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, FreeMatroid>) {
          j["kind"] = "free";
        } else if constexpr (std::is_same_v<T, UniformMatroid>) {
          j["kind"] = "uniform";
          j["k"] = fam.k;
        } else if constexpr (std::is_same_v<T, PartitionMatroid>) {
          j["kind"] = "partition";
          auto blocks = nlohmann::json::array();
          for (const auto& block : fam.blocks) {
            auto jb = nlohmann::json::array();
            for (int e : block) jb.push_back(e + 1);
            blocks.push_back(jb);
          }
          j["blocks"] = blocks;
          j["caps"] = fam.caps;
        } else {
          j["kind"] = "graphic";
          j["vertices"] = fam.vertices;
          auto jes = nlohmann::json::array();
          for (auto& [u, w] : fam.edges) jes.push_back({u + 1, w + 1});
          j["edges"] = jes;
        }
      },
      m.family);
  return j;
}

}  // namespace bpb
