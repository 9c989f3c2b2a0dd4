#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpb/matroid.hpp"
#include "bpb/scalar.hpp"

namespace bpb {

// The procurement game ⟨modules, values, costs, matroid, budget⟩. Immutable
// after construction; module ids are 0-based internally, 1-based in files.
struct Instance {
  int n = 0;
  std::vector<Scalar> v;
  std::vector<Scalar> c;
  MatroidSpec matroid;
  Scalar B;

  void validate() const;  // throws std::invalid_argument naming the violation
};

// One posted price per module. Strategy profiles satisfy c(i) <= p(i) <= B;
// deviation probes inside the verifier may go below cost.
using PriceVector = std::vector<Scalar>;

struct Swap {
  int removed = -1;
  int added = -1;
  std::vector<int> circuit;
};

struct SelectionResult {
  std::vector<int> selected;  // sorted ascending
  Scalar spend;               // sum of prices over selected
  std::vector<int> inspection_order;
  std::vector<Swap> swaps;
  std::optional<int> terminated_at;  // first module whose inclusion broke the budget

  bool contains(int i) const;
  Scalar value(const Instance& inst) const;
};

Scalar utility(const Instance& inst, const PriceVector& p, const SelectionResult& sel, int i);

// max_i c(i) / B.
Scalar lambda_max(const Instance& inst);

Instance load_instance(const std::string& text);
std::string save_instance(const Instance& inst);

PriceVector load_prices(const std::string& text, int n);
std::string save_prices(const PriceVector& p);

std::string selection_to_json_string(const SelectionResult& sel);

}  // namespace bpb
