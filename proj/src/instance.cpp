#include "bpb/instance.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bpb {

void Instance::validate() const {
  if (n <= 0) throw std::invalid_argument("instance: n must be positive");
  if (static_cast<int>(v.size()) != n || static_cast<int>(c.size()) != n)
    throw std::invalid_argument("instance: values/costs length must equal n");
  if (matroid.n != n) throw std::invalid_argument("instance: matroid ground set must equal n");
  if (B <= 0) throw std::invalid_argument("instance: budget must be positive");
  for (int i = 0; i < n; ++i) {
    if (v[i] < 0) throw std::invalid_argument("instance: values[" + std::to_string(i + 1) + "] must be >= 0");
    if (c[i] < 0) throw std::invalid_argument("instance: costs[" + std::to_string(i + 1) + "] must be >= 0");
    // A module costing more than the budget has an empty strategy space.
    if (c[i] > B) throw std::invalid_argument("instance: costs[" + std::to_string(i + 1) + "] exceeds budget");
  }
}

bool SelectionResult::contains(int i) const {
  return std::binary_search(selected.begin(), selected.end(), i);
}

Scalar SelectionResult::value(const Instance& inst) const {
  Scalar total = 0;
  for (int i : selected) total += inst.v[i];
  return total;
}

Scalar utility(const Instance& inst, const PriceVector& p, const SelectionResult& sel, int i) {
  if (i < 0 || i >= inst.n) throw std::out_of_range("utility: module id out of range");
  return sel.contains(i) ? Scalar(p[i] - inst.c[i]) : Scalar(0);
}

Scalar lambda_max(const Instance& inst) {
  Scalar cmax = 0;
  for (const auto& ci : inst.c) cmax = std::max(cmax, ci);
  return cmax / inst.B;
}

namespace {

std::vector<Scalar> parse_scalar_array(const nlohmann::json& j, const std::string& field, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw std::invalid_argument("instance: \"" + field + "\" must be an array of length n");
  std::vector<Scalar> out;
  out.reserve(n);
  for (const auto& e : j) out.push_back(parse_scalar(e.get<std::string>()));
  return out;
}

nlohmann::json scalar_array_to_json(const std::vector<Scalar>& xs) {
  auto arr = nlohmann::json::array();
  for (const auto& x : xs) arr.push_back(to_fraction_string(x));
  return arr;
}

}  // namespace

Instance load_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance: malformed JSON: ") + e.what());
  }
  Instance inst;
  inst.n = j.at("n").get<int>();
  inst.v = parse_scalar_array(j.at("values"), "values", inst.n);
  inst.c = parse_scalar_array(j.at("costs"), "costs", inst.n);
  inst.B = parse_scalar(j.at("budget").get<std::string>());
  inst.matroid = matroid_from_json(j.at("matroid"), inst.n);
  inst.validate();
  return inst;
}

std::string save_instance(const Instance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["values"] = scalar_array_to_json(inst.v);
  j["costs"] = scalar_array_to_json(inst.c);
  j["budget"] = to_fraction_string(inst.B);
  j["matroid"] = matroid_to_json(inst.matroid);
  return j.dump(2) + "\n";
}

PriceVector load_prices(const std::string& text, int n) {
  nlohmann::json j = nlohmann::json::parse(text);
  const nlohmann::json& arr = j.is_array() ? j : j.at("prices");
  if (static_cast<int>(arr.size()) != n)
    throw std::invalid_argument("prices: expected " + std::to_string(n) + " entries");
  PriceVector p;
  p.reserve(n);
  for (const auto& e : arr) p.push_back(parse_scalar(e.get<std::string>()));
  return p;
}

std::string save_prices(const PriceVector& p) {
  nlohmann::json j;
  j["prices"] = scalar_array_to_json(p);
  return j.dump(2) + "\n";
}

std::string selection_to_json_string(const SelectionResult& sel) {
  nlohmann::json j;
  auto ids = nlohmann::json::array();
  for (int i : sel.selected) ids.push_back(i + 1);
  j["selected"] = ids;
  j["spend"] = to_fraction_string(sel.spend);
  auto order = nlohmann::json::array();
  for (int i : sel.inspection_order) order.push_back(i + 1);
  j["order"] = order;
  auto swaps = nlohmann::json::array();
  for (const auto& s : sel.swaps) {
    nlohmann::json js;
    js["removed"] = s.removed + 1;
    js["added"] = s.added + 1;
    auto circ = nlohmann::json::array();
    for (int e : s.circuit) circ.push_back(e + 1);
    js["circuit"] = circ;
    swaps.push_back(js);
  }
  j["swaps"] = swaps;
  if (sel.terminated_at)
    j["terminated_at"] = *sel.terminated_at + 1;
  else
    j["terminated_at"] = nullptr;
  return j.dump(2) + "\n";
}

}  // namespace bpb
