#include <doctest.h>

#include "bpb/instance.hpp"

using namespace bpb;

namespace {

Instance make_small() {
  Instance inst;
  inst.n = 3;
  inst.v = {Scalar(1), Scalar(3), Scalar(22) / 5};
  inst.c = {Scalar(0), Scalar(5) / 2, Scalar(2)};
  inst.B = Scalar(10);
  inst.matroid = MatroidSpec::uniform(3, 2);
  inst.validate();
  return inst;
}

}  // namespace

TEST_CASE("validate rejects malformed instances") {
  Instance inst = make_small();
  Instance bad = inst;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.v.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.B = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.c[1] = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.c[2] = Scalar(11);  // above budget: empty strategy space
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.matroid = MatroidSpec::free(4);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("instance JSON round-trip") {
  Instance inst = make_small();
  Instance back = load_instance(save_instance(inst));
  CHECK(back.n == inst.n);
  CHECK(back.v == inst.v);
  CHECK(back.c == inst.c);
  CHECK(back.B == inst.B);
  CHECK(std::get<UniformMatroid>(back.matroid.family).k == 2);
}

TEST_CASE("instance JSON round-trip for every matroid family") {
  Instance inst = make_small();
  inst.matroid = MatroidSpec::free(3);
  CHECK(load_instance(save_instance(inst)).matroid.family.index() == inst.matroid.family.index());
  inst.matroid = MatroidSpec::partition(3, {{0, 2}, {1}}, {1, 1});
  Instance back = load_instance(save_instance(inst));
  CHECK(std::get<PartitionMatroid>(back.matroid.family).blocks ==
        std::get<PartitionMatroid>(inst.matroid.family).blocks);
  inst.matroid = MatroidSpec::graphic(3, 3, {{0, 1}, {1, 2}, {0, 2}});
  back = load_instance(save_instance(inst));
  CHECK(std::get<GraphicMatroid>(back.matroid.family).edges ==
        std::get<GraphicMatroid>(inst.matroid.family).edges);
}

TEST_CASE("malformed instance JSON is reported") {
  CHECK_THROWS_AS(load_instance("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(load_instance("{\"n\": 2}"), std::exception);
}

TEST_CASE("price vector IO accepts bare arrays and wrapped objects") {
  auto p = load_prices("[\"1\", \"22/5\"]", 2);
  CHECK(p == PriceVector{Scalar(1), Scalar(22) / 5});
  auto q = load_prices(save_prices(p), 2);
  CHECK(q == p);
  CHECK_THROWS_AS(load_prices("[\"1\"]", 2), std::invalid_argument);
}

TEST_CASE("utility and lambda_max") {
  Instance inst = make_small();
  SelectionResult sel;
  sel.selected = {1};
  sel.spend = Scalar(3);
  PriceVector p = {Scalar(1), Scalar(3), Scalar(4)};
  CHECK(utility(inst, p, sel, 1) == Scalar(1) / 2);
  CHECK(utility(inst, p, sel, 0) == 0);
  CHECK_THROWS_AS(utility(inst, p, sel, 5), std::out_of_range);
  CHECK(lambda_max(inst) == Scalar(1) / 4);
}

TEST_CASE("selection JSON uses 1-based ids and nullable termination") {
  SelectionResult sel;
  sel.selected = {0, 2};
  sel.spend = Scalar(7) / 2;
  sel.inspection_order = {2, 0, 1};
  sel.terminated_at = 1;
  auto text = selection_to_json_string(sel);
  CHECK(text.find("\"selected\": [\n    1,\n    3\n  ]") != std::string::npos);
  CHECK(text.find("\"terminated_at\": 2") != std::string::npos);
  CHECK(text.find("7/2") != std::string::npos);
}
