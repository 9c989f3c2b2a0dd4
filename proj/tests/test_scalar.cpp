#include <doctest.h>

#include "bpb/scalar.hpp"

using namespace bpb;

TEST_CASE("parse_scalar handles integers, decimals and fractions") {
  CHECK(parse_scalar("3") == Scalar(3));
  CHECK(parse_scalar("-7") == Scalar(-7));
  CHECK(parse_scalar("4.4") == Scalar(22) / 5);
  CHECK(parse_scalar("22/5") == Scalar(22) / 5);
  CHECK(parse_scalar("0.125") == Scalar(1) / 8);
  CHECK(parse_scalar("-0.5") == Scalar(-1) / 2);
}

TEST_CASE("parse_scalar rejects malformed input") {
  CHECK_THROWS_AS(parse_scalar(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("1.2.3"), std::invalid_argument);
}

TEST_CASE("to_fraction_string round-trips through parse_scalar") {
  for (const char* s : {"3", "-7", "22/5", "1/8", "0", "-3/7"}) {
    Scalar x = parse_scalar(s);
    CHECK(parse_scalar(to_fraction_string(x)) == x);
    CHECK(to_fraction_string(x) == s);
  }
  CHECK(to_fraction_string(parse_scalar("4.4")) == "22/5");
}

TEST_CASE("rational arithmetic is exact") {
  Scalar a = Scalar(1) / 3, b = Scalar(1) / 6;
  CHECK(a + b == Scalar(1) / 2);
  CHECK(a - b == b);
  CHECK(a * b == Scalar(1) / 18);
  CHECK(a / b == 2);
  // the classic float counterexample
  Scalar tenth = Scalar(1) / 10;
  CHECK(tenth + tenth + tenth == Scalar(3) / 10);
}

TEST_CASE("to_double is a faithful approximation") {
  CHECK(to_double(Scalar(1) / 2) == 0.5);
  CHECK(to_double(Scalar(22) / 5) == doctest::Approx(4.4));
}
