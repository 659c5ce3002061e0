#include <doctest.h>

#include <stdexcept>

#include "bjorth/rational.hpp"

using namespace bjorth;

TEST_CASE("parse_rational literals") {
  CHECK(parse_rational("1/3") == Rat(1) / 3);
  CHECK(parse_rational("-3/6") == Rat(-1) / 2);
  CHECK(parse_rational("2") == Rat(2));
  CHECK(parse_rational("-0.5") == Rat(-1) / 2);
  CHECK(parse_rational("0.125") == Rat(1) / 8);
  CHECK(parse_rational(" 7 / 2 ") == Rat(7) / 2);
  CHECK(parse_rational("-0") == Rat(0));

  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
}

TEST_CASE("rational_to_string round trips") {
  const Rat cases[] = {Rat(0), Rat(5), Rat(-7) / 3, Rat(22) / 7,
                       Rat(1) / 1000000};
  for (const Rat& r : cases) {
    CHECK(parse_rational(rational_to_string(r)) == r);
  }
}

TEST_CASE("rational_from_double is exact on dyadics") {
  CHECK(rational_from_double(0.5) == Rat(1) / 2);
  CHECK(rational_from_double(-2.75) == Rat(-11) / 4);
  CHECK(rational_from_double(0.0) == Rat(0));
  // 0.1 is not 1/10 in binary; the conversion must reproduce the stored
  // double bit-exactly.
  const Rat tenth = rational_from_double(0.1);
  CHECK(tenth != Rat(1) / 10);
  CHECK(rational_to_double(tenth) == 0.1);
}

TEST_CASE("rvec round trip") {
  const std::vector<double> v{1.0, -0.25, 3.5};
  const RVec r = rvec_from_doubles(v);
  CHECK(r == RVec{Rat(1), Rat(-1) / 4, Rat(7) / 2});
  CHECK(rvec_to_doubles(r) == v);
}

TEST_CASE("vector arithmetic") {
  const RVec a{Rat(1), Rat(2)};
  const RVec b{Rat(3), Rat(-1)};
  CHECK(dot(a, b) == Rat(1));
  CHECK(add(a, b) == RVec{Rat(4), Rat(1)});
  CHECK(sub(a, b) == RVec{Rat(-2), Rat(3)});
  CHECK(scale(a, Rat(1) / 2) == RVec{Rat(1) / 2, Rat(1)});
  CHECK(negate(b) == RVec{Rat(-3), Rat(1)});
  CHECK(is_zero(RVec{Rat(0), Rat(0)}));
  CHECK_FALSE(is_zero(a));
  CHECK(compare(a, a) == 0);
  CHECK(compare(a, b) < 0);
  CHECK(compare(b, a) > 0);
}

TEST_CASE("rank") {
  CHECK(rank(RMat{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}) == 2);
  CHECK(rank(RMat{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}) == 1);
  CHECK(rank(RMat{{Rat(0), Rat(0)}}) == 0);
  // Non-dyadic entries stay exact.
  CHECK(rank(RMat{{Rat(1) / 3, Rat(2) / 3}, {Rat(1), Rat(2)}}) == 1);
}

TEST_CASE("nullspace spans the annihilator") {
  const RMat rows{{Rat(1), Rat(0), Rat(0)}};
  const RMat ns = nullspace(rows);
  CHECK(static_cast<int>(ns.size()) == 2);
  for (const RVec& n : ns) {
    CHECK(dot(n, rows[0]) == Rat(0));
  }
  CHECK(rank(ns) == 2);

  const RMat full{{Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
  CHECK(nullspace(full).empty());
}

TEST_CASE("solve_unique") {
  const RMat a{{Rat(2), Rat(1)}, {Rat(1), Rat(-1)}};
  const auto x = solve_unique(a, RVec{Rat(4), Rat(-1)});
  REQUIRE(x.has_value());
  CHECK(*x == RVec{Rat(1), Rat(2)});

  const RMat singular{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK_FALSE(solve_unique(singular, RVec{Rat(1), Rat(1)}).has_value());
}

TEST_CASE("rref canonicalizes the row space") {
  const RMat a{{Rat(1), Rat(2), Rat(3)}, {Rat(0), Rat(1), Rat(1)}};
  // Same row space, different generators.
  const RMat b{{Rat(1), Rat(3), Rat(4)}, {Rat(2), Rat(5), Rat(7)}};
  CHECK(rref(a) == rref(b));
  CHECK(rref(a) != rref(RMat{{Rat(1), Rat(2), Rat(3)}}));
}

TEST_CASE("strictly_feasible") {
  CHECK(strictly_feasible(RMat{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
  CHECK(strictly_feasible(RMat{{Rat(1), Rat(0)}, {Rat(-1), Rat(1)}}));
  CHECK_FALSE(strictly_feasible(RMat{{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}}));
  // Three half-planes with empty common interior.
  CHECK_FALSE(strictly_feasible(
      RMat{{Rat(1), Rat(0)}, {Rat(-1), Rat(1)}, {Rat(-1), Rat(-1)}}));
}

TEST_CASE("in_convex_hull") {
  const RMat pts{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  CHECK(in_convex_hull(RVec{Rat(1) / 2, Rat(1) / 2}, pts));
  CHECK(in_convex_hull(RVec{Rat(1), Rat(0)}, pts));
  CHECK_FALSE(in_convex_hull(RVec{Rat(1), Rat(1)}, pts));
  CHECK_FALSE(in_convex_hull(RVec{Rat(0), Rat(0)}, pts));
}
