#include <doctest.h>

#include "bjorth/arrangement.hpp"
#include "bjorth/types.hpp"

using namespace bjorth;

namespace {

RVec rv2(const Rat& a, const Rat& b) { return RVec{a, b}; }

ConeCondition straddle(RMat f) {
  return ConeCondition{ConeCondition::Kind::Straddle, std::move(f)};
}
ConeCondition allpos(RMat f) {
  return ConeCondition{ConeCondition::Kind::AllPositive, std::move(f)};
}

}  // namespace

TEST_CASE("straddle_holds") {
  const RMat axes{rv2(1, 0), rv2(0, 1)};
  CHECK(straddle_holds(axes, rv2(1, -1)));
  CHECK(straddle_holds(axes, rv2(0, 5)));  // a zero value straddles
  CHECK_FALSE(straddle_holds(axes, rv2(1, 1)));
  CHECK_FALSE(straddle_holds(axes, rv2(-2, -3)));
  CHECK(straddle_holds(RMat{rv2(1, 0)}, rv2(0, 7)));
  CHECK_FALSE(straddle_holds(RMat{rv2(1, 0)}, rv2(1, 0)));
}

TEST_CASE("single straddle pins the kernel line") {
  ConeSystem sys(2, {straddle({rv2(1, 0)})});
  CHECK_FALSE(sys.empty());
  CHECK(sys.count_lines() == LineCount::One);
  CHECK(sys.unique_line() == rv2(0, 1));
}

TEST_CASE("two-functional straddle fills sign cells") {
  ConeSystem sys(2, {straddle({rv2(1, 0), rv2(0, 1)})});
  CHECK_FALSE(sys.empty());
  CHECK(sys.count_lines() == LineCount::Many);
}

TEST_CASE("two straddles in R3 intersect to one line") {
  const RVec e1{Rat(1), Rat(0), Rat(0)};
  const RVec e2{Rat(0), Rat(1), Rat(0)};
  ConeSystem sys(3, {straddle({e1}), straddle({e2})});
  CHECK(sys.count_lines() == LineCount::One);
  CHECK(sys.unique_line() == RVec{Rat(0), Rat(0), Rat(1)});
}

TEST_CASE("all-positive alone keeps an open cell") {
  ConeSystem sys(2, {allpos({rv2(1, 0)})});
  CHECK_FALSE(sys.empty());
  CHECK(sys.count_lines() == LineCount::Many);
  // Same under a negated functional (the cell flips side).
  ConeSystem neg(2, {allpos({rv2(-1, 0)})});
  CHECK(neg.count_lines() == LineCount::Many);
}

TEST_CASE("contradictory conditions give the empty set") {
  // A one-functional straddle forces f(y) = 0; all-positive forbids it.
  ConeSystem sys(2, {straddle({rv2(1, 0)}), allpos({rv2(1, 0)})});
  CHECK(sys.empty());
  CHECK(sys.count_lines() == LineCount::None);
  CHECK_THROWS_AS(sys.unique_line(), ContractError);
}

TEST_CASE("all-positive slices a straddle cell to a half line") {
  // y1 = 0 from the straddle; y2 > 0 from the side condition. The unique
  // 1-dim flat still counts: either generator sign may satisfy.
  ConeSystem sys(2, {straddle({rv2(1, 0)}), allpos({rv2(0, 1)})});
  CHECK(sys.count_lines() == LineCount::One);
  CHECK(sys.unique_line() == rv2(0, 1));
}

TEST_CASE("non-dyadic rationals stay exact") {
  ConeSystem sys(2, {straddle({rv2(Rat(1) / 3, Rat(2) / 3)})});
  CHECK(sys.count_lines() == LineCount::One);
  // Kernel of y1/3 + 2 y2/3: direction (2, -1), canonicalized to (1, -1/2).
  CHECK(sys.unique_line() == rv2(1, Rat(-1) / 2));
}

TEST_CASE("cone system contracts") {
  CHECK_THROWS_AS(ConeSystem(0, {}), ContractError);
  CHECK_THROWS_AS(ConeSystem(2, {straddle({})}), ContractError);
  CHECK_THROWS_AS(ConeSystem(2, {straddle({rv2(0, 0)})}), ContractError);
  CHECK_THROWS_AS(ConeSystem(2, {straddle({RVec{Rat(1)}})}), ContractError);
}
