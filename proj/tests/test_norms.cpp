#include <doctest.h>

#include <cmath>

#include "bjorth/norms.hpp"
#include "bjorth/numeric.hpp"

using namespace bjorth;

namespace {

const double kE = std::exp(1.0);

NormPtr spec(const char* json) { return parse_norm_spec(json); }

}  // namespace

TEST_CASE("frozen values") {
  const auto linf3 = make_lp_inf(3);
  CHECK(linf3->value({1.0, -2.0, 0.5}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(linf3->polyhedral()->value({Rat(1), Rat(-2), Rat(1) / 2}) == Rat(2));

  const auto hex = make_hexagonal();
  CHECK(hex->polyhedral()->value({Rat(1), Rat(1)}) == Rat(1));
  CHECK(hex->polyhedral()->value({Rat(1), Rat(-1)}) == Rat(2));
  CHECK(hex->polyhedral()->value({Rat(-2), Rat(0)}) == Rat(2));

  const auto bj = make_bj_example_r3();
  CHECK(bj->value({1.0, 0.0, 0.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(bj->value({0.0, 0.0, 1.0}) == doctest::Approx(1.0));
  CHECK(bj->value({3.0, 4.0, 5.0}) ==
        doctest::Approx(std::sqrt(2.0) * std::sqrt(25.0 + 25.0)));
  CHECK(bj->value({1.0, 0.0, 2.0}) == doctest::Approx(3.0));

  const auto ar = make_absolute_radon();
  CHECK(ar->value({1.0 / kE, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ar->value({2.0 / kE, 2.0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ar->value({1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ar->value({0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("absolute radon matches the closed form on the curve region") {
  // On 0 <= y < e x the norm solves N(x, y) = x e^{y/(e x)}: it is
  // 1-homogeneous and equals 1 along (xi, eta(xi)) by eta's defining ODE.
  const auto ar = make_absolute_radon();
  for (double x : {0.5, 1.0, 1.7, 3.0}) {
    for (double c : {0.0, 0.3, 0.8, 1.4, 2.0, 2.6}) {
      const double y = c * x;  // c < e keeps the point in the curve region
      const double expected = x * std::exp(y / (kE * x));
      CHECK(ar->value({x, y}) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  // Flat region y >= e x: the norm is y itself.
  CHECK(ar->value({0.2, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ar->value({0.1, 3.0}) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("eta identities") {
  const double inv_e = 1.0 / kE;
  CHECK(absolute_radon_eta(inv_e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(absolute_radon_eta(1.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(absolute_radon_eta_prime(inv_e) == doctest::Approx(0.0).scale(1.0));
  CHECK(absolute_radon_eta_prime(1.0) == doctest::Approx(-kE));

  // xi^2 eta'' - xi eta' + eta = 0 on (1/e, 1).
  for (int i = 1; i < 20; ++i) {
    const double xi = inv_e + (1.0 - inv_e) * i / 20.0;
    const double residual = xi * xi * absolute_radon_eta_second(xi) -
                            xi * absolute_radon_eta_prime(xi) +
                            absolute_radon_eta(xi);
    CHECK(std::abs(residual) <= 1e-12);
  }

  // eta' agrees with a central difference of eta.
  for (double xi : {0.45, 0.6, 0.85}) {
    const double h = 1e-6;
    const double fd =
        (absolute_radon_eta(xi + h) - absolute_radon_eta(xi - h)) / (2.0 * h);
    CHECK(absolute_radon_eta_prime(xi) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("norm axioms hold on sampled pairs") {
  const std::vector<NormPtr> models = {
      make_lp(2, 3),
      make_lp(4, 2),
      make_lp(1.5, 3),
      make_absolute_radon(),
      make_bj_example_r3(),
      make_day_radon(make_lp_inf(2)),
      make_direct_sum_l2(make_absolute_radon(), make_lp(2, 1)),
  };
  for (const auto& m : models) {
    CAPTURE(m->label());
    Rng rng(derive_seed(7, m->label()));
    for (int i = 0; i < 400; ++i) {
      const NVec x = scale(rng.direction(m->dim()), rng.uniform(0.2, 3.0));
      const NVec y = scale(rng.direction(m->dim()), rng.uniform(0.2, 3.0));
      const double nx = m->value(x);
      const double ny = m->value(y);
      CHECK(nx > 0.0);
      const double t = rng.uniform(0.1, 5.0);
      CHECK(m->value(scale(x, t)) == doctest::Approx(t * nx).epsilon(1e-10));
      CHECK(m->value(scale(x, -1.0)) == doctest::Approx(nx).epsilon(1e-10));
      CHECK(m->value(add(x, y)) <= nx + ny + 1e-10 * (nx + ny));
    }
  }
}

TEST_CASE("unit_sphere_samples") {
  for (const auto& m : {make_lp(2, 3), make_absolute_radon(), make_lp_inf(3)}) {
    CAPTURE(m->label());
    const auto samples = unit_sphere_samples(*m, 64, 11);
    CHECK(static_cast<int>(samples.size()) == 64);
    for (const NVec& s : samples) {
      CHECK(std::abs(m->value(s) - 1.0) <= 1e-12);
    }
    CHECK(unit_sphere_samples(*m, 64, 11) == samples);   // deterministic
    CHECK(unit_sphere_samples(*m, 64, 12) != samples);   // seed-sensitive
  }
}

TEST_CASE("l1 and linf canonicalize to polyhedral specs") {
  const auto l1 = make_lp(1.0, 3);
  REQUIRE(l1->is_exact());
  CHECK(l1->polyhedral()->functionals.size() == 8);  // sign vectors
  CHECK(l1->polyhedral()->value({Rat(1), Rat(-2), Rat(3)}) == Rat(6));

  const auto linf = make_lp(std::numeric_limits<double>::infinity(), 3);
  REQUIRE(linf->is_exact());
  CHECK(linf->polyhedral()->functionals.size() == 6);  // +-e_i

  CHECK_THROWS_AS(make_lp(0.5, 2), ContractError);
  CHECK_THROWS_AS(make_lp(2.0, 0), ContractError);
  CHECK_THROWS_AS(make_lp_inf(9), ContractError);  // enumeration cap
}

TEST_CASE("polyhedral specs must be negation closed") {
  CHECK_THROWS_AS(make_polyhedral({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, "bad"),
                  ContractError);
  CHECK_THROWS_AS(make_polyhedral({{Rat(0), Rat(0)}}, "zero"), ContractError);
}

TEST_CASE("parse_norm_spec round trips") {
  const auto linf2 = spec(R"({"type":"lp","p":"inf","dim":2})");
  CHECK(linf2->dim() == 2);
  CHECK(linf2->is_exact());

  const auto lp43 = spec(R"({"type":"lp","p":4,"dim":3})");
  CHECK(lp43->dim() == 3);
  CHECK_FALSE(lp43->is_exact());
  CHECK(lp_exponent(*lp43) == doctest::Approx(4.0));
  CHECK(lp_exponent(*linf2) == 0.0);  // polyhedral: no finite exponent

  const auto hex = spec(R"({"type":"hexagonal"})");
  CHECK(hex->polyhedral()->functionals.size() == 6);

  const auto para = spec(
      R"({"type":"polyhedral","label":"pgram",
          "dual_vertices":[[1,0],["-1","0"],["1","1"],[-1,-1]]})");
  CHECK(para->label() == "pgram");
  CHECK(para->is_exact());
  CHECK(para->polyhedral()->value({Rat(0), Rat(1)}) == Rat(1));

  const auto day = spec(R"({"type":"day_radon","seed":{"type":"lp","p":"inf","dim":2}})");
  CHECK(day->dim() == 2);
  CHECK(day->label() == "day(linf2)");

  const auto sum = spec(
      R"({"type":"direct_sum_l2","left":{"type":"absolute_radon"},
          "right":{"type":"lp","p":2,"dim":1}})");
  CHECK(sum->dim() == 3);
  const auto view = direct_sum_view(*sum);
  REQUIRE(view.has_value());
  CHECK(view->left->dim() == 2);
  CHECK(view->right->dim() == 1);
  CHECK_FALSE(direct_sum_view(*lp43).has_value());

  CHECK(spec(R"({"type":"complex_radon"})")->dim() == 4);
  CHECK(spec(R"({"type":"bj_example_r3"})")->dim() == 3);
}

TEST_CASE("parse_norm_spec rejects malformed input") {
  CHECK_THROWS_AS(spec(R"({"type":"frobnitz"})"), ContractError);
  CHECK_THROWS_AS(spec(R"({"p":2,"dim":2})"), ContractError);
  CHECK_THROWS_AS(spec(R"({"type":"lp","p":2})"), ContractError);
  CHECK_THROWS_AS(spec(R"({"type":"lp","p":"three","dim":2})"), ContractError);
  // Rational entries must be integers or "p/q" strings, never decimals.
  CHECK_THROWS_AS(
      spec(R"({"type":"polyhedral","dual_vertices":[[0.5,0],[-0.5,0]]})"),
      ContractError);
  CHECK_THROWS_AS(spec("not json at all"), ContractError);
}
