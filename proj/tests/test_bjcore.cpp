#include <doctest.h>

#include <cmath>
#include <complex>

#include "bjorth/bjcore.hpp"
#include "bjorth/norms.hpp"
#include "bjorth/numeric.hpp"
#include "bjorth/radon.hpp"
#include "bjorth/rational.hpp"

using namespace bjorth;

namespace {

Vec ve(std::initializer_list<Rat> c) { return Vec::exact(RVec(c)); }
Vec vn(std::initializer_list<double> c) { return Vec::numeric(NVec(c)); }

}  // namespace

TEST_CASE("directional derivatives, frozen cases") {
  const Tolerances tol;
  const auto l2 = make_lp(2, 2);
  const DirDeriv a = directional_derivative(*l2, vn({1, 0}), vn({0, 1}), tol);
  CHECK(a.plus == doctest::Approx(0.0).scale(1.0));
  CHECK(a.minus == doctest::Approx(0.0).scale(1.0));

  // linf2 at the corner (1,1) along (1,-1): the active set {(1,0),(0,1)}
  // gives extreme values -1 and 1.
  const auto linf2 = make_lp_inf(2);
  const DirDeriv b =
      directional_derivative(*linf2, ve({1, 1}), ve({1, -1}), tol);
  CHECK(b.plus == doctest::Approx(1.0));
  CHECK(b.minus == doctest::Approx(-1.0));

  // Edge interior: one active functional, both one-sided derivatives agree.
  const DirDeriv c = directional_derivative(*linf2, ve({1, Rat(1) / 2}),
                                            ve({-2, 3}), tol);
  CHECK(c.plus == doctest::Approx(-2.0));
  CHECK(c.minus == doctest::Approx(-2.0));
}

TEST_CASE("is_bj_orthogonal, frozen verdicts") {
  const auto l23 = make_lp(2, 3);
  const auto fwd = is_bj_orthogonal(*l23, vn({1, 2, 3}), vn({3, 0, -1}));
  CHECK(fwd.orthogonal);
  REQUIRE(fwd.margin.has_value());
  CHECK(std::abs(*fwd.margin) <= 1e-12);

  CHECK_FALSE(is_bj_orthogonal(*l23, vn({1, 2, 3}), vn({1, 0, 0})).orthogonal);

  const auto linf2 = make_lp_inf(2);
  CHECK(is_bj_orthogonal(*linf2, ve({1, Rat(1) / 2}), ve({0, 1})).orthogonal);
  CHECK_FALSE(
      is_bj_orthogonal(*linf2, ve({1, Rat(1) / 2}), ve({1, 0})).orthogonal);
  // Ties count as orthogonal: at the corner the interval is [-1, 1].
  CHECK(is_bj_orthogonal(*linf2, ve({1, 1}), ve({1, -1})).orthogonal);

  CHECK_THROWS_AS(is_bj_orthogonal(*linf2, ve({0, 0}), ve({1, 0})),
                  ContractError);
  CHECK_THROWS_AS(is_bj_orthogonal(*l23, vn({1, 2}), vn({1, 0, 0})),
                  ContractError);
}

TEST_CASE("euclidean orthogonality is the inner product") {
  const auto l23 = make_lp(2, 3);
  Rng rng(derive_seed(3, "euclid"));
  int compared = 0;
  for (int i = 0; i < 500; ++i) {
    const NVec x = rng.direction(3);
    NVec y = rng.direction(3);
    if (i % 3 == 0) {
      // Project to an exactly orthogonal partner.
      y = sub(y, scale(x, dot(x, y)));
      if (norm2(y) < 1e-6) continue;
    }
    const double cosine = std::abs(dot(x, normalize2(y)));
    if (cosine > 1e-9 && cosine < 1e-7) continue;  // ambiguous band
    ++compared;
    const bool verdict = is_bj_orthogonal(*l23, Vec::numeric(x),
                                          Vec::numeric(y)).orthogonal;
    CHECK(verdict == (cosine <= 1e-9));
  }
  CHECK(compared >= 450);
}

TEST_CASE("witnesses support at x and annihilate y") {
  // Pairs are constructed orthogonal: y = v - (f0(v)/f0(x)) x for a
  // supporting f0 at x, so f0(y) = 0 and the straddle holds.
  const std::vector<NormPtr> models = {make_lp(2, 3), make_lp(4, 2),
                                       make_absolute_radon(), make_lp_inf(3)};
  const Tolerances tol;
  for (const auto& m : models) {
    CAPTURE(m->label());
    Rng rng(derive_seed(5, m->label()));
    int witnessed = 0;
    for (int i = 0; i < 200 && witnessed < 25; ++i) {
      const NVec x = rng.direction(m->dim());
      const NVec v = rng.direction(m->dim());
      Vec xv = Vec::numeric(x), yv = Vec::numeric(v);
      if (m->is_exact()) {
        const RVec xr = rvec_from_doubles(x);
        const auto sd = m->subdifferential(Vec::exact(xr), tol);
        const RVec f0 = sd.exact_vertices.at(0);
        const Rat fx = bjorth::dot(f0, xr);
        if (fx == 0) continue;
        const RVec vr = rvec_from_doubles(v);
        const RVec yr = bjorth::sub(vr, bjorth::scale(xr, dot(f0, vr) / fx));
        if (is_zero(yr)) continue;
        xv = Vec::exact(xr);
        yv = Vec::exact(yr);
      } else {
        const auto sd = m->subdifferential(Vec::numeric(x), tol);
        if (!sd.singleton()) continue;
        const double fx = dot(sd.gradient, x);
        if (std::abs(fx) < 1e-9) continue;
        const NVec y = sub(v, scale(x, dot(sd.gradient, v) / fx));
        if (norm2(y) < 1e-6) continue;
        yv = Vec::numeric(y);
      }
      const auto verdict = is_bj_orthogonal(*m, xv, yv);
      CHECK(verdict.orthogonal);
      if (!verdict.witness) continue;
      ++witnessed;
      const NVec f = verdict.witness->to_num();
      const NVec y = yv.to_num();
      CHECK(std::abs(dot(f, x) - m->value(x)) <= 1e-7 * m->value(x));
      CHECK(std::abs(dot(f, y)) <= 1e-7 * (1.0 + norm2(y)));
    }
    CHECK(witnessed >= 25);
  }
}

TEST_CASE("orthogonality is homogeneous") {
  const auto ar = make_absolute_radon();
  Rng rng(derive_seed(9, "homog"));
  for (int i = 0; i < 100; ++i) {
    const NVec x = rng.direction(2);
    const NVec y = rng.direction(2);
    const bool base = is_bj_orthogonal(*ar, Vec::numeric(x),
                                       Vec::numeric(y)).orthogonal;
    for (double t : {2.0, -3.0, 0.25}) {
      CHECK(is_bj_orthogonal(*ar, Vec::numeric(x),
                             Vec::numeric(scale(y, t))).orthogonal == base);
      CHECK(is_bj_orthogonal(*ar, Vec::numeric(scale(x, std::abs(t))),
                             Vec::numeric(y)).orthogonal == base);
    }
  }
}

TEST_CASE("is_smooth, frozen cases") {
  const auto linf2 = make_lp_inf(2);
  CHECK(is_smooth(*linf2, ve({1, Rat(1) / 2})));
  CHECK_FALSE(is_smooth(*linf2, ve({1, 1})));

  const double inv_e = std::exp(-1.0);
  const auto ar = make_absolute_radon();
  CHECK_FALSE(is_smooth(*ar, vn({1, 0})));       // axis kink
  CHECK(is_smooth(*ar, vn({0, 1})));             // flat-top interior
  CHECK(is_smooth(*ar, vn({0.2, 1})));
  CHECK(is_smooth(*ar, vn({inv_e, 1})));         // C^1 junction
  CHECK(is_smooth(*ar, vn({0.7, 0.3})));         // curve region

  const auto bj = make_bj_example_r3();
  CHECK_FALSE(is_smooth(*bj, vn({0, 0, 1})));    // polar axis
  CHECK(is_smooth(*bj, vn({1, 0, 1})));          // cone seam is C^1
  CHECK(is_smooth(*bj, vn({1, 0, 0})));
  CHECK(is_smooth(*bj, vn({1, 2, 10})));
}

TEST_CASE("neighborhood descriptors") {
  const Tolerances tol;
  const auto l22 = make_lp(2, 2);
  const auto out = [&](const Norm& n, const Vec& x) {
    return neighborhood_descriptor(n, x, NeighborhoodDescriptor::Side::Outgoing,
                                   tol);
  };
  const auto d1 = out(*l22, vn({0, 1}));
  CHECK(d1.mode == NeighborhoodDescriptor::Mode::NumericKernel);
  REQUIRE(d1.kernel_basis.size() == 1);
  CHECK(std::abs(std::abs(d1.kernel_basis[0][0]) - 1.0) <= 1e-9);
  CHECK(std::abs(d1.kernel_basis[0][1]) <= 1e-9);
  CHECK(d1 == out(*l22, vn({0, 2})));  // rays share the descriptor
  CHECK_FALSE(d1 == out(*l22, vn({1, 0})));

  const auto l23 = make_lp(2, 3);
  CHECK_FALSE(out(*l23, vn({1, 0, 0})) == out(*l23, vn({0, 1, 0})));

  const auto linf2 = make_lp_inf(2);
  const auto e1 = out(*linf2, ve({1, Rat(1) / 2}));
  const auto e2 = out(*linf2, ve({1, Rat(1) / 3}));
  CHECK(e1.mode == NeighborhoodDescriptor::Mode::ExactActiveSet);
  CHECK(e1 == e2);
  CHECK_FALSE(e1 == out(*linf2, ve({1, 1})));
  // x-perp = (-x)-perp under the global negation canonicalization.
  CHECK(e1 == out(*linf2, ve({-1, Rat(-1) / 2})));

  const auto in = [&](const Norm& n, const Vec& x) {
    return neighborhood_descriptor(n, x, NeighborhoodDescriptor::Side::Incoming,
                                   tol);
  };
  CHECK(in(*linf2, ve({1, Rat(1) / 2})) == in(*linf2, ve({1, Rat(1) / 3})));
  CHECK_THROWS_AS(in(*l22, vn({1, 0})), ContractError);
}

TEST_CASE("bj_equivalent") {
  const auto l23 = make_lp(2, 3);
  CHECK(bj_equivalent(*l23, vn({1, 2, -1}), vn({2, 4, -2}), 1, 128));
  CHECK_FALSE(bj_equivalent(*l23, vn({1, 0, 0}), vn({0, 1, 0}), 1, 128));

  const auto linf2 = make_lp_inf(2);
  CHECK(bj_equivalent(*linf2, ve({1, Rat(1) / 2}), ve({1, Rat(1) / 3})));
  CHECK_FALSE(bj_equivalent(*linf2, ve({1, Rat(1) / 2}), ve({1, 1})));
}

TEST_CASE("bj-norm violations found exactly where expected") {
  const auto clean = is_bj_norm_sampled(*make_lp(2, 2), 300, 17);
  CHECK_FALSE(clean.violation_found);
  CHECK(clean.pairs_checked >= 300);

  const auto viol = is_bj_norm_sampled(*make_lp_inf(2), 300, 17);
  CHECK(viol.violation_found);
  REQUIRE(viol.violating_pair.has_value());
  const RVec a = viol.violating_pair->first.to_rat();
  const RVec b = viol.violating_pair->second.to_rat();
  CHECK(rank(RMat{a, b}) == 2);
  CHECK(bj_equivalent(*make_lp_inf(2), Vec::exact(a), Vec::exact(b)));
}

TEST_CASE("realified complex coordinates round trip") {
  const std::complex<double> a(1.5, -0.5), b(-2.0, 3.0);
  const NVec v = realify(a, b);
  REQUIRE(v.size() == 4);
  CHECK(cx_a(v) == a);
  CHECK(cx_b(v) == b);
}

TEST_CASE("complex criterion matches the generic unimodular-grid test") {
  const auto cx = make_complex_radon();
  const auto ar = make_absolute_radon();
  const Tolerances tol;
  Rng rng(derive_seed(23, "complex"));
  int compared = 0, designed = 0;
  for (int i = 0; i < 200; ++i) {
    const auto cplx = [&]() {
      return std::complex<double>(rng.uniform(-1, 1), rng.uniform(-1, 1));
    };
    std::complex<double> a = cplx(), b = cplx(), c = cplx(), d = cplx();
    if (std::abs(a) < 0.1 || std::abs(b) < 0.1) continue;
    if (i % 4 == 0) {
      // Designed orthogonal quadruple: moduli follow the gradient kernel of
      // the real model at (|a|, -|b|); arguments align Arg(-d a) = Arg(c b).
      const auto sd =
          ar->subdifferential(Vec::numeric({std::abs(a), -std::abs(b)}), tol);
      if (!sd.singleton()) continue;
      const double c_mod = -sd.gradient[1];
      const double d_mod = sd.gradient[0];
      if (c_mod <= 0.0 || d_mod < 0.0) continue;
      c = c_mod;  // real positive, so Arg(c b) = Arg(b)
      d = -std::polar(d_mod, std::arg(b) - std::arg(a));
      ++designed;
      CHECK(complex_radon_orthogonal(a, b, c, d, tol));
      CHECK(complex_bj_grid_margin(*cx, realify(a, b), realify(c, d), tol) >=
            -1e-6);
      continue;
    }
    const bool criterion = complex_radon_orthogonal(a, b, c, d, tol);
    const double margin =
        complex_bj_grid_margin(*cx, realify(a, b), realify(c, d), tol);
    if (std::abs(margin) <= 1e-6) continue;  // ambiguous band
    ++compared;
    CAPTURE(i);
    CHECK(criterion == (margin > 0.0));
  }
  CHECK(compared >= 60);
  CHECK(designed >= 20);
}

TEST_CASE("incoming witnesses are genuine") {
  const auto l23 = make_lp(2, 3);
  const Tolerances tol;
  Rng rng(derive_seed(31, "incoming"));
  int found = 0;
  for (int i = 0; i < 40; ++i) {
    const NVec x = rng.direction(3);
    const NVec w = rng.direction(3);
    const auto z = find_incoming_witness(*l23, x, w, tol);
    if (!z) continue;
    ++found;
    CHECK(robust_orth_margin(*l23, *z, x, tol) >= -tol.orth_margin);
    // Euclidean incoming orthogonality is symmetric: <z, x> = 0.
    CHECK(std::abs(dot(normalize2(*z), x)) <= 1e-6);
  }
  CHECK(found >= 20);
}
