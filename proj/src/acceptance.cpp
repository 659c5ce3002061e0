#include "bjorth/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <optional>
#include <set>
#include <sstream>

#include "bjorth/oracle.hpp"
#include "bjorth/orthodigraph.hpp"
#include "bjorth/radon.hpp"
#include "bjorth/report.hpp"

namespace bjorth {

namespace {

/// Collects expectation failures; the first few messages become the details.
class Expect {
 public:
  void operator()(bool cond, const std::string& what) {
    if (cond) return;
    ok_ = false;
    if (++failures_ <= 4) {
      if (!detail_.empty()) detail_ += "; ";
      detail_ += what;
    }
  }

  CriterionResult finish(const std::string& name,
                         const std::string& pass_detail) const {
    CriterionResult r;
    r.name = name;
    r.passed = ok_;
    r.details = ok_ ? pass_detail : detail_;
    return r;
  }

 private:
  bool ok_ = true;
  int failures_ = 0;
  std::string detail_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// -- 1: derivative decision vs the convex minimization oracle ---------------

/// Pairs whose margin falls inside the ambiguous band are resampled: there
/// the two deciders legitimately answer at different resolutions (the oracle
/// deficit of a barely-non-orthogonal pair shrinks like a power of the
/// margin). Every fourth pair is constructed exactly orthogonal instead.
std::string oracle_model_run(const NormPtr& norm, std::uint64_t seed) {
  try {
    Rng rng(derive_seed(seed, "oracle-" + norm->label()));
    const int n = norm->dim();
    const bool exact = norm->is_exact();
    const double band = exact ? 1e-5 : 1e-3;
    const Tolerances tol;
    int done = 0;
    long attempts = 0;
    while (done < 1000) {
      if (++attempts > 100000)
        return norm->label() + ": pair generation budget exhausted";
      NVec xd = rng.direction(n);
      xd = scale(xd, 1.0 / norm->value(xd));
      NVec yd = rng.direction(n);
      yd = scale(yd, 1.0 / norm->value(yd));

      const bool constructed = done % 4 == 3;
      const Vec x = exact ? Vec::exact(rvec_from_doubles(xd)) : Vec::numeric(xd);
      Vec y = Vec::numeric(yd);
      if (constructed) {
        if (exact) {
          const RVec& xr = x.rat();
          const auto active = norm->polyhedral()->active_set(xr);
          if (active.size() != 1) continue;
          const RVec& f = norm->polyhedral()->functionals[active[0]];
          RVec yr = rvec_from_doubles(yd);
          yr = sub(yr, scale(xr, dot(f, yr) / dot(f, xr)));
          if (is_zero(yr)) continue;
          y = Vec::exact(yr);
        } else {
          const auto sd = norm->subdifferential(x, tol);
          if (!sd.singleton()) continue;
          const NVec& g = sd.gradient;
          NVec yn = axpy(yd, -dot(g, yd) / dot(g, xd), xd);
          if (near_zero(yn, 1e-9)) continue;
          y = Vec::numeric(yn);
        }
      } else if (exact) {
        y = Vec::exact(rvec_from_doubles(yd));
      }

      const OrthoVerdict verdict = is_bj_orthogonal(*norm, x, y, tol);
      const double margin = verdict.margin.value_or(0.0);
      if (!constructed && margin != 0.0 && std::abs(margin) < band) continue;
      const OracleResult oracle = oracle_bj(*norm, x.to_num(), y.to_num());
      if (verdict.orthogonal != oracle.orthogonal) {
        return norm->label() + ": disagreement, margin=" + fmt(margin) +
               " oracle deficit=" + fmt(oracle.deficit);
      }
      ++done;
    }
    return "";
  } catch (const std::exception& e) {
    return norm->label() + ": exception: " + e.what();
  }
}

CriterionResult run_c1(std::uint64_t seed) {
  const std::vector<NormPtr> models = {
      make_lp_inf(2),       make_lp_inf(3),  make_lp(1, 3),
      make_hexagonal(),     make_lp(2, 2),   make_lp(4, 2),
      make_bj_example_r3(), make_absolute_radon()};
  std::vector<std::future<std::string>> futures;
  for (const NormPtr& m : models)
    futures.push_back(std::async(std::launch::async, oracle_model_run, m, seed));
  Expect expect;
  for (auto& f : futures) {
    const std::string err = f.get();
    expect(err.empty(), err);
  }
  return expect.finish("c01-bj-oracle-equivalence",
                       "8 models x 1000 pairs, zero disagreements");
}

// -- 2: dimension formula ----------------------------------------------------

CriterionResult run_c2(std::uint64_t seed) {
  Expect expect;
  for (int n = 2; n <= 4; ++n) {
    for (const NormPtr& norm : {make_lp_inf(n), make_lp(1, n)}) {
      const auto graph =
          build_orthodigraph(norm, OrthoDigraph::Mode::ExactQuotient);
      const DimensionResult d = digraph_dimension(graph);
      expect(d.dimension == n && !d.sampled,
             norm->label() + ": dimension " + std::to_string(d.dimension));
    }
    for (double p : {2.0, 4.0}) {
      const NormPtr norm = make_lp(p, n);
      const auto graph =
          build_orthodigraph(norm, OrthoDigraph::Mode::Sampled, false, 50,
                             derive_seed(seed, norm->label()));
      const DimensionResult d = digraph_dimension(graph);
      expect(d.dimension == n && d.sampled,
             norm->label() + ": dimension " + std::to_string(d.dimension));
    }
  }
  return expect.finish("c02-dimension-formula",
                       "n recovered for linf/l1 (exact) and lp 2,4 (sampled), "
                       "n = 2..4");
}

// -- 3: sup-norm recognition -------------------------------------------------

NormPtr random_linf3_image(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "linf3-image"));
  for (int attempt = 0; attempt < 64; ++attempt) {
    RMat rows;
    for (int i = 0; i < 3; ++i) {
      RVec row;
      for (int j = 0; j < 3; ++j) {
        const int k = static_cast<int>(rng.next_u64() % 33) - 16;
        row.push_back(Rat(k) / 8);
      }
      rows.push_back(std::move(row));
    }
    if (rank(rows) != 3) continue;
    RMat functionals;
    for (const RVec& row : rows) {
      functionals.push_back(row);
      functionals.push_back(negate(row));
    }
    return make_polyhedral(std::move(functionals), "linf3_image");
  }
  throw ContractError("linf3 image: no invertible matrix sampled");
}

CriterionResult run_c3(std::uint64_t seed) {
  Expect expect;
  for (int n = 2; n <= 4; ++n) {
    const auto graph = build_orthodigraph(make_lp_inf(n),
                                          OrthoDigraph::Mode::ExactQuotient);
    const SupNormVerdict v = recognize_sup_norm(graph);
    expect(v.is_sup_norm && v.smooth_neighborhood_count == n &&
               v.dimension == n,
           "linf" + std::to_string(n) + ": count " +
               std::to_string(v.smooth_neighborhood_count));
  }
  {
    const auto graph = build_orthodigraph(random_linf3_image(seed),
                                          OrthoDigraph::Mode::ExactQuotient);
    const SupNormVerdict v = recognize_sup_norm(graph);
    expect(v.is_sup_norm && v.smooth_neighborhood_count == 3,
           "linf3 image: count " +
               std::to_string(v.smooth_neighborhood_count));
  }
  {
    const auto graph = build_orthodigraph(make_lp(1, 3),
                                          OrthoDigraph::Mode::ExactQuotient);
    const SupNormVerdict v = recognize_sup_norm(graph);
    expect(!v.is_sup_norm && v.smooth_neighborhood_count == 4 &&
               v.dimension == 3,
           "l1_3: count " + std::to_string(v.smooth_neighborhood_count));
  }
  {
    const auto graph = build_orthodigraph(make_hexagonal(),
                                          OrthoDigraph::Mode::ExactQuotient);
    const SupNormVerdict v = recognize_sup_norm(graph);
    expect(!v.is_sup_norm && v.smooth_neighborhood_count == 3 &&
               v.dimension == 2,
           "hexagonal: count " + std::to_string(v.smooth_neighborhood_count));
  }
  {
    const auto graph =
        build_orthodigraph(make_lp(2, 3), OrthoDigraph::Mode::Sampled, false,
                           200, derive_seed(seed, "lp2-3"));
    const SupNormVerdict v = recognize_sup_norm(graph);
    expect(!v.is_sup_norm && v.smooth_neighborhood_count >= 50,
           "lp2_3: count " + std::to_string(v.smooth_neighborhood_count));
  }
  return expect.finish("c03-sup-norm-recognition",
                       "true for linf 2..4 and a random linf3 image; false "
                       "for l1_3 (4), hexagonal (3), sampled lp2_3");
}

// -- 4: smooth classification ------------------------------------------------

CriterionResult run_c4(std::uint64_t seed) {
  Expect expect;
  const auto compare_exact = [&](const NormPtr& norm) {
    const auto graph =
        build_orthodigraph(norm, OrthoDigraph::Mode::ExactQuotient);
    const SmoothClassification cls =
        norm->dim() == 2 ? classify_smooth_vertices_2d(graph)
                         : classify_smooth_vertices_nd(graph);
    const std::set<int> smooth(cls.smooth_ids.begin(), cls.smooth_ids.end());
    for (const auto& v : graph.vertices) {
      const bool truth = is_smooth(*norm, Vec::exact(v.exact_rep));
      expect(smooth.count(v.id) == static_cast<std::size_t>(truth),
             norm->label() + ": class " + v.name + " misclassified");
    }
    expect(!cls.sampled, norm->label() + ": unexpectedly sampled");
  };
  compare_exact(make_lp_inf(3));
  compare_exact(make_lp(1, 3));
  compare_exact(make_hexagonal());

  const auto graph =
      build_orthodigraph(make_lp(2, 3), OrthoDigraph::Mode::Sampled, false,
                         100, derive_seed(seed, "lp2-3"));
  const SmoothClassification cls = classify_smooth_vertices_nd(graph);
  expect(cls.sampled && cls.nonsmooth_ids.empty() &&
             static_cast<int>(cls.smooth_ids.size()) ==
                 static_cast<int>(graph.vertices.size()),
         "lp2_3: nonsmooth " + std::to_string(cls.nonsmooth_ids.size()));
  return expect.finish("c04-smooth-classification",
                       "tuple criterion matches is_smooth on linf3/l1_3/"
                       "hexagonal; all smooth on sampled lp2_3");
}

// -- 5: maximal faces ---------------------------------------------------------

CriterionResult run_c5(std::uint64_t) {
  Expect expect;
  const std::vector<std::pair<NormPtr, int>> cases = {
      {make_lp_inf(3), 3}, {make_lp(1, 3), 4}, {make_hexagonal(), 3}};
  for (const auto& [norm, expected] : cases) {
    const auto graph =
        build_orthodigraph(norm, OrthoDigraph::Mode::ExactQuotient);
    const auto faces = find_maximal_faces(graph);
    expect(static_cast<int>(faces.size()) == expected,
           norm->label() + ": " + std::to_string(faces.size()) +
               " maximal faces");
    std::set<int> facet_classes;
    for (int id : graph.lattice->faces_of_dim(norm->dim() - 1))
      facet_classes.insert(graph.lattice->class_of[id]);
    std::set<int> witnesses;
    for (const auto& f : faces) witnesses.insert(f.witness_class);
    expect(witnesses == facet_classes,
           norm->label() + ": witnesses are not the facet classes");
  }
  return expect.finish("c05-maximal-faces",
                       "3 (linf3), 4 (l1_3), 3 (hexagonal) maximal faces, "
                       "witnessed by the facet classes");
}

// -- 6: Radon symmetry --------------------------------------------------------

CriterionResult run_c6(std::uint64_t seed) {
  Expect expect;
  {
    const auto rep = verify_radon_symmetry(make_absolute_radon(), 1000,
                                           derive_seed(seed, "ar"), 1e-6);
    expect(rep.symmetric && rep.pairs_checked >= 500,
           "absolute_radon: violation " + fmt(rep.max_violation));
  }
  {
    const auto rep = verify_radon_symmetry(make_hexagonal(), 100,
                                           derive_seed(seed, "hex"), 1e-6);
    expect(rep.symmetric && rep.exact, "hexagonal: not exactly symmetric");
  }
  {
    const auto rep = verify_radon_symmetry(make_lp(4, 2), 1000,
                                           derive_seed(seed, "lp42"), 1e-6);
    expect(!rep.symmetric && rep.counterexample.has_value(),
           "lp4_2: no counterexample found");
  }
  {
    const auto rep = verify_radon_symmetry(make_day_radon(make_lp_inf(2)),
                                           1000, derive_seed(seed, "day"),
                                           1e-6);
    expect(rep.symmetric && rep.pairs_checked >= 500,
           "day(linf2): violation " + fmt(rep.max_violation));
  }
  return expect.finish("c06-radon-symmetry",
                       "absolute_radon and day(linf2) symmetric at 1e-6, "
                       "hexagonal exactly; lp4_2 counterexample found");
}

// -- 7: AbsoluteRadon analytics ----------------------------------------------

CriterionResult run_c7(std::uint64_t) {
  Expect expect;
  const double inv_e = std::exp(-1.0);
  expect(std::abs(absolute_radon_eta(inv_e) - 1.0) <= 1e-12, "eta(1/e) != 1");
  expect(std::abs(absolute_radon_eta(1.0)) <= 1e-12, "eta(1) != 0");
  expect(std::abs(absolute_radon_eta_prime(inv_e)) <= 1e-12,
         "eta'(1/e) != 0");
  for (int i = 0; i < 100; ++i) {
    const double xi = inv_e + (1.0 - inv_e) * i / 99.0;
    const double ode = xi * xi * absolute_radon_eta_second(xi) -
                       xi * absolute_radon_eta_prime(xi) +
                       absolute_radon_eta(xi);
    expect(std::abs(ode) <= 1e-12, "ODE residual " + fmt(ode) + " at xi=" +
                                       fmt(xi));
  }

  const NormPtr ar = make_absolute_radon();
  for (int i = 0; i < 100; ++i) {
    const double xi = inv_e + (1.0 - inv_e) * (i + 0.5) / 100.0;
    const double alpha = inv_e / xi;
    const NVec x{xi, absolute_radon_eta(xi)};
    const NVec y{alpha, -absolute_radon_eta(alpha)};
    const OrthoVerdict fwd = is_bj_orthogonal(*ar, Vec::numeric(x),
                                              Vec::numeric(y));
    const OrthoVerdict rev = is_bj_orthogonal(*ar, Vec::numeric(y),
                                              Vec::numeric(x));
    expect(fwd.orthogonal && std::abs(fwd.margin.value_or(1.0)) <= 1e-8,
           "forward margin at xi=" + fmt(xi));
    expect(rev.orthogonal && std::abs(rev.margin.value_or(1.0)) <= 1e-8,
           "reverse margin at xi=" + fmt(xi));
  }
  return expect.finish("c07-absolute-radon-analytics",
                       "eta identities and ODE at 1e-12; 100 mutual pairs at "
                       "1e-8");
}

// -- 8: Hilbert-isomorphism conditions ---------------------------------------

CriterionResult run_c8(std::uint64_t) {
  Expect expect;
  const auto ar = check_gamma0_hilbert_conditions_real(make_absolute_radon());
  expect(ar.all_flat_endpoints_smooth && ar.flat_segments == 2,
         "absolute_radon: " + std::to_string(ar.flat_segments) +
             " flats, smooth=" + std::to_string(ar.all_flat_endpoints_smooth));
  const auto hex = check_gamma0_hilbert_conditions_real(make_hexagonal());
  expect(!hex.all_flat_endpoints_smooth && hex.flat_segments == 6,
         "hexagonal: " + std::to_string(hex.flat_segments) + " flats");
  return expect.finish("c08-hilbert-conditions",
                       "true for absolute_radon (2 flats, smooth endpoints), "
                       "false for hexagonal");
}

// -- 9: BJ-equivalence counterexample ----------------------------------------

CriterionResult run_c9(std::uint64_t seed) {
  Expect expect;
  const NormPtr linf3 = make_lp_inf(3);
  const RVec xr{Rat(1), Rat(1) / 2, Rat(0)};
  const RVec yr{Rat(1), Rat(1) / 3, Rat(0)};
  const Vec x = Vec::exact(xr), y = Vec::exact(yr);
  using Side = NeighborhoodDescriptor::Side;
  expect(neighborhood_descriptor(*linf3, x, Side::Outgoing) ==
             neighborhood_descriptor(*linf3, y, Side::Outgoing),
         "outgoing descriptors differ");
  expect(neighborhood_descriptor(*linf3, x, Side::Incoming) ==
             neighborhood_descriptor(*linf3, y, Side::Incoming),
         "incoming descriptors differ");
  expect(rank(RMat{xr, yr}) == 2, "pair is not linearly independent");

  const BJNormReport bad =
      is_bj_norm_sampled(*linf3, 1000, derive_seed(seed, "linf3"));
  expect(bad.violation_found, "linf3: no violation found");
  if (bad.violating_pair) {
    expect(rank(RMat{bad.violating_pair->first.to_rat(),
                     bad.violating_pair->second.to_rat()}) == 2,
           "linf3: reported pair is dependent");
  }
  for (const NormPtr& norm : {make_bj_example_r3(), make_lp(2, 3)}) {
    const BJNormReport rep =
        is_bj_norm_sampled(*norm, 1000, derive_seed(seed, norm->label()));
    expect(!rep.violation_found && rep.pairs_checked >= 1000,
           norm->label() + ": spurious violation");
  }
  return expect.finish("c09-bj-norm-counterexample",
                       "(1,1/2,0) ~ (1,1/3,0) in linf3, independent, "
                       "violation reported; bj_example_r3 and lp2_3 clean");
}

// -- 10: direct-sum lemma ------------------------------------------------------

CriterionResult run_c10(std::uint64_t seed) {
  Expect expect;
  const NormPtr sum = make_direct_sum_l2(make_absolute_radon(), make_lp(2, 1));
  const DirectSumCheck chk =
      verify_direct_sum_lemma(sum, 1000, derive_seed(seed, "lemma"));
  expect(chk.passed && chk.checks >= 1000,
         "lemma: " + std::to_string(chk.failures) + "/" +
             std::to_string(chk.checks) + " failures");
  const NonsmoothCounterexampleReport rep =
      nonsmooth_counterexample_check(derive_seed(seed, "example"));
  expect(rep.x_tilde_nonsmooth, "x~ classified smooth");
  expect(rep.flat_family_bj_set, "flat family not BJ-equivalent");
  expect(rep.final_intersection_trivial, "final intersection nontrivial");
  return expect.finish("c10-direct-sum-lemma",
                       "1e3 sampled checks at 1e-7; counterexample space "
                       "assertions reproduced");
}

// -- 11: polyhedrality ----------------------------------------------------------

CriterionResult run_c11(std::uint64_t seed) {
  Expect expect;
  {
    const auto v = polyhedrality_verdict(make_lp_inf(2));
    expect(v.exact && v.polyhedral_like && v.distinct_count == 4,
           "linf2: count " + std::to_string(v.distinct_count));
  }
  {
    const auto v = polyhedrality_verdict(make_hexagonal());
    expect(v.exact && v.polyhedral_like && v.distinct_count == 6,
           "hexagonal: count " + std::to_string(v.distinct_count));
  }
  {
    const auto v =
        polyhedrality_verdict(make_lp(2, 2), derive_seed(seed, "lp22"));
    expect(!v.exact && !v.polyhedral_like, "lp2_2: reported polyhedral");
    const auto it = v.sampled_counts.find(10000);
    expect(it != v.sampled_counts.end() && it->second > 9000,
           "lp2_2: count(1e4) = " +
               std::to_string(it == v.sampled_counts.end() ? -1 : it->second));
  }
  return expect.finish("c11-polyhedrality",
                       "4 descriptors for linf2, 6 for hexagonal; lp2_2 "
                       "count(1e4) > 0.9e4 without saturation");
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria = {
      {"c01-bj-oracle-equivalence",
       "derivative decision agrees with the convex minimization oracle",
       run_c1},
      {"c02-dimension-formula",
       "digraph dimension equals the ambient dimension", run_c2},
      {"c03-sup-norm-recognition",
       "smooth neighborhood count equals dimension iff sup-norm image",
       run_c3},
      {"c04-smooth-classification",
       "graph-theoretic smoothness matches the subdifferential", run_c4},
      {"c05-maximal-faces",
       "maximal containment collections are the projective facet classes",
       run_c5},
      {"c06-radon-symmetry", "orthogonality symmetry on Radon planes",
       run_c6},
      {"c07-absolute-radon-analytics",
       "eta identities, ODE, and mutual-pair equation", run_c7},
      {"c08-hilbert-conditions",
       "flat segments of Radon spheres have smooth endpoints", run_c8},
      {"c09-bj-norm-counterexample",
       "BJ-equivalence admits independent pairs on flat faces", run_c9},
      {"c10-direct-sum-lemma",
       "orthogonality passes through l2 direct sums", run_c10},
      {"c11-polyhedrality",
       "finite outgoing descriptor counts characterize polyhedral norms",
       run_c11},
  };
  return criteria;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            bool parallel) {
  const auto& criteria = acceptance_criteria();
  const auto run_one = [&](int i) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criteria[i].run(derive_seed(seed, criteria[i].name));
    } catch (const std::exception& e) {
      r.name = criteria[i].name;
      r.passed = false;
      r.details = std::string("exception: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return r;
  };

  std::vector<CriterionResult> results;
  if (parallel) {
    std::vector<std::future<CriterionResult>> futures;
    for (int i = 0; i < static_cast<int>(criteria.size()); ++i)
      futures.push_back(std::async(std::launch::async, run_one, i));
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (int i = 0; i < static_cast<int>(criteria.size()); ++i)
      results.push_back(run_one(i));
  }
  return results;
}

}  // namespace bjorth
