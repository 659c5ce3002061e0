#pragma once

#include <functional>
#include <optional>

#include "bjorth/bjcore.hpp"

namespace bjorth {

/// Piecewise view of the unit circle of a 2D norm: ordered arcs tagged by
/// quadrant and kind. Numeric arcs sample through the owning norm.
struct BoundaryArc {
  bool is_segment = false;
  NVec a, b;          // segment endpoints when is_segment
  double theta0 = 0.0, theta1 = 0.0;  // direction-angle range of the arc
  int quadrant = 0;   // 1..4 for Day outputs, 0 when untagged
  std::string source; // "seed" | "dual" | "" for non-Day curves
};

struct BoundaryCurve2D {
  NormPtr norm;
  std::vector<BoundaryArc> arcs;

  /// Boundary point in direction theta (unit norm).
  NVec point(double theta) const;
  /// CSV polyline "theta,x,y" with the given sample count.
  std::string to_csv(int samples) const;
};

BoundaryCurve2D boundary_curve(const NormPtr& norm2d);

struct MutualPair {
  NVec x, y;
  double forward_margin = 0.0;  // margin of x -> y
  double reverse_margin = 0.0;  // margin of y -> x
};

/// First mutual pair x perp y and y perp x found by the deterministic scan
/// (exact class scan for polyhedral specs, theta sweep otherwise). Existence
/// is guaranteed in every 2D space.
MutualPair find_mutual_pair_2d(const NormPtr& norm2d,
                               const Tolerances& tol = {});

/// Day's construction: from a mutual pair x perp y perp x of the seed with
/// normalized supporting functionals f_x(y) = 0, f_y(x) = 0, map the seed
/// sphere by x,y -> (1,0),(0,1) into quadrants I/III and the dual sphere by
/// f_x,f_y -> (0,1),(-1,0) into quadrants II/IV. The glued curve is the unit
/// sphere of a Radon plane. The pair can be pinned explicitly.
BoundaryCurve2D day_construction(const NormPtr& seed2d,
                                 std::optional<MutualPair> pinned = {},
                                 const Tolerances& tol = {});

struct RadonSymmetryReport {
  bool symmetric = false;
  bool exact = false;
  double max_violation = 0.0;  // worst reverse-margin deficit observed
  std::optional<std::pair<NVec, NVec>> counterexample;
  int pairs_checked = 0;
};

/// Verifies x perp y => y perp x. Exact polyhedral specs check all face-class
/// representative pairs exactly (plus seeded rational spot pairs); numeric
/// specs sample x, construct an orthogonal partner, and check the reverse
/// margin within margin_tol.
RadonSymmetryReport verify_radon_symmetry(const NormPtr& norm2d, int pairs,
                                          std::uint64_t seed,
                                          double margin_tol = 1e-6,
                                          const Tolerances& tol = {});

struct HilbertConditionReport {
  bool all_flat_endpoints_smooth = false;
  int flat_segments = 0;
  std::vector<std::pair<NVec, NVec>> segments;
};

/// Real-2D test from the Gamma_0 Hilbert-space characterization: every
/// maximal flat segment of the unit circle must have smooth endpoints.
/// Exact specs read segments off the face lattice; numeric specs detect
/// flats by collinearity of consecutive boundary samples (tol.flat_collinear)
/// confirmed by a midpoint norm check. Requires a Radon-symmetric spec.
HilbertConditionReport check_gamma0_hilbert_conditions_real(
    const NormPtr& norm2d, int boundary_samples = 4096,
    const Tolerances& tol = {});

/// Explicit ComplexRadon criterion: (a,b) -> (c,d) iff (|a|,-|b|) ->
/// (|c|,|d|) in AbsoluteRadon and Arg(-d a) = Arg(c b), zero arguments
/// matching anything.
bool complex_radon_orthogonal(std::complex<double> a, std::complex<double> b,
                              std::complex<double> c, std::complex<double> d,
                              const Tolerances& tol = {});

struct DirectSumCheck {
  bool passed = false;
  int failures = 0;
  int checks = 0;
};

/// Samples the direct-sum orthogonality lemma on Z = X (+)_2 Y:
///   (x,0) -> (y,z) iff x -> y, and (y,z) -> (x,0) iff y -> x,
/// plus the derivative identity D+-((x,0);(y,z)) = D+-(x;y) within 1e-7.
DirectSumCheck verify_direct_sum_lemma(const NormPtr& sum, int samples,
                                       std::uint64_t seed,
                                       const Tolerances& tol = {});

struct NonsmoothCounterexampleReport {
  bool x_tilde_nonsmooth = false;
  bool flat_family_bj_set = false;   // the flat-top family is BJ-equivalent
  bool final_intersection_trivial = false;
  bool passed = false;
};

/// The fixed counterexample space Z = AbsoluteRadon (+)_2 R: verifies that
/// x~ = ((1,0),0) is nonsmooth, that the flat-top family { (xi,1,0) } is a
/// BJ-set witnessed through x~-perp ^ x1-perp, and that adding the family's
/// own perps cuts the intersection to zero.
NonsmoothCounterexampleReport nonsmooth_counterexample_check(
    std::uint64_t seed = 1, const Tolerances& tol = {});

}  // namespace bjorth
