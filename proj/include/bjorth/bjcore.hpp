#pragma once

#include <complex>
#include <optional>

#include "bjorth/facelattice.hpp"
#include "bjorth/norms.hpp"

namespace bjorth {

/// One-sided directional derivatives of the norm at u != 0 along v.
/// Exact specs evaluate extreme values of f(v) over the active set; numeric
/// specs use each model's analytic formula (finite differences only for
/// DayRadon, two-step rule with a disagreement flag).
DirDeriv directional_derivative(const Norm& norm, const Vec& u, const Vec& v,
                                const Tolerances& tol = {});

/// Birkhoff-James orthogonality x -> y, decided through the derivative
/// interval straddle D-(x;y) <= 0 <= D+(x;y). Exact specs decide with zero
/// tolerance; numeric specs use tol.orth_margin with ties counted orthogonal.
/// ComplexRadon uses the model's explicit modulus/argument criterion.
/// Throws ContractError when x = 0 or dimensions mismatch.
OrthoVerdict is_bj_orthogonal(const Norm& norm, const Vec& x, const Vec& y,
                              const Tolerances& tol = {});

/// True iff the subdifferential at x is a singleton.
bool is_smooth(const Norm& norm, const Vec& x, const Tolerances& tol = {});

/// Canonical descriptor of x-perp (outgoing) or perp-x (incoming).
/// Incoming descriptors exist in exact mode only; numeric incoming requests
/// throw ContractError ("signalled, not silently approximated").
NeighborhoodDescriptor neighborhood_descriptor(
    const Norm& norm, const Vec& x, NeighborhoodDescriptor::Side side,
    const Tolerances& tol = {});

/// BJ-equivalence: x-perp = y-perp and perp-x = perp-y. Exact mode compares
/// descriptors; numeric mode tests seeded designed probes both ways.
bool bj_equivalent(const Norm& norm, const Vec& x, const Vec& y,
                   std::uint64_t seed = 1, int probes = 1000,
                   const Tolerances& tol = {});

struct BJNormReport {
  bool violation_found = false;
  /// Linearly independent, BJ-equivalent pair when found.
  std::optional<std::pair<Vec, Vec>> violating_pair;
  int pairs_checked = 0;
};

/// Searches for a violation of the BJ-norm property (a BJ-equivalent pair of
/// linearly independent vectors). Samples seeded pairs; exact specs also
/// enumerate blended face-representative candidates, which is what finds the
/// flat-face violations (e.g. sup-norm facets).
BJNormReport is_bj_norm_sampled(const Norm& norm, int count,
                                std::uint64_t seed,
                                const Tolerances& tol = {});

/// Real-linear structure of C^2 realified as R^4: (Re a, Im a, Re b, Im b).
std::complex<double> cx_a(const NVec& v);
std::complex<double> cx_b(const NVec& v);
NVec realify(std::complex<double> a, std::complex<double> b);

/// Generic complex BJ test: x -> y iff x ->_R e^{i theta} y for every theta,
/// checked on a 720-point unimodular grid with local refinement. Used to
/// cross-validate the ComplexRadon criterion; returns the worst real margin.
double complex_bj_grid_margin(const Norm& realified, const NVec& x,
                              const NVec& y, const Tolerances& tol = {});

/// Finds some z with z -> x by rotating z in the plane span{x, w}: plane
/// searches are complete because supporting functionals of the restriction
/// extend to the ambient space (Hahn-Banach). Returns nullopt on failure.
std::optional<NVec> find_incoming_witness(const Norm& norm, const NVec& x,
                                          const NVec& w,
                                          const Tolerances& tol = {});

/// min(D+, -D-) of from -> to, measured so a base point sitting within
/// ~1e-9 of a kink of the sphere still reports the kink's straddle
/// interval. One-sided difference quotients of a convex function bracket
/// [D-, D+] at any step, so each candidate can only over-certify; steps
/// well above the placement error are immune to it.
double robust_orth_margin(const Norm& norm, const NVec& from, const NVec& to,
                          const Tolerances& tol = {});

}  // namespace bjorth
