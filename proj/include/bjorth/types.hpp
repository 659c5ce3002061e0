#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bjorth/numeric.hpp"
#include "bjorth/rational.hpp"

namespace bjorth {

/// Raised when an operation is asked for something outside its contract
/// (numeric data on an exact-only path, unsupported spec kind, ...).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a bounded search exhausts its budget; never silently degraded.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coordinate vector. Exact and numeric coordinates never mix: exactly one
/// payload is populated, chosen by the norm model the vector is used with.
class Vec {
 public:
  static Vec exact(RVec coords) { return Vec(std::move(coords)); }
  static Vec numeric(NVec coords) { return Vec(std::move(coords)); }

  bool is_exact() const { return std::holds_alternative<RVec>(coords_); }
  int dim() const {
    return is_exact() ? static_cast<int>(std::get<RVec>(coords_).size())
                      : static_cast<int>(std::get<NVec>(coords_).size());
  }

  const RVec& rat() const { return std::get<RVec>(coords_); }
  const NVec& num() const { return std::get<NVec>(coords_); }

  /// Lossless when numeric (doubles are dyadic rationals).
  RVec to_rat() const {
    return is_exact() ? rat() : rvec_from_doubles(num());
  }
  /// Approximate when exact.
  NVec to_num() const {
    return is_exact() ? rvec_to_doubles(rat()) : num();
  }

 private:
  explicit Vec(RVec coords) : coords_(std::move(coords)) {}
  explicit Vec(NVec coords) : coords_(std::move(coords)) {}
  std::variant<RVec, NVec> coords_;
};

/// A supporting functional, same exact/numeric split as Vec.
using Functional = Vec;

/// Subdifferential of the norm at a nonzero point.
///   ExactPolytope    - vertices are signed active dual functionals (exact).
///   NumericSingleton - gradient at a smooth point.
///   NumericSegment   - two extreme supporting functionals at a detected
///                      nonsmooth point (endpoints of a segment, or extreme
///                      points of a higher-dimensional subdifferential used
///                      as a nonsmoothness marker).
struct Subdifferential {
  enum class Kind { ExactPolytope, NumericSingleton, NumericSegment };
  Kind kind;
  RMat exact_vertices;  // ExactPolytope
  NVec gradient;        // NumericSingleton
  NVec seg_a, seg_b;    // NumericSegment

  bool singleton() const {
    return kind == Kind::NumericSingleton ||
           (kind == Kind::ExactPolytope && exact_vertices.size() == 1);
  }
};

/// One-sided directional derivatives of the norm at u along v.
struct DirDeriv {
  double minus = 0.0;
  double plus = 0.0;
  /// Set when a finite-difference fallback saw step-size disagreement.
  bool fd_unstable = false;
};

/// Verdict of a Birkhoff-James orthogonality query.
struct OrthoVerdict {
  bool orthogonal = false;
  /// min(D+, -D-): nonnegative iff 0 lies in [D-, D+]. Signed distance of 0
  /// from the derivative interval. Absent for the complex criterion path.
  std::optional<double> margin;
  /// An f in the subdifferential at x with f(y) = 0, when one is available
  /// to witness tolerance (exact mode: always when orthogonal).
  std::optional<Functional> witness;
};

/// Neighborhood descriptor: canonical encoding of x-perp (outgoing) or of
/// perp-x (incoming, exact mode only).
struct NeighborhoodDescriptor {
  enum class Mode { ExactActiveSet, NumericKernel };
  enum class Side { Outgoing, Incoming };
  Mode mode;
  Side side;

  /// ExactActiveSet, outgoing: indices into the spec's full signed dual list,
  /// sorted, canonicalized under global negation (x-perp = (-x)-perp).
  std::vector<int> signed_active;
  /// ExactActiveSet, incoming: sorted face-class ids whose subdifferential
  /// contains a functional annihilating x.
  std::vector<int> incoming_classes;

  /// NumericKernel: gradient direction and an orthonormal basis of its
  /// kernel; equality is judged by principal angles between kernels.
  NVec gradient;
  NMat kernel_basis;

  bool operator==(const NeighborhoodDescriptor& other) const;
};

/// Equality tolerance for NumericKernel descriptors (largest principal angle).
inline constexpr double kKernelAngleTol = 1e-8;

/// Pinned numeric tolerances; every one can be overridden per run.
struct Tolerances {
  double orth_margin = 1e-8;       // |margin| slack for numeric verdicts
  double functional_id = 1e-9;     // functional identity checks
  double fd_step = 1e-6;           // coarse finite-difference step
  double fd_step_fine = 1e-8;      // fine finite-difference step
  double fd_disagree = 1e-4;       // step disagreement flag threshold
  double kernel_angle = 1e-8;      // kernel principal-angle equality
  double seam = 1e-9;              // branch/seam classification threshold
  double radon_bisect_rel = 1e-12; // boundary-curve ray bisection
  int radon_bisect_max = 200;
  double antipodal_merge = 1e-7;   // projective sample merge angle
  double flat_collinear = 1e-9;    // boundary flat-segment detection
  double unit_sample = 1e-12;      // unit-sphere sample norm slack
};

}  // namespace bjorth
