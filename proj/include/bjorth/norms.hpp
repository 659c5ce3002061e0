#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bjorth/types.hpp"

namespace bjorth {

class Norm;
using NormPtr = std::shared_ptr<const Norm>;

enum class NormKind {
  Lp,            // 1 < p < inf (p = 1 and p = inf canonicalize to Polyhedral)
  Polyhedral,    // max over a symmetric irredundant spanning dual vertex set
  AbsoluteRadon, // 2D: curve eta(xi) = -e xi ln xi glued with a flat top
  BJExampleR3,   // sqrt2 * l2 inside the cone |z| <= hypot(x,y), l2+|z| outside
  ComplexRadon,  // C^2 via AbsoluteRadon on moduli, stored as 4 real coords
  DayRadon,      // Day's Radon-plane construction from a 2D seed
  DirectSumL2,   // sqrt(|x|^2 + |y|^2) of two component norms
};

/// Exact payload of a polyhedral norm: the full signed list of dual vertices
/// (f in list <=> -f in list), validated symmetric, spanning, irredundant.
struct PolyhedralData {
  RMat functionals;            // 2m signed dual vertices
  std::vector<int> negation;   // index of -f_i
  int dim = 0;

  Rat value(const RVec& x) const;                 // max_i f_i(x)
  std::vector<int> active_set(const RVec& x) const;
};

/// A finite-dimensional norm model. Immutable; all queries are const and
/// thread-safe. Vectors must match dim(); the zero vector is rejected by
/// every pointwise operation that needs a direction. Always heap-allocated
/// through the factories (shared_from_this is used to rebuild NormPtr).
class Norm : public std::enable_shared_from_this<Norm> {
 public:
  virtual ~Norm() = default;

  NormKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  /// Exact models answer queries in rational arithmetic with zero tolerance.
  bool is_exact() const { return polyhedral_ != nullptr; }
  const PolyhedralData* polyhedral() const { return polyhedral_.get(); }

  virtual double value(const NVec& x) const = 0;
  double value_vec(const Vec& x) const;

  /// One-sided directional derivatives at u != 0 along v. Analytic for every
  /// model except DayRadon, which uses the two-step finite-difference rule.
  virtual DirDeriv dirderiv(const NVec& u, const NVec& v,
                            const Tolerances& tol) const;

  virtual Subdifferential subdifferential(const Vec& x,
                                          const Tolerances& tol) const = 0;

 protected:
  Norm(NormKind kind, int dim, std::string label)
      : kind_(kind), dim_(dim), label_(std::move(label)) {}

  NormKind kind_;
  int dim_;
  std::string label_;
  std::shared_ptr<const PolyhedralData> polyhedral_;
};

/// Factories. lp() with p = 1 or p = inf builds the exact polyhedral form
/// (cross-polytope / hypercube dual vertex sets).
NormPtr make_lp(double p, int dim);
NormPtr make_lp_inf(int dim);
NormPtr make_polyhedral(RMat dual_vertices, std::string label = "polyhedral");
NormPtr make_hexagonal();
NormPtr make_absolute_radon();
NormPtr make_bj_example_r3();
NormPtr make_complex_radon();
NormPtr make_direct_sum_l2(NormPtr left, NormPtr right);
/// Built by running Day's construction on the seed (see radon.hpp).
NormPtr make_day_radon(NormPtr seed2d);

/// Children of a DirectSumL2 model (null otherwise).
struct DirectSumView {
  NormPtr left, right;
  int split = 0;  // left dim
};
std::optional<DirectSumView> direct_sum_view(const Norm& norm);

/// p of an Lp model (0 when the norm is not an Lp model; exact p = 1 and
/// p = inf canonicalize to Polyhedral, so they answer 0 too).
double lp_exponent(const Norm& norm);

/// JSON spec parsing. Accepts {"type": "lp"|"polyhedral"|"hexagonal"|
/// "absolute_radon"|"bj_example_r3"|"complex_radon"|"day_radon"|
/// "direct_sum_l2", ...}; rational coordinates are strings "p/q".
/// Throws ContractError with a field-level message on invalid input.
NormPtr parse_norm_spec(const std::string& json_text);
NormPtr parse_norm_spec_file(const std::string& path);

/// Deterministic seeded unit-sphere samples: Euclidean directions rescaled to
/// norm 1 (within tol.unit_sample).
std::vector<NVec> unit_sphere_samples(const Norm& norm, int count,
                                      std::uint64_t seed,
                                      const Tolerances& tol = {});

/// AbsoluteRadon boundary curve value eta(xi) = -e xi ln xi on [1/e, 1] and
/// its derivatives; exposed for verification.
double absolute_radon_eta(double xi);
double absolute_radon_eta_prime(double xi);
double absolute_radon_eta_second(double xi);

}  // namespace bjorth
