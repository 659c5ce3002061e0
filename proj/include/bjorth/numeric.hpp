#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bjorth {

using NVec = std::vector<double>;
using NMat = std::vector<NVec>;

double dot(const NVec& a, const NVec& b);
NVec add(const NVec& a, const NVec& b);
NVec sub(const NVec& a, const NVec& b);
NVec scale(const NVec& a, double s);
/// a + s * b
NVec axpy(const NVec& a, double s, const NVec& b);
double norm2(const NVec& a);
NVec normalize2(const NVec& a);
bool near_zero(const NVec& a, double tol);

/// Angle in [0, pi/2] between the lines spanned by a and b.
double line_angle(const NVec& a, const NVec& b);

/// Orthonormal basis of the hyperplane { y : <g, y> = 0 }.
NMat hyperplane_basis(const NVec& g);

/// Largest principal angle between the subspaces spanned by the two
/// orthonormal bases (radians); requires equal dimensions.
double max_principal_angle(const NMat& u, const NMat& v);

/// Orthonormal basis of the span of the given rows (rank-revealing).
NMat orthonormal_span(const NMat& rows, double tol = 1e-10);

/// Basis of the common kernel of the rows (numeric, SVD-based).
NMat numeric_nullspace(const NMat& rows, double tol = 1e-10);

int numeric_rank(const NMat& rows, double tol = 1e-10);

/// Deterministic seeded sampler. Normal variates use an explicit Box-Muller
/// transform over mt19937_64 so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                 // [0, 1)
  double uniform(double a, double b);
  double normal();
  std::uint64_t next_u64() { return engine_(); }
  /// Isotropic direction on the Euclidean sphere.
  NVec direction(int dim);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Stable seed derivation for named sub-tasks: identical (seed, name) pairs
/// give identical streams regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master, const std::string& name);

}  // namespace bjorth
