#pragma once

#include <functional>

#include "bjorth/norms.hpp"

namespace bjorth {

/// Brute-force orthogonality oracle, independent of the derivative machinery:
/// x -> y iff min over lambda of |x + lambda y| is attained at lambda = 0.
/// The map lambda -> |x + lambda y| is convex, so a coarse grid bracket plus
/// golden-section refinement finds the global minimum. This oracle only ever
/// calls norm evaluation.
struct OracleResult {
  bool orthogonal = false;
  double min_value = 0.0;
  double min_lambda = 0.0;
  double deficit = 0.0;  // min_value - |x| (<= 0; 0 means orthogonal)
};

inline constexpr double kOracleGridLo = -10.0;
inline constexpr double kOracleGridHi = 10.0;
inline constexpr double kOracleGridStep = 1e-3;
inline constexpr double kOracleSlack = 1e-7;

OracleResult oracle_bj(const Norm& norm, const NVec& x, const NVec& y);

/// Golden-section minimizer of a convex function on [lo, hi].
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-12, int max_iter = 200);

}  // namespace bjorth
