#pragma once

#include <vector>

#include "bjorth/rational.hpp"

namespace bjorth {

/// One conic condition on y, over rows of exact functionals F:
///   Straddle: min_i f_i(y) <= 0 <= max_i f_i(y)   (y lies in x-perp when F
///             is the signed active set of x)
///   AllPositive: f_i(y) > 0 for every i            (complement half of the
///             straddle; used for containment tests)
struct ConeCondition {
  enum class Kind { Straddle, AllPositive };
  Kind kind;
  RMat functionals;
};

/// Cardinality of a set of projective lines: None, One, or Many.
enum class LineCount { None, One, Many };

/// Exact decision engine over the solution set
///   S = { y != 0 : every condition holds }.
/// S is a union of sign cells of the central arrangement of the kernels of
/// all functionals involved, so every query reduces to enumerating the
/// intersection lattice of those kernels plus Fourier-Motzkin feasibility of
/// strict sign systems. Intended scale: dim <= 4, <= 16 distinct kernels.
class ConeSystem {
 public:
  ConeSystem(int dim, std::vector<ConeCondition> conditions);

  /// Is S empty (projectively)?
  bool empty() const;

  /// Number of projective lines contained in S (None / One / Many).
  LineCount count_lines() const;

  /// When count_lines() == One, the unique line's generator.
  RVec unique_line() const;

 private:
  struct Cell;  // implementation detail
  void analyze() const;

  int dim_;
  std::vector<ConeCondition> conditions_;
  mutable bool analyzed_ = false;
  mutable bool any_cell_dim2_ = false;
  mutable RMat lines_;
};

/// True iff the straddle condition of rows holds at y (exact).
bool straddle_holds(const RMat& functionals, const RVec& y);

}  // namespace bjorth
