#include "bjorth/oracle.hpp"

#include <cmath>

namespace bjorth {

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

OracleResult oracle_bj(const Norm& norm, const NVec& x, const NVec& y) {
  const auto f = [&](double lambda) { return norm.value(axpy(x, lambda, y)); };

  double best_lambda = 0.0;
  double best = f(0.0);
  for (double lambda = kOracleGridLo; lambda <= kOracleGridHi;
       lambda += kOracleGridStep) {
    const double v = f(lambda);
    if (v < best) {
      best = v;
      best_lambda = lambda;
    }
  }
  const double lambda_star = golden_section_min(
      f, best_lambda - kOracleGridStep, best_lambda + kOracleGridStep);
  const double refined = f(lambda_star);
  if (refined < best) {
    best = refined;
    best_lambda = lambda_star;
  }

  OracleResult result;
  result.min_value = best;
  result.min_lambda = best_lambda;
  result.deficit = best - norm.value(x);
  result.orthogonal = result.deficit >= -kOracleSlack;
  return result;
}

}  // namespace bjorth
