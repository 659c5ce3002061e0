#include "bjorth/numeric.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace bjorth {

namespace {

Eigen::MatrixXd to_eigen(const NMat& rows) {
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

NMat from_eigen_cols(const Eigen::MatrixXd& m, int count) {
  NMat out;
  for (int c = 0; c < count; ++c) {
    NVec v(m.rows());
    for (int r = 0; r < m.rows(); ++r) v[r] = m(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

double dot(const NVec& a, const NVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

NVec add(const NVec& a, const NVec& b) {
  NVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

NVec sub(const NVec& a, const NVec& b) {
  NVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

NVec scale(const NVec& a, double s) {
  NVec out(a);
  for (double& v : out) v *= s;
  return out;
}

NVec axpy(const NVec& a, double s, const NVec& b) {
  NVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += s * b[i];
  return out;
}

double norm2(const NVec& a) { return std::sqrt(dot(a, a)); }

NVec normalize2(const NVec& a) {
  double n = norm2(a);
  if (n == 0.0) throw std::invalid_argument("normalize2: zero vector");
  return scale(a, 1.0 / n);
}

bool near_zero(const NVec& a, double tol) {
  for (double v : a) {
    if (std::abs(v) > tol) return false;
  }
  return true;
}

double line_angle(const NVec& a, const NVec& b) {
  double c = std::abs(dot(a, b)) / (norm2(a) * norm2(b));
  c = std::min(1.0, std::max(-1.0, c));
  return std::acos(c);
}

NMat hyperplane_basis(const NVec& g) {
  const int n = static_cast<int>(g.size());
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g[i];
  // Householder: columns 2..n of the reflector mapping g to |g| e1 span g-perp.
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd u = v;
  u(0) += (v(0) >= 0 ? 1.0 : -1.0) * v.norm();
  if (u.norm() > 0) q -= 2.0 * (u * u.transpose()) / u.squaredNorm();
  NMat basis;
  for (int c = 1; c < n; ++c) {
    NVec col(n);
    for (int r = 0; r < n; ++r) col[r] = q(r, c);
    basis.push_back(std::move(col));
  }
  return basis;
}

double max_principal_angle(const NMat& u, const NMat& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("principal angles: dimension mismatch");
  }
  if (u.empty()) return 0.0;
  Eigen::MatrixXd mu = to_eigen(u).transpose();  // columns are basis vectors
  Eigen::MatrixXd mv = to_eigen(v).transpose();
  Eigen::MatrixXd prod = mu.transpose() * mv;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(prod);
  double smin = svd.singularValues().minCoeff();
  smin = std::min(1.0, std::max(-1.0, smin));
  return std::acos(smin);
}

NMat orthonormal_span(const NMat& rows, double tol) {
  if (rows.empty()) return {};
  Eigen::MatrixXd m = to_eigen(rows).transpose();  // columns = vectors
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > tol) ++r;
  }
  return from_eigen_cols(svd.matrixU(), r);
}

NMat numeric_nullspace(const NMat& rows, double tol) {
  if (rows.empty()) throw std::invalid_argument("numeric_nullspace: empty");
  Eigen::MatrixXd m = to_eigen(rows);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const int n = static_cast<int>(rows[0].size());
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > tol) ++r;
  }
  NMat out;
  for (int c = r; c < n; ++c) {
    NVec v(n);
    for (int i = 0; i < n; ++i) v[i] = svd.matrixV()(i, c);
    out.push_back(std::move(v));
  }
  return out;
}

int numeric_rank(const NMat& rows, double tol) {
  if (rows.empty()) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(rows));
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > tol) ++r;
  }
  return r;
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

NVec Rng::direction(int dim) {
  NVec v(dim);
  double n = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = normal();
    n = norm2(v);
  } while (n < 1e-12);
  return scale(v, 1.0 / n);
}

std::uint64_t derive_seed(std::uint64_t master, const std::string& name) {
  // FNV-1a over the name, folded with the master seed and finalized with a
  // splitmix64 step.
  std::uint64_t h = 1469598103934665603ULL ^ master;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

}  // namespace bjorth
