#include "bjorth/norms.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace bjorth {

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw ContractError(message);
}

NVec check_dim(const Norm& norm, const NVec& x, const char* what) {
  require(static_cast<int>(x.size()) == norm.dim(),
          std::string(what) + ": dimension mismatch for " + norm.label());
  return x;
}

}  // namespace

Rat PolyhedralData::value(const RVec& x) const {
  Rat best = 0;
  for (const RVec& f : functionals) {
    Rat v = bjorth::dot(f, x);
    if (v > best) best = v;
  }
  return best;
}

std::vector<int> PolyhedralData::active_set(const RVec& x) const {
  const Rat v = value(x);
  std::vector<int> active;
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    if (bjorth::dot(functionals[i], x) == v) active.push_back(static_cast<int>(i));
  }
  return active;
}

double Norm::value_vec(const Vec& x) const {
  if (is_exact() && x.is_exact()) {
    return rational_to_double(polyhedral_->value(x.rat()));
  }
  return value(x.to_num());
}

DirDeriv Norm::dirderiv(const NVec& u, const NVec& v,
                        const Tolerances& tol) const {
  check_dim(*this, u, "dirderiv");
  check_dim(*this, v, "dirderiv");
  const double base = value(u);
  auto quotient = [&](double t) { return (value(axpy(u, t, v)) - base) / t; };
  DirDeriv d;
  const double plus_coarse = quotient(tol.fd_step);
  const double plus_fine = quotient(tol.fd_step_fine);
  const double minus_coarse = quotient(-tol.fd_step);
  const double minus_fine = quotient(-tol.fd_step_fine);
  d.plus = plus_fine;
  d.minus = minus_fine;
  d.fd_unstable = std::abs(plus_coarse - plus_fine) > tol.fd_disagree ||
                  std::abs(minus_coarse - minus_fine) > tol.fd_disagree;
  return d;
}

// ---------------------------------------------------------------------------
// Polyhedral
// ---------------------------------------------------------------------------

namespace {

class PolyhedralNorm final : public Norm {
 public:
  PolyhedralNorm(std::shared_ptr<const PolyhedralData> data, std::string label)
      : Norm(NormKind::Polyhedral, data->dim, std::move(label)) {
    polyhedral_ = std::move(data);
    for (const RVec& f : polyhedral_->functionals) {
      functionals_num_.push_back(rvec_to_doubles(f));
    }
  }

  double value(const NVec& x) const override {
    check_dim(*this, x, "value");
    double best = 0.0;
    for (const NVec& f : functionals_num_) {
      best = std::max(best, bjorth::dot(f, x));
    }
    return best;
  }

  DirDeriv dirderiv(const NVec& u, const NVec& v,
                    const Tolerances&) const override {
    // Exact extreme values of f(v) over the active set at u.
    const RVec ur = rvec_from_doubles(check_dim(*this, u, "dirderiv"));
    const RVec vr = rvec_from_doubles(check_dim(*this, v, "dirderiv"));
    require(!is_zero(ur), "dirderiv: zero base point");
    bool first = true;
    Rat lo = 0, hi = 0;
    for (int i : polyhedral_->active_set(ur)) {
      Rat val = bjorth::dot(polyhedral_->functionals[i], vr);
      if (first || val < lo) lo = val;
      if (first || val > hi) hi = val;
      first = false;
    }
    DirDeriv d;
    d.minus = rational_to_double(lo);
    d.plus = rational_to_double(hi);
    return d;
  }

  Subdifferential subdifferential(const Vec& x,
                                  const Tolerances&) const override {
    const RVec xr = x.to_rat();
    require(static_cast<int>(xr.size()) == dim_, "subdifferential: dimension");
    require(!is_zero(xr), "subdifferential: zero vector");
    Subdifferential sd;
    sd.kind = Subdifferential::Kind::ExactPolytope;
    for (int i : polyhedral_->active_set(xr)) {
      sd.exact_vertices.push_back(polyhedral_->functionals[i]);
    }
    return sd;
  }

 private:
  NMat functionals_num_;
};

// ---------------------------------------------------------------------------
// Lp, 1 < p < inf
// ---------------------------------------------------------------------------

class LpNorm final : public Norm {
 public:
  LpNorm(double p, int dim)
      : Norm(NormKind::Lp, dim,
             "lp(" + format_p(p) + "," + std::to_string(dim) + ")"),
        p_(p) {}

  double value(const NVec& x) const override {
    check_dim(*this, x, "value");
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p_);
    return std::pow(s, 1.0 / p_);
  }

  NVec gradient(const NVec& x) const {
    const double nv = value(x);
    require(nv > 0.0, "gradient: zero vector");
    NVec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double a = std::abs(x[i]);
      g[i] = (a == 0.0 ? 0.0
                       : (x[i] > 0 ? 1.0 : -1.0) * std::pow(a / nv, p_ - 1.0));
    }
    return g;
  }

  DirDeriv dirderiv(const NVec& u, const NVec& v,
                    const Tolerances&) const override {
    const double d = bjorth::dot(gradient(u), check_dim(*this, v, "dirderiv"));
    return DirDeriv{d, d, false};
  }

  Subdifferential subdifferential(const Vec& x,
                                  const Tolerances&) const override {
    Subdifferential sd;
    sd.kind = Subdifferential::Kind::NumericSingleton;
    sd.gradient = gradient(x.to_num());
    return sd;
  }

  double p() const { return p_; }

 private:
  static std::string format_p(double p) {
    std::ostringstream os;
    os << p;
    return os.str();
  }
  double p_;
};

// ---------------------------------------------------------------------------
// AbsoluteRadon
// ---------------------------------------------------------------------------

// Unit circle in the closed first quadrant: the graph of
//   eta(xi) = -e xi ln xi  on [1/e, 1]
// (strictly concave, eta(1/e) = 1, eta(1) = 0) glued to the flat top
//   { (xi, 1) : 0 <= xi <= 1/e },
// then reflected to an absolute norm. Solving the ODE xi^2 eta'' - xi eta' +
// eta = 0 this curve makes every orthogonality relation on the plane
// symmetric while keeping a flat segment.
class AbsoluteRadonNorm final : public Norm {
 public:
  AbsoluteRadonNorm() : Norm(NormKind::AbsoluteRadon, 2, "absolute_radon") {}

  double value(const NVec& x) const override {
    check_dim(*this, x, "value");
    return value_abs(std::abs(x[0]), std::abs(x[1]));
  }

  // Ray scaling t with (ax, ay) / t on the boundary, ax = |x|, ay = |y|.
  double value_abs(double ax, double ay) const {
    if (ax == 0.0 && ay == 0.0) return 0.0;
    if (ax == 0.0 || ay >= kE * ax) return ay;  // flat top region
    if (ay == 0.0) return ax;
    // Bisection on the decreasing g(t) = ay/t - eta(ax/t), t in [ax, e ax].
    double lo = ax, hi = kE * ax;
    Tolerances tol;
    for (int it = 0; it < tol.radon_bisect_max; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double g = ay / mid - absolute_radon_eta(ax / mid);
      if (g > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
      if ((hi - lo) <= tol.radon_bisect_rel * lo) break;
    }
    return 0.5 * (lo + hi);
  }

  // Classification of (|x|, |y|) scaled to the sphere. Gradients are
  // 0-homogeneous so they only depend on xi = |x| / t.
  enum class Region { FlatTop, CurveArc, AxisVertex };

  Region region(const NVec& x, const Tolerances& tol) const {
    const double ax = std::abs(x[0]), ay = std::abs(x[1]);
    const double scale = std::max(ax, ay);
    require(scale > 0.0, "region: zero vector");
    if (ay <= tol.seam * scale) return Region::AxisVertex;
    if (ax == 0.0 || ay >= kE * ax) return Region::FlatTop;
    return Region::CurveArc;
  }

  NVec gradient(const NVec& x, const Tolerances& tol) const {
    const double sx = x[0] >= 0 ? 1.0 : -1.0;
    const double sy = x[1] >= 0 ? 1.0 : -1.0;
    switch (region(x, tol)) {
      case Region::FlatTop:
        return {0.0, sy};
      case Region::CurveArc: {
        const double t = value_abs(std::abs(x[0]), std::abs(x[1]));
        const double xi = std::abs(x[0]) / t;
        return {sx * (1.0 + std::log(xi)) / xi, sy / (kE * xi)};
      }
      case Region::AxisVertex:
        throw ContractError("gradient: nonsmooth axis point");
    }
    throw ContractError("gradient: unreachable");
  }

  DirDeriv dirderiv(const NVec& u, const NVec& v,
                    const Tolerances& tol) const override {
    check_dim(*this, u, "dirderiv");
    check_dim(*this, v, "dirderiv");
    if (region(u, tol) == Region::AxisVertex) {
      // Subdifferential at (s,0): { (sign s, w/e) : |w| <= 1 }.
      const double sx = u[0] >= 0 ? 1.0 : -1.0;
      return DirDeriv{sx * v[0] - std::abs(v[1]) / kE,
                      sx * v[0] + std::abs(v[1]) / kE, false};
    }
    const double d = bjorth::dot(gradient(u, tol), v);
    return DirDeriv{d, d, false};
  }

  Subdifferential subdifferential(const Vec& x,
                                  const Tolerances& tol) const override {
    const NVec xn = x.to_num();
    check_dim(*this, xn, "subdifferential");
    Subdifferential sd;
    if (region(xn, tol) == Region::AxisVertex) {
      const double sx = xn[0] >= 0 ? 1.0 : -1.0;
      sd.kind = Subdifferential::Kind::NumericSegment;
      sd.seg_a = {sx, 1.0 / kE};
      sd.seg_b = {sx, -1.0 / kE};
      return sd;
    }
    sd.kind = Subdifferential::Kind::NumericSingleton;
    sd.gradient = gradient(xn, tol);
    return sd;
  }

  static constexpr double kE = 2.718281828459045235;
};

// ---------------------------------------------------------------------------
// BJExampleR3
// ---------------------------------------------------------------------------

// |(x,y,z)| = sqrt(2) |(x,y,z)|_2 inside the cone |z| <= hypot(x,y), and
// hypot(x,y) + |z| outside. The two branches agree on the cone boundary and
// the only nonsmooth points are the poles (0,0,+-1).
class BJExampleR3Norm final : public Norm {
 public:
  BJExampleR3Norm() : Norm(NormKind::BJExampleR3, 3, "bj_example_r3") {}

  double value(const NVec& x) const override {
    check_dim(*this, x, "value");
    const double r = std::hypot(x[0], x[1]);
    const double az = std::abs(x[2]);
    if (az <= r) return kSqrt2 * std::sqrt(r * r + az * az);
    return r + az;
  }

  bool on_axis(const NVec& x, const Tolerances& tol) const {
    const double r = std::hypot(x[0], x[1]);
    const double az = std::abs(x[2]);
    const double scale = std::max(r, az);
    require(scale > 0.0, "on_axis: zero vector");
    return r <= tol.seam * scale;
  }

  NVec gradient(const NVec& x, const Tolerances& tol) const {
    require(!on_axis(x, tol), "gradient: nonsmooth axis point");
    const double r = std::hypot(x[0], x[1]);
    const double az = std::abs(x[2]);
    if (az <= r) {
      const double e2 = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      return {kSqrt2 * x[0] / e2, kSqrt2 * x[1] / e2, kSqrt2 * x[2] / e2};
    }
    const double sz = x[2] >= 0 ? 1.0 : -1.0;
    return {x[0] / r, x[1] / r, sz};
  }

  DirDeriv dirderiv(const NVec& u, const NVec& v,
                    const Tolerances& tol) const override {
    check_dim(*this, u, "dirderiv");
    check_dim(*this, v, "dirderiv");
    if (on_axis(u, tol)) {
      // Subdifferential at the pole: the disc {(a,b,sz): a^2 + b^2 <= 1}.
      const double sz = u[2] >= 0 ? 1.0 : -1.0;
      const double rv = std::hypot(v[0], v[1]);
      return DirDeriv{-rv + sz * v[2], rv + sz * v[2], false};
    }
    const double d = bjorth::dot(gradient(u, tol), v);
    return DirDeriv{d, d, false};
  }

  Subdifferential subdifferential(const Vec& x,
                                  const Tolerances& tol) const override {
    const NVec xn = x.to_num();
    check_dim(*this, xn, "subdifferential");
    Subdifferential sd;
    if (on_axis(xn, tol)) {
      const double sz = xn[2] >= 0 ? 1.0 : -1.0;
      // Two extreme supporting functionals of the disc; marker for the
      // nonsmooth pole (derivative queries use the analytic disc formula).
      sd.kind = Subdifferential::Kind::NumericSegment;
      sd.seg_a = {1.0, 0.0, sz};
      sd.seg_b = {-1.0, 0.0, sz};
      return sd;
    }
    sd.kind = Subdifferential::Kind::NumericSingleton;
    sd.gradient = gradient(xn, tol);
    return sd;
  }

  static constexpr double kSqrt2 = 1.4142135623730950488;
};

// ---------------------------------------------------------------------------
// ComplexRadon
// ---------------------------------------------------------------------------

// C^2 with |(a,b)| = R(|a|, |b|) for the AbsoluteRadon plane R, stored as
// four real coordinates (Re a, Im a, Re b, Im b).
class ComplexRadonNorm final : public Norm {
 public:
  ComplexRadonNorm()
      : Norm(NormKind::ComplexRadon, 4, "complex_radon"),
        base_(std::make_shared<AbsoluteRadonNorm>()) {}

  double value(const NVec& x) const override {
    check_dim(*this, x, "value");
    return base_->value_abs(std::hypot(x[0], x[1]), std::hypot(x[2], x[3]));
  }

  DirDeriv dirderiv(const NVec& u, const NVec& v,
                    const Tolerances& tol) const override {
    check_dim(*this, u, "dirderiv");
    check_dim(*this, v, "dirderiv");
    const double ma = std::hypot(u[0], u[1]);
    const double mb = std::hypot(u[2], u[3]);
    const double scale = std::max(ma, mb);
    require(scale > 0.0, "dirderiv: zero vector");
    if (mb <= tol.seam * scale) {
      // Disc subdifferential at (a, 0): modulus swing |v_b| / e around the
      // rotation-invariant base slope.
      const double base = (u[0] * v[0] + u[1] * v[1]) / ma;
      const double swing = std::hypot(v[2], v[3]) / AbsoluteRadonNorm::kE;
      return DirDeriv{base - swing, base + swing, false};
    }
    const NVec g2 = base_->gradient({ma, mb}, tol);
    double d = g2[1] * (u[2] * v[2] + u[3] * v[3]) / mb;
    if (ma > 0.0) d += g2[0] * (u[0] * v[0] + u[1] * v[1]) / ma;
    return DirDeriv{d, d, false};
  }

  Subdifferential subdifferential(const Vec& x,
                                  const Tolerances& tol) const override {
    const NVec xn = x.to_num();
    check_dim(*this, xn, "subdifferential");
    const double ma = std::hypot(xn[0], xn[1]);
    const double mb = std::hypot(xn[2], xn[3]);
    const double scale = std::max(ma, mb);
    require(scale > 0.0, "subdifferential: zero vector");
    Subdifferential sd;
    if (mb <= tol.seam * scale) {
      // Kink of R on the modulus axis; extreme pair of the realified disc.
      const double ar = xn[0] / ma, ai = xn[1] / ma;
      sd.kind = Subdifferential::Kind::NumericSegment;
      sd.seg_a = {ar, ai, 1.0 / AbsoluteRadonNorm::kE, 0.0};
      sd.seg_b = {ar, ai, -1.0 / AbsoluteRadonNorm::kE, 0.0};
      return sd;
    }
    NVec g2 = base_->gradient({ma, mb}, tol);
    NVec g(4, 0.0);
    if (ma > 0.0) {
      g[0] = g2[0] * xn[0] / ma;
      g[1] = g2[0] * xn[1] / ma;
    }
    g[2] = g2[1] * xn[2] / mb;
    g[3] = g2[1] * xn[3] / mb;
    sd.kind = Subdifferential::Kind::NumericSingleton;
    sd.gradient = g;
    return sd;
  }

  const AbsoluteRadonNorm& base() const { return *base_; }

 private:
  std::shared_ptr<const AbsoluteRadonNorm> base_;
};

// ---------------------------------------------------------------------------
// DirectSumL2
// ---------------------------------------------------------------------------

class DirectSumL2Norm final : public Norm {
 public:
  DirectSumL2Norm(NormPtr left, NormPtr right)
      : Norm(NormKind::DirectSumL2, left->dim() + right->dim(),
             left->label() + " (+)_2 " + right->label()),
        left_(std::move(left)),
        right_(std::move(right)) {}

  std::pair<NVec, NVec> split(const NVec& x) const {
    NVec xl(x.begin(), x.begin() + left_->dim());
    NVec xr(x.begin() + left_->dim(), x.end());
    return {std::move(xl), std::move(xr)};
  }

  double value(const NVec& x) const override {
    check_dim(*this, x, "value");
    auto [xl, xr] = split(x);
    return std::hypot(left_->value(xl), right_->value(xr));
  }

  DirDeriv dirderiv(const NVec& u, const NVec& v,
                    const Tolerances& tol) const override {
    check_dim(*this, u, "dirderiv");
    check_dim(*this, v, "dirderiv");
    auto [ul, ur] = split(u);
    auto [vl, vr] = split(v);
    const double a = left_->value(ul);
    const double b = right_->value(ur);
    const double n = std::hypot(a, b);
    require(n > 0.0, "dirderiv: zero vector");
    // One-sided chain rule for t -> sqrt(a(t)^2 + b(t)^2): components with a
    // zero part contribute nothing to first order.
    DirDeriv dl = a > 0.0 ? left_->dirderiv(ul, vl, tol) : DirDeriv{};
    DirDeriv dr = b > 0.0 ? right_->dirderiv(ur, vr, tol) : DirDeriv{};
    DirDeriv d;
    d.plus = (a * dl.plus + b * dr.plus) / n;
    d.minus = (a * dl.minus + b * dr.minus) / n;
    d.fd_unstable = dl.fd_unstable || dr.fd_unstable;
    return d;
  }

  Subdifferential subdifferential(const Vec& x,
                                  const Tolerances& tol) const override {
    const NVec xn = x.to_num();
    check_dim(*this, xn, "subdifferential");
    auto [xl, xr] = split(xn);
    const double a = left_->value(xl);
    const double b = right_->value(xr);
    const double n = std::hypot(a, b);
    require(n > 0.0, "subdifferential: zero vector");

    auto lift = [&](const NVec& fl, const NVec& fr) {
      NVec f;
      f.reserve(dim_);
      f.insert(f.end(), fl.begin(), fl.end());
      f.insert(f.end(), fr.begin(), fr.end());
      return f;
    };
    const NVec zl(left_->dim(), 0.0), zr(right_->dim(), 0.0);

    Subdifferential sl, sr;
    if (a > 0.0) sl = left_->subdifferential(Vec::numeric(xl), tol);
    if (b > 0.0) sr = right_->subdifferential(Vec::numeric(xr), tol);

    auto part = [&](const Subdifferential& s, double w,
                    const NVec& zero) -> std::pair<NVec, NVec> {
      // Extreme pair (possibly equal) of the scaled component.
      if (w == 0.0) return {zero, zero};
      if (s.kind == Subdifferential::Kind::NumericSingleton) {
        return {scale(s.gradient, w), scale(s.gradient, w)};
      }
      if (s.kind == Subdifferential::Kind::NumericSegment) {
        return {scale(s.seg_a, w), scale(s.seg_b, w)};
      }
      throw ContractError("subdifferential: exact component in direct sum");
    };
    auto [la, lb] = part(sl, a > 0.0 ? a / n : 0.0, zl);
    auto [ra, rb] = part(sr, b > 0.0 ? b / n : 0.0, zr);

    Subdifferential sd;
    const bool left_smooth = a == 0.0 || sl.singleton();
    const bool right_smooth = b == 0.0 || sr.singleton();
    if (left_smooth && right_smooth) {
      sd.kind = Subdifferential::Kind::NumericSingleton;
      sd.gradient = lift(la, ra);
    } else {
      sd.kind = Subdifferential::Kind::NumericSegment;
      sd.seg_a = lift(la, ra);
      sd.seg_b = lift(lb, rb);
    }
    return sd;
  }

  NormPtr left_, right_;
};

std::shared_ptr<const PolyhedralData> build_polyhedral_data(RMat functionals) {
  require(!functionals.empty(), "polyhedral: empty dual vertex list");
  const int dim = static_cast<int>(functionals[0].size());
  require(dim >= 1, "polyhedral: zero dimension");
  for (const RVec& f : functionals) {
    require(static_cast<int>(f.size()) == dim, "polyhedral: ragged rows");
    require(!is_zero(f), "polyhedral: zero functional");
  }

  auto data = std::make_shared<PolyhedralData>();
  data->dim = dim;
  data->functionals = std::move(functionals);

  // Symmetry: every f needs its -f.
  data->negation.assign(data->functionals.size(), -1);
  for (std::size_t i = 0; i < data->functionals.size(); ++i) {
    const RVec neg = negate(data->functionals[i]);
    for (std::size_t j = 0; j < data->functionals.size(); ++j) {
      if (compare(data->functionals[j], neg) == 0) {
        data->negation[i] = static_cast<int>(j);
        break;
      }
    }
    require(data->negation[i] >= 0,
            "polyhedral: dual vertices must be symmetric (missing -f)");
  }

  require(rank(data->functionals) == dim,
          "polyhedral: dual vertices must span the space");

  for (std::size_t i = 0; i < data->functionals.size(); ++i) {
    RMat others;
    for (std::size_t j = 0; j < data->functionals.size(); ++j) {
      if (j != i) others.push_back(data->functionals[j]);
    }
    require(!in_convex_hull(data->functionals[i], others),
            "polyhedral: duplicate or redundant dual vertex");
  }
  return data;
}

}  // namespace

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

NormPtr make_polyhedral(RMat dual_vertices, std::string label) {
  return std::make_shared<PolyhedralNorm>(
      build_polyhedral_data(std::move(dual_vertices)), std::move(label));
}

NormPtr make_lp_inf(int dim) {
  require(dim >= 1 && dim <= 8, "lp: unsupported dimension");
  RMat functionals;
  for (int i = 0; i < dim; ++i) {
    RVec e(dim, Rat(0));
    e[i] = 1;
    functionals.push_back(e);
    functionals.push_back(negate(e));
  }
  return std::make_shared<PolyhedralNorm>(
      build_polyhedral_data(std::move(functionals)),
      "linf" + std::to_string(dim));
}

namespace {

NormPtr make_l1(int dim) {
  require(dim >= 1 && dim <= 8, "lp: unsupported dimension");
  RMat functionals;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    RVec f(dim);
    for (int i = 0; i < dim; ++i) f[i] = (mask >> i) & 1 ? Rat(-1) : Rat(1);
    functionals.push_back(std::move(f));
  }
  if (dim == 1) {
    // (+1) and (-1) only.
    RMat pair = {{Rat(1)}, {Rat(-1)}};
    functionals = pair;
  }
  return std::make_shared<PolyhedralNorm>(
      build_polyhedral_data(std::move(functionals)),
      "l1_" + std::to_string(dim));
}

}  // namespace

NormPtr make_lp(double p, int dim) {
  require(dim >= 1, "lp: dimension must be positive");
  require(p >= 1.0, "lp: p must be at least 1");
  if (std::isinf(p)) return make_lp_inf(dim);
  if (p == 1.0) return make_l1(dim);
  return std::make_shared<LpNorm>(p, dim);
}

NormPtr make_hexagonal() {
  RMat functionals = {{Rat(1), Rat(0)},  {Rat(-1), Rat(0)}, {Rat(0), Rat(1)},
                      {Rat(0), Rat(-1)}, {Rat(1), Rat(-1)}, {Rat(-1), Rat(1)}};
  return make_polyhedral(std::move(functionals), "hexagonal");
}

NormPtr make_absolute_radon() { return std::make_shared<AbsoluteRadonNorm>(); }

NormPtr make_bj_example_r3() { return std::make_shared<BJExampleR3Norm>(); }

NormPtr make_complex_radon() { return std::make_shared<ComplexRadonNorm>(); }

NormPtr make_direct_sum_l2(NormPtr left, NormPtr right) {
  require(left && right, "direct_sum_l2: missing component");
  return std::make_shared<DirectSumL2Norm>(std::move(left), std::move(right));
}

std::optional<DirectSumView> direct_sum_view(const Norm& norm) {
  if (norm.kind() != NormKind::DirectSumL2) return std::nullopt;
  const auto& sum = static_cast<const DirectSumL2Norm&>(norm);
  return DirectSumView{sum.left_, sum.right_, sum.left_->dim()};
}

double lp_exponent(const Norm& norm) {
  if (norm.kind() != NormKind::Lp) return 0.0;
  return static_cast<const LpNorm&>(norm).p();
}

// ---------------------------------------------------------------------------
// eta
// ---------------------------------------------------------------------------

double absolute_radon_eta(double xi) {
  return -AbsoluteRadonNorm::kE * xi * std::log(xi);
}

double absolute_radon_eta_prime(double xi) {
  return -AbsoluteRadonNorm::kE * (std::log(xi) + 1.0);
}

double absolute_radon_eta_second(double xi) {
  return -AbsoluteRadonNorm::kE / xi;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

using Json = nlohmann::json;

Rat json_rational(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw ContractError(where +
                      ": rational coordinates must be strings \"p/q\" or "
                      "integers");
}

NormPtr parse_spec_json(const Json& j);

NormPtr parse_lp(const Json& j) {
  if (!j.contains("p") || !j.contains("dim")) {
    throw ContractError("lp spec needs \"p\" and \"dim\"");
  }
  double p = 0.0;
  const Json& pj = j.at("p");
  if (pj.is_string()) {
    const std::string s = pj.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "oo") {
      p = std::numeric_limits<double>::infinity();
    } else {
      throw ContractError("lp: unrecognized p \"" + s + "\"");
    }
  } else if (pj.is_number()) {
    p = pj.get<double>();
  } else {
    throw ContractError("lp: p must be a number or \"inf\"");
  }
  const int dim = j.at("dim").get<int>();
  return make_lp(p, dim);
}

NormPtr parse_spec_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) {
    throw ContractError("norm spec must be an object with a \"type\" field");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "lp") return parse_lp(j);
  if (type == "polyhedral") {
    if (!j.contains("dual_vertices")) {
      throw ContractError("polyhedral spec needs \"dual_vertices\"");
    }
    RMat functionals;
    for (const Json& row : j.at("dual_vertices")) {
      RVec f;
      for (const Json& entry : row) {
        f.push_back(json_rational(entry, "polyhedral dual_vertices"));
      }
      functionals.push_back(std::move(f));
    }
    std::string label = j.value("label", std::string("polyhedral"));
    return make_polyhedral(std::move(functionals), std::move(label));
  }
  if (type == "hexagonal") return make_hexagonal();
  if (type == "absolute_radon") return make_absolute_radon();
  if (type == "bj_example_r3") return make_bj_example_r3();
  if (type == "complex_radon") return make_complex_radon();
  if (type == "day_radon") {
    if (!j.contains("seed")) throw ContractError("day_radon spec needs \"seed\"");
    NormPtr seed = parse_spec_json(j.at("seed"));
    if (seed->dim() != 2 || seed->kind() == NormKind::ComplexRadon) {
      throw ContractError("day_radon: seed must be a real 2D norm");
    }
    return make_day_radon(std::move(seed));
  }
  if (type == "direct_sum_l2") {
    if (!j.contains("left") || !j.contains("right")) {
      throw ContractError("direct_sum_l2 spec needs \"left\" and \"right\"");
    }
    return make_direct_sum_l2(parse_spec_json(j.at("left")),
                              parse_spec_json(j.at("right")));
  }
  throw ContractError("unknown norm spec type \"" + type + "\"");
}

}  // namespace

NormPtr parse_norm_spec(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const std::exception& e) {
    throw ContractError(std::string("norm spec: invalid JSON: ") + e.what());
  }
  return parse_spec_json(j);
}

NormPtr parse_norm_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open spec file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_norm_spec(buffer.str());
}

std::vector<NVec> unit_sphere_samples(const Norm& norm, int count,
                                      std::uint64_t seed,
                                      const Tolerances& tol) {
  require(count >= 1, "unit_sphere_samples: count must be positive");
  Rng rng(seed);
  std::vector<NVec> samples;
  samples.reserve(count);
  while (static_cast<int>(samples.size()) < count) {
    NVec dir = rng.direction(norm.dim());
    const double nv = norm.value(dir);
    if (!(nv > 1e-9)) continue;
    NVec unit = scale(dir, 1.0 / nv);
    require(std::abs(norm.value(unit) - 1.0) <= tol.unit_sample,
            "unit_sphere_samples: rescaled sample off the sphere");
    samples.push_back(std::move(unit));
  }
  return samples;
}

}  // namespace bjorth
