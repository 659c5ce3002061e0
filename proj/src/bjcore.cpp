#include "bjorth/bjcore.hpp"

#include "bjorth/arrangement.hpp"
#include "bjorth/radon.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bjorth {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const std::string& message) {
  if (!cond) throw ContractError(message);
}

RVec exact_point(const Norm& norm, const Vec& x, const char* what) {
  RVec r = x.to_rat();
  require(static_cast<int>(r.size()) == norm.dim(),
          std::string(what) + ": dimension mismatch");
  return r;
}

NVec numeric_point(const Norm& norm, const Vec& x, const char* what) {
  NVec v = x.to_num();
  require(static_cast<int>(v.size()) == norm.dim(),
          std::string(what) + ": dimension mismatch");
  return v;
}

/// Signed active set canonicalized under global negation: x-perp depends on
/// the active set only up to replacing every functional by its negative
/// (A(-x) = -A(x)), so the descriptor picks the lexicographically smaller of
/// the two index lists.
std::vector<int> canonical_active(const PolyhedralData& data,
                                  std::vector<int> active) {
  std::vector<int> negated;
  negated.reserve(active.size());
  for (int i : active) negated.push_back(data.negation[i]);
  std::sort(active.begin(), active.end());
  std::sort(negated.begin(), negated.end());
  return std::min(active, negated);
}

NVec canonical_gradient_direction(NVec g) {
  g = normalize2(g);
  for (double c : g) {
    if (std::abs(c) > 1e-12) {
      if (c < 0) g = scale(g, -1.0);
      break;
    }
  }
  return g;
}

double margin_of(const DirDeriv& d) { return std::min(d.plus, -d.minus); }

NormPtr norm_ptr(const Norm& norm) {
  return std::static_pointer_cast<const Norm>(norm.shared_from_this());
}

/// Incoming class list at an exact point: all face classes whose active-set
/// straddle condition holds at x.
std::vector<int> incoming_class_list(const FaceLattice& lattice,
                                     const RVec& x) {
  const PolyhedralData& data = *lattice.norm->polyhedral();
  std::vector<int> classes;
  for (int c = 0; c < lattice.num_classes; ++c) {
    const Face& face = lattice.class_face(c);
    RMat active;
    for (int i : face.active) active.push_back(data.functionals[i]);
    if (straddle_holds(active, x)) classes.push_back(c);
  }
  return classes;
}

}  // namespace

DirDeriv directional_derivative(const Norm& norm, const Vec& u, const Vec& v,
                                const Tolerances& tol) {
  if (norm.is_exact()) {
    const RVec ur = exact_point(norm, u, "directional_derivative");
    const RVec vr = exact_point(norm, v, "directional_derivative");
    require(!is_zero(ur), "directional_derivative: zero base point");
    const PolyhedralData& data = *norm.polyhedral();
    bool first = true;
    Rat lo = 0, hi = 0;
    for (int i : data.active_set(ur)) {
      const Rat val = dot(data.functionals[i], vr);
      if (first || val < lo) lo = val;
      if (first || val > hi) hi = val;
      first = false;
    }
    return DirDeriv{rational_to_double(lo), rational_to_double(hi), false};
  }
  return norm.dirderiv(numeric_point(norm, u, "directional_derivative"),
                       numeric_point(norm, v, "directional_derivative"), tol);
}

OrthoVerdict is_bj_orthogonal(const Norm& norm, const Vec& x, const Vec& y,
                              const Tolerances& tol) {
  if (norm.kind() == NormKind::ComplexRadon) {
    const NVec xn = numeric_point(norm, x, "is_bj_orthogonal");
    const NVec yn = numeric_point(norm, y, "is_bj_orthogonal");
    require(norm.value(xn) > 0.0, "is_bj_orthogonal: zero vector");
    OrthoVerdict verdict;
    verdict.orthogonal =
        complex_radon_orthogonal(cx_a(xn), cx_b(xn), cx_a(yn), cx_b(yn), tol);
    return verdict;
  }

  if (norm.is_exact()) {
    const RVec xr = exact_point(norm, x, "is_bj_orthogonal");
    const RVec yr = exact_point(norm, y, "is_bj_orthogonal");
    require(!is_zero(xr), "is_bj_orthogonal: zero vector");
    const PolyhedralData& data = *norm.polyhedral();
    const std::vector<int> active = data.active_set(xr);
    Rat lo = 0, hi = 0;
    int arg_lo = -1, arg_hi = -1, arg_zero = -1;
    bool first = true;
    for (int i : active) {
      const Rat val = dot(data.functionals[i], yr);
      if (first || val < lo) {
        lo = val;
        arg_lo = i;
      }
      if (first || val > hi) {
        hi = val;
        arg_hi = i;
      }
      if (val == 0) arg_zero = i;
      first = false;
    }
    OrthoVerdict verdict;
    verdict.orthogonal = lo <= 0 && 0 <= hi;
    verdict.margin = rational_to_double(hi < -lo ? hi : -lo);
    if (verdict.orthogonal) {
      if (arg_zero >= 0) {
        verdict.witness = Functional::exact(data.functionals[arg_zero]);
      } else {
        // Convex combination of the extreme active functionals killing y:
        // f = (hi * f_lo - lo * f_hi) / (hi - lo), weights in (0,1).
        const RVec& fl = data.functionals[arg_lo];
        const RVec& fh = data.functionals[arg_hi];
        RVec f = scale(add(scale(fl, hi), scale(fh, -lo)), Rat(1) / (hi - lo));
        verdict.witness = Functional::exact(std::move(f));
      }
    }
    return verdict;
  }

  const NVec xn = numeric_point(norm, x, "is_bj_orthogonal");
  const NVec yn = numeric_point(norm, y, "is_bj_orthogonal");
  require(norm.value(xn) > 0.0, "is_bj_orthogonal: zero vector");
  const DirDeriv d = norm.dirderiv(xn, yn, tol);
  OrthoVerdict verdict;
  verdict.margin = margin_of(d);
  verdict.orthogonal = *verdict.margin >= -tol.orth_margin;
  if (verdict.orthogonal) {
    const Subdifferential sd = norm.subdifferential(Vec::numeric(xn), tol);
    if (sd.kind == Subdifferential::Kind::NumericSingleton) {
      verdict.witness = Functional::numeric(sd.gradient);
    } else if (sd.kind == Subdifferential::Kind::NumericSegment) {
      const double a = dot(sd.seg_a, yn);
      const double b = dot(sd.seg_b, yn);
      if (a != b) {
        const double t = a / (a - b);
        if (t >= 0.0 && t <= 1.0) {
          verdict.witness = Functional::numeric(
              add(scale(sd.seg_a, 1.0 - t), scale(sd.seg_b, t)));
        }
      } else if (std::abs(a) <= tol.orth_margin) {
        verdict.witness = Functional::numeric(sd.seg_a);
      }
    }
  }
  return verdict;
}

bool is_smooth(const Norm& norm, const Vec& x, const Tolerances& tol) {
  return norm.subdifferential(x, tol).singleton();
}

NeighborhoodDescriptor neighborhood_descriptor(
    const Norm& norm, const Vec& x, NeighborhoodDescriptor::Side side,
    const Tolerances& tol) {
  NeighborhoodDescriptor d;
  d.side = side;
  if (norm.is_exact()) {
    d.mode = NeighborhoodDescriptor::Mode::ExactActiveSet;
    const RVec xr = exact_point(norm, x, "neighborhood_descriptor");
    require(!is_zero(xr), "neighborhood_descriptor: zero vector");
    const PolyhedralData& data = *norm.polyhedral();
    if (side == NeighborhoodDescriptor::Side::Outgoing) {
      d.signed_active = canonical_active(data, data.active_set(xr));
      return d;
    }
    // Incoming: classes z with x in z-perp. Membership depends only on the
    // class of z (its active set), but on the exact point x.
    const auto lattice = face_lattice(norm_ptr(norm));
    d.incoming_classes = incoming_class_list(*lattice, xr);
    return d;
  }
  require(side == NeighborhoodDescriptor::Side::Outgoing,
          "neighborhood_descriptor: incoming descriptors are exact-only");
  d.mode = NeighborhoodDescriptor::Mode::NumericKernel;
  const Subdifferential sd = norm.subdifferential(x, tol);
  require(sd.kind == Subdifferential::Kind::NumericSingleton,
          "neighborhood_descriptor: numeric outgoing needs a smooth point");
  d.gradient = canonical_gradient_direction(sd.gradient);
  d.kernel_basis = hyperplane_basis(d.gradient);
  return d;
}

bool NeighborhoodDescriptor::operator==(
    const NeighborhoodDescriptor& other) const {
  if (mode != other.mode || side != other.side) return false;
  if (mode == Mode::ExactActiveSet) {
    return signed_active == other.signed_active &&
           incoming_classes == other.incoming_classes;
  }
  if (kernel_basis.size() != other.kernel_basis.size()) return false;
  return max_principal_angle(kernel_basis, other.kernel_basis) <=
         kKernelAngleTol;
}

namespace {

bool clearly_not_orthogonal(const Norm& norm, const NVec& x, const NVec& y,
                            double band, const Tolerances& tol) {
  return robust_orth_margin(norm, x, y, tol) < -band;
}

}  // namespace

double robust_orth_margin(const Norm& norm, const NVec& from, const NVec& to,
                          const Tolerances& tol) {
  double m = margin_of(norm.dirderiv(from, to, tol));
  const double base = norm.value(from);
  for (double s : {1e-6, 1e-3}) {
    const double qp = (norm.value(axpy(from, s, to)) - base) / s;
    const double qm = (norm.value(axpy(from, -s, to)) - base) / (-s);
    m = std::max(m, std::min(qp, -qm));
  }
  return m;
}

bool bj_equivalent(const Norm& norm, const Vec& x, const Vec& y,
                   std::uint64_t seed, int probes, const Tolerances& tol) {
  require(probes >= 1, "bj_equivalent: probes must be positive");
  if (norm.is_exact()) {
    const RVec xr = exact_point(norm, x, "bj_equivalent");
    const RVec yr = exact_point(norm, y, "bj_equivalent");
    require(!is_zero(xr) && !is_zero(yr), "bj_equivalent: zero vector");
    const PolyhedralData& data = *norm.polyhedral();
    if (canonical_active(data, data.active_set(xr)) !=
        canonical_active(data, data.active_set(yr))) {
      return false;
    }
    const auto lattice = face_lattice(norm_ptr(norm));
    return incoming_class_list(*lattice, xr) ==
           incoming_class_list(*lattice, yr);
  }

  const NVec xn = numeric_point(norm, x, "bj_equivalent");
  const NVec yn = numeric_point(norm, y, "bj_equivalent");
  require(norm.value(xn) > 0.0 && norm.value(yn) > 0.0,
          "bj_equivalent: zero vector");
  const double band = std::sqrt(tol.orth_margin);  // clear-disagreement margin

  const bool sx = is_smooth(norm, Vec::numeric(xn), tol);
  const bool sy = is_smooth(norm, Vec::numeric(yn), tol);
  if (sx != sy) return false;
  if (sx) {
    const NVec gx = norm.subdifferential(Vec::numeric(xn), tol).gradient;
    const NVec gy = norm.subdifferential(Vec::numeric(yn), tol).gradient;
    if (line_angle(gx, gy) > tol.kernel_angle) return false;
  } else {
    Rng rng(derive_seed(seed, "bj_equivalent_out"));
    for (int i = 0; i < probes; ++i) {
      const NVec w = rng.direction(norm.dim());
      const double mx = margin_of(norm.dirderiv(xn, w, tol));
      const double my = margin_of(norm.dirderiv(yn, w, tol));
      if ((mx > band && my < -band) || (my > band && mx < -band)) return false;
    }
  }

  // Incoming side: witnesses z -> x must also satisfy z -> y and vice versa.
  Rng rng(derive_seed(seed, "bj_equivalent_in"));
  const int witnesses = std::max(4, probes / 64);
  for (int i = 0; i < witnesses; ++i) {
    const NVec w = rng.direction(norm.dim());
    if (auto z = find_incoming_witness(norm, xn, w, tol)) {
      if (clearly_not_orthogonal(norm, *z, yn, band, tol)) return false;
    }
    if (auto z = find_incoming_witness(norm, yn, w, tol)) {
      if (clearly_not_orthogonal(norm, *z, xn, band, tol)) return false;
    }
  }
  return true;
}

namespace {

/// Exact equivalence test used by the blend search; assumes precomputed
/// lattice to avoid rebuilding it per pair.
bool exact_equivalent(const FaceLattice& lattice, const RVec& x,
                      const RVec& y) {
  const PolyhedralData& data = *lattice.norm->polyhedral();
  if (canonical_active(data, data.active_set(x)) !=
      canonical_active(data, data.active_set(y))) {
    return false;
  }
  return incoming_class_list(lattice, x) == incoming_class_list(lattice, y);
}

bool rationally_independent(const RVec& a, const RVec& b) {
  return rank(RMat{a, b}) == 2;
}

}  // namespace

BJNormReport is_bj_norm_sampled(const Norm& norm, int count,
                                std::uint64_t seed, const Tolerances& tol) {
  require(count >= 1, "is_bj_norm_sampled: count must be positive");
  BJNormReport report;

  if (norm.is_exact()) {
    const auto lattice = face_lattice(norm_ptr(norm));
    // Blended relative-interior candidates: pairs of distinct points inside
    // one face, built from the face centroid and a subface centroid. Flat
    // faces are where BJ-equivalent independent pairs live.
    for (const Face& face : lattice->faces) {
      if (face.dim < 1) continue;
      std::vector<RVec> partners;
      for (const Face& sub : lattice->faces) {
        if (sub.dim >= face.dim) continue;
        if (std::includes(face.vertex_ids.begin(), face.vertex_ids.end(),
                          sub.vertex_ids.begin(), sub.vertex_ids.end())) {
          partners.push_back(sub.representative);
        }
      }
      for (const RVec& p : partners) {
        const RVec u =
            scale(add(face.representative, p), Rat(1) / Rat(2));
        const RVec v = scale(add(scale(face.representative, Rat(2)), p),
                             Rat(1) / Rat(3));
        ++report.pairs_checked;
        if (rationally_independent(u, v) &&
            exact_equivalent(*lattice, u, v)) {
          report.violation_found = true;
          report.violating_pair = {Vec::exact(u), Vec::exact(v)};
          return report;
        }
      }
    }
    // Seeded random pairs (exact arithmetic on dyadic samples).
    Rng rng(derive_seed(seed, "bj_norm_exact"));
    for (int i = 0; i < count && report.pairs_checked < count; ++i) {
      const RVec u = rvec_from_doubles(rng.direction(norm.dim()));
      const RVec v = rvec_from_doubles(rng.direction(norm.dim()));
      ++report.pairs_checked;
      if (rationally_independent(u, v) && exact_equivalent(*lattice, u, v)) {
        report.violation_found = true;
        report.violating_pair = {Vec::exact(u), Vec::exact(v)};
        return report;
      }
    }
    return report;
  }

  Rng rng(derive_seed(seed, "bj_norm_sampled"));
  for (int i = 0; i < count; ++i) {
    NVec u = rng.direction(norm.dim());
    NVec v = rng.direction(norm.dim());
    u = scale(u, 1.0 / norm.value(u));
    v = scale(v, 1.0 / norm.value(v));
    ++report.pairs_checked;
    if (line_angle(u, v) < 1e-6) continue;
    // Cheap screen: equivalence needs matching smoothness and, when smooth,
    // parallel gradients; the full probe battery runs only on survivors.
    const bool su = is_smooth(norm, Vec::numeric(u), tol);
    const bool sv = is_smooth(norm, Vec::numeric(v), tol);
    if (su != sv) continue;
    if (su) {
      const NVec gu = norm.subdifferential(Vec::numeric(u), tol).gradient;
      const NVec gv = norm.subdifferential(Vec::numeric(v), tol).gradient;
      if (line_angle(gu, gv) > tol.kernel_angle) continue;
    }
    if (bj_equivalent(norm, Vec::numeric(u), Vec::numeric(v),
                      derive_seed(seed, "bj_norm_pair_" + std::to_string(i)),
                      256, tol)) {
      report.violation_found = true;
      report.violating_pair = {Vec::numeric(u), Vec::numeric(v)};
      return report;
    }
  }
  return report;
}

std::complex<double> cx_a(const NVec& v) { return {v[0], v[1]}; }
std::complex<double> cx_b(const NVec& v) { return {v[2], v[3]}; }

NVec realify(std::complex<double> a, std::complex<double> b) {
  return {a.real(), a.imag(), b.real(), b.imag()};
}

double complex_bj_grid_margin(const Norm& realified, const NVec& x,
                              const NVec& y, const Tolerances& tol) {
  require(realified.dim() == 4, "complex_bj_grid_margin: dim 4 required");
  const std::complex<double> c = cx_a(y), d = cx_b(y);
  auto margin_at = [&](double theta) {
    const std::complex<double> u = std::polar(1.0, theta);
    const NVec yt = realify(u * c, u * d);
    return margin_of(realified.dirderiv(x, yt, tol));
  };
  const int grid = 720;
  double best = margin_at(0.0), best_theta = 0.0;
  for (int i = 1; i < grid; ++i) {
    const double theta = 2.0 * kPi * i / grid;
    const double m = margin_at(theta);
    if (m < best) {
      best = m;
      best_theta = theta;
    }
  }
  double lo = best_theta - 2.0 * kPi / grid;
  double hi = best_theta + 2.0 * kPi / grid;
  for (int it = 0; it < 120 && (hi - lo) > 1e-10; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (margin_at(m1) < margin_at(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(best, margin_at(0.5 * (lo + hi)));
}

std::optional<NVec> find_incoming_witness(const Norm& norm, const NVec& x,
                                          const NVec& w,
                                          const Tolerances& tol) {
  const int n = norm.dim();
  require(static_cast<int>(x.size()) == n && static_cast<int>(w.size()) == n,
          "find_incoming_witness: dimension mismatch");
  const NVec xhat = normalize2(x);
  NVec what = sub(w, scale(xhat, dot(w, xhat)));
  if (norm2(what) < 1e-10) return std::nullopt;
  what = normalize2(what);

  // z(phi) = cos(phi) x^ + sin(phi) w^. s(phi) = D+(z;x) + D-(z;x) moves from
  // positive (z = x^) to negative (z = -x^); at a root the derivative
  // interval straddles zero, i.e. z -> x.
  auto z_of = [&](double phi) {
    return add(scale(xhat, std::cos(phi)), scale(what, std::sin(phi)));
  };
  auto s_of = [&](double phi) {
    const DirDeriv d = norm.dirderiv(z_of(phi), x, tol);
    return d.plus + d.minus;
  };
  double lo = 0.0, hi = kPi;
  double slo = s_of(lo);
  double shi = s_of(hi);
  if (!(slo > 0.0) || !(shi < 0.0)) return std::nullopt;
  for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double sm = s_of(mid);
    if (sm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const NVec z = z_of(0.5 * (lo + hi));
  const DirDeriv d = norm.dirderiv(z, x, tol);
  if (margin_of(d) >= -tol.orth_margin) return z;
  return std::nullopt;
}

}  // namespace bjorth
