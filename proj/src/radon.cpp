#include "bjorth/radon.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>

#include "bjorth/arrangement.hpp"

namespace bjorth {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractError(what);
}

NVec rot90(const NVec& v) { return NVec{-v[1], v[0]}; }

double margin_of(const DirDeriv& dd) { return std::min(dd.plus, -dd.minus); }

/// Boundary point of a 2D norm in direction theta.
NVec boundary_point(const Norm& norm, double theta) {
  NVec dir{std::cos(theta), std::sin(theta)};
  return scale(dir, 1.0 / norm.value(dir));
}

// ---------------------------------------------------------------------------
// Day's construction
// ---------------------------------------------------------------------------

/// Norm glued from a seed sphere (quadrants I/III) and the seed's dual
/// sphere (II/IV) around a mutual pair x perp y perp x with normalized
/// supporting functionals f_x(y) = f_y(x) = 0. In glued coordinates (a,b):
///   ab >= 0:  |(a,b)| = |a x + b y|_seed
///   ab <= 0:  |(a,b)| = |b f_x - a f_y|_seed*
/// The two branches agree on the axes because |x| = |y| = 1 and
/// |f_x|* = |f_y|* = 1, and the result is the unit sphere of a Radon plane.
class DayRadonNorm final : public Norm {
 public:
  DayRadonNorm(NormPtr seed, NVec x, NVec y, NVec fx, NVec fy)
      : Norm(NormKind::DayRadon, 2, "day(" + seed->label() + ")"),
        seed_(std::move(seed)),
        x_(std::move(x)),
        y_(std::move(y)),
        fx_(std::move(fx)),
        fy_(std::move(fy)) {
    if (seed_->is_exact()) {
      const auto lattice = face_lattice(seed_);
      for (const RVec& v : lattice->ball_vertices)
        seed_ball_vertices_.push_back(rvec_to_doubles(v));
    } else {
      for (int k = 0; k < kDualGrid; ++k)
        dual_table_.push_back(boundary_point(*seed_, 2.0 * kPi * k / kDualGrid));
    }
  }

  double value(const NVec& v) const override {
    require(static_cast<int>(v.size()) == 2, "day value: dim mismatch");
    const double a = v[0], b = v[1];
    if (a * b >= 0.0) return seed_->value(axpy(scale(x_, a), b, y_));
    return dual_value(axpy(scale(fx_, b), -a, fy_));
  }

  Subdifferential subdifferential(const Vec& vx,
                                  const Tolerances& tol) const override {
    const NVec v = vx.to_num();
    require(!near_zero(v, 0.0), "day subdifferential: zero vector");
    // Reconstruct supporting functionals from the tangential one-sided
    // derivatives: g = (N(v)/|v|_2) vhat + D(v; that) that.
    const NVec vhat = normalize2(v);
    const NVec that = rot90(vhat);
    const DirDeriv dd = dirderiv(v, that, tol);
    const double radial = value(v) / norm2(v);
    Subdifferential sd;
    if (dd.plus - dd.minus <= tol.fd_disagree) {
      sd.kind = Subdifferential::Kind::NumericSingleton;
      sd.gradient = axpy(scale(vhat, radial), 0.5 * (dd.plus + dd.minus), that);
    } else {
      sd.kind = Subdifferential::Kind::NumericSegment;
      sd.seg_a = axpy(scale(vhat, radial), dd.minus, that);
      sd.seg_b = axpy(scale(vhat, radial), dd.plus, that);
    }
    return sd;
  }

  const NormPtr& seed() const { return seed_; }

 private:
  static constexpr int kDualGrid = 256;

  /// max_theta <w, b(theta)> over the seed sphere = |w|_seed*. Exact vertex
  /// maximum for polyhedral seeds; grid plus ternary refinement otherwise.
  double dual_value(const NVec& w) const {
    if (!seed_ball_vertices_.empty()) {
      double best = 0.0;
      for (const NVec& v : seed_ball_vertices_)
        best = std::max(best, std::abs(dot(w, v)));
      return best;
    }
    int best_k = 0;
    double best = -1e300;
    for (int k = 0; k < kDualGrid; ++k) {
      const double g = dot(w, dual_table_[k]);
      if (g > best) {
        best = g;
        best_k = k;
      }
    }
    const double width = 2.0 * kPi / kDualGrid;
    double lo = best_k * width - width;
    double hi = best_k * width + width;
    for (int it = 0; it < 160; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (dot(w, boundary_point(*seed_, m1)) <
          dot(w, boundary_point(*seed_, m2)))
        lo = m1;
      else
        hi = m2;
    }
    return dot(w, boundary_point(*seed_, 0.5 * (lo + hi)));
  }

  NormPtr seed_;
  NVec x_, y_, fx_, fy_;
  NMat seed_ball_vertices_;  // polyhedral seed: exact dual evaluation
  NMat dual_table_;          // numeric seed: coarse support-point grid
};

NVec witness_functional(const NormPtr& norm, const NVec& from, const NVec& to,
                        const Tolerances& tol) {
  const auto make = [&](const NVec& v) {
    return norm->is_exact() ? Vec::exact(rvec_from_doubles(v))
                            : Vec::numeric(v);
  };
  const OrthoVerdict verdict = is_bj_orthogonal(*norm, make(from), make(to), tol);
  require(verdict.orthogonal, "day construction: pair is not orthogonal");
  require(verdict.witness.has_value(),
          "day construction: no supporting functional witness");
  return verdict.witness->to_num();
}

// ---------------------------------------------------------------------------
// Exact 2D symmetry machinery
// ---------------------------------------------------------------------------

/// Relative-interior cone of a face class: a single ray (vertex class) or
/// the open sector spanned by two adjacent ball vertices (edge class).
struct SectorFamily {
  bool is_ray = false;
  RVec v;     // ray generator
  RVec p, q;  // sector endpoints
};

SectorFamily sector_of(const FaceLattice& lattice, int class_id) {
  const Face& face = lattice.class_face(class_id);
  SectorFamily s;
  if (face.dim == 0) {
    s.is_ray = true;
    s.v = lattice.ball_vertices[face.vertex_ids[0]];
  } else {
    s.p = lattice.ball_vertices[face.vertex_ids[0]];
    s.q = lattice.ball_vertices[face.vertex_ids[1]];
  }
  return s;
}

/// Finitely many exact points meeting every component the kernels of rows
/// cut the family's relative interior into: the interior kernel crossings
/// themselves plus one blend strictly inside each gap. Deciding a straddle
/// (closed) or its complement (open) over the relint reduces to testing
/// these candidates.
std::vector<RVec> sector_candidates(const SectorFamily& s, const RMat& rows) {
  if (s.is_ray) return {s.v};
  struct Crossing {
    Rat t;  // position parameter in (0,1)
    RVec y;
  };
  std::vector<Crossing> crossings;
  for (const RVec& f : rows) {
    const Rat sp = dot(f, s.p);
    const Rat sq = dot(f, s.q);
    if (sp * sq < 0) {
      RVec y = sp < 0 ? add(scale(s.p, sq), scale(s.q, -sp))
                      : add(scale(s.p, -sq), scale(s.q, sp));
      const Rat alpha = sp < 0 ? sq : -sq;
      const Rat beta = sp < 0 ? -sp : sp;
      crossings.push_back(Crossing{beta / (alpha + beta), std::move(y)});
    }
  }
  std::sort(crossings.begin(), crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
  std::vector<RVec> rays{s.p};
  for (auto& c : crossings) rays.push_back(std::move(c.y));
  rays.push_back(s.q);
  std::vector<RVec> out;
  for (std::size_t i = 0; i + 1 < rays.size(); ++i)
    out.push_back(add(rays[i], rays[i + 1]));
  for (std::size_t i = 1; i + 1 < rays.size(); ++i)
    out.push_back(std::move(rays[i]));
  return out;
}

NVec unit_numeric(const Norm& norm, const RVec& x) {
  NVec v = rvec_to_doubles(x);
  return scale(v, 1.0 / norm.value(v));
}

// ---------------------------------------------------------------------------
// Numeric flat-segment scan
// ---------------------------------------------------------------------------

struct FlatRun {
  NVec a, b;          // refined endpoints
  double theta_a, theta_b;
  NVec direction;     // segment direction, normalized
};

/// Locates the flat/curve junction between theta inside the run (on the
/// segment's line) and theta outside by bisecting the line-distance
/// predicate.
double refine_junction(const Norm& norm, const NVec& n, double c,
                       double theta_on, double theta_off) {
  const auto on_line = [&](double theta) {
    return std::abs(dot(n, boundary_point(norm, theta)) - c) <=
           1e-10 * std::max(1.0, std::abs(c));
  };
  double lo = theta_on, hi = theta_off;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (on_line(mid) ? lo : hi) = mid;
  }
  return lo;
}

/// Tangent-continuity smoothness of a junction: the chord just outside the
/// segment must align with the segment direction. A corner shows the full
/// exterior angle; a smooth join deviates only by curvature * delta.
bool junction_smooth(const Norm& norm, const NVec& seg_dir, double theta,
                     double outward) {
  const double d1 = 1e-4, d2 = 2e-4;
  const NVec a = boundary_point(norm, theta + outward * d1);
  const NVec b = boundary_point(norm, theta + outward * d2);
  return line_angle(sub(b, a), seg_dir) <= 1e-2;
}

}  // namespace

// ---------------------------------------------------------------------------
// Boundary curves
// ---------------------------------------------------------------------------

NVec BoundaryCurve2D::point(double theta) const {
  return boundary_point(*norm, theta);
}

std::string BoundaryCurve2D::to_csv(int samples) const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "theta,x,y\n";
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * kPi * i / samples;
    const NVec p = point(theta);
    os << theta << "," << p[0] << "," << p[1] << "\n";
  }
  return os.str();
}

BoundaryCurve2D boundary_curve(const NormPtr& norm2d) {
  require(norm2d != nullptr && norm2d->dim() == 2,
          "boundary_curve requires a 2D spec");
  BoundaryCurve2D curve;
  curve.norm = norm2d;
  if (!norm2d->is_exact()) {
    BoundaryArc arc;
    arc.theta0 = 0.0;
    arc.theta1 = 2.0 * kPi;
    curve.arcs.push_back(std::move(arc));
    return curve;
  }
  const auto lattice = face_lattice(norm2d);
  for (int id : lattice->faces_of_dim(1)) {
    const Face& face = lattice->faces[id];
    BoundaryArc arc;
    arc.is_segment = true;
    arc.a = rvec_to_doubles(lattice->ball_vertices[face.vertex_ids[0]]);
    arc.b = rvec_to_doubles(lattice->ball_vertices[face.vertex_ids[1]]);
    arc.theta0 = std::atan2(arc.a[1], arc.a[0]);
    arc.theta1 = std::atan2(arc.b[1], arc.b[0]);
    double diff = arc.theta1 - arc.theta0;
    if (diff < -kPi) diff += 2.0 * kPi;
    if (diff > kPi) diff -= 2.0 * kPi;
    if (diff < 0) {
      std::swap(arc.a, arc.b);
      arc.theta0 = std::atan2(arc.a[1], arc.a[0]);
      diff = -diff;
    }
    // Unwrapped past the atan2 cut for the edge that crosses it.
    arc.theta1 = arc.theta0 + diff;
    curve.arcs.push_back(std::move(arc));
  }
  std::sort(curve.arcs.begin(), curve.arcs.end(),
            [](const BoundaryArc& a, const BoundaryArc& b) {
              return a.theta0 < b.theta0;
            });
  return curve;
}

// ---------------------------------------------------------------------------
// Mutual pairs
// ---------------------------------------------------------------------------

MutualPair find_mutual_pair_2d(const NormPtr& norm2d, const Tolerances& tol) {
  require(norm2d != nullptr && norm2d->dim() == 2,
          "find_mutual_pair_2d requires a 2D spec");

  if (norm2d->is_exact()) {
    const auto lattice = face_lattice(norm2d);
    for (int u = 0; u < lattice->num_classes; ++u) {
      for (int w = 0; w < lattice->num_classes; ++w) {
        if (u == w) continue;
        const Vec ru = Vec::exact(lattice->class_face(u).representative);
        const Vec rw = Vec::exact(lattice->class_face(w).representative);
        const OrthoVerdict fwd = is_bj_orthogonal(*norm2d, ru, rw, tol);
        if (!fwd.orthogonal) continue;
        const OrthoVerdict rev = is_bj_orthogonal(*norm2d, rw, ru, tol);
        if (!rev.orthogonal) continue;
        MutualPair pair;
        pair.x = ru.to_num();
        pair.y = rw.to_num();
        pair.forward_margin = fwd.margin.value_or(0.0);
        pair.reverse_margin = rev.margin.value_or(0.0);
        return pair;
      }
    }
    // No representative pair is mutual (possible for skewed polytopes);
    // fall through to the numeric sweep.
  }

  // Sweep x(theta); the partner y(theta) along rot90 of the gradient is
  // orthogonal by construction, so only the reverse margin varies.
  const int grid = 720;
  const auto reverse_margin = [&](double theta) -> std::optional<double> {
    const NVec x = boundary_point(*norm2d, theta);
    const auto sd = norm2d->subdifferential(Vec::numeric(x), tol);
    if (!sd.singleton()) return std::nullopt;
    NVec ydir = rot90(sd.gradient);
    const NVec y = scale(ydir, 1.0 / norm2d->value(ydir));
    return robust_orth_margin(*norm2d, y, x, tol);
  };
  const auto pair_at = [&](double theta) {
    const NVec x = boundary_point(*norm2d, theta);
    const auto sd = norm2d->subdifferential(Vec::numeric(x), tol);
    NVec ydir = rot90(sd.gradient);
    const NVec y = scale(ydir, 1.0 / norm2d->value(ydir));
    MutualPair pair;
    pair.x = x;
    pair.y = y;
    pair.forward_margin = robust_orth_margin(*norm2d, x, y, tol);
    pair.reverse_margin = robust_orth_margin(*norm2d, y, x, tol);
    return pair;
  };

  std::vector<std::pair<double, double>> margins;  // (theta, reverse margin)
  for (int i = 0; i < grid; ++i) {
    const double theta = kPi * i / grid;
    const auto m = reverse_margin(theta);
    if (!m) continue;
    if (*m >= -tol.orth_margin) return pair_at(theta);
    margins.emplace_back(theta, *m);
  }
  for (std::size_t i = 0; i + 1 < margins.size(); ++i) {
    double lo = margins[i].first, hi = margins[i + 1].first;
    if (margins[i].second >= margins[i + 1].second) continue;
    // margin increases across the gap; bisect toward the zero crossing
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto m = reverse_margin(mid);
      if (m && *m >= -tol.orth_margin) return pair_at(mid);
      if (m && *m < 0)
        lo = mid;
      else
        hi = mid;
    }
  }
  throw BudgetError("find_mutual_pair_2d: sweep found no mutual pair");
}

BoundaryCurve2D day_construction(const NormPtr& seed2d,
                                 std::optional<MutualPair> pinned,
                                 const Tolerances& tol) {
  require(seed2d != nullptr && seed2d->dim() == 2,
          "day_construction requires a 2D seed");
  require(seed2d->kind() != NormKind::ComplexRadon,
          "day_construction requires a real seed");

  MutualPair pair = pinned ? *pinned : find_mutual_pair_2d(seed2d, tol);
  NVec x = scale(pair.x, 1.0 / seed2d->value(pair.x));
  NVec y = scale(pair.y, 1.0 / seed2d->value(pair.y));

  const NVec fx = witness_functional(seed2d, x, y, tol);
  const NVec fy = witness_functional(seed2d, y, x, tol);
  require(std::abs(dot(fx, y)) <= 1e-7 && std::abs(dot(fy, x)) <= 1e-7,
          "day construction: witnesses do not annihilate the pair");

  BoundaryCurve2D curve;
  curve.norm = std::make_shared<DayRadonNorm>(seed2d, std::move(x),
                                              std::move(y), fx, fy);
  const char* sources[4] = {"seed", "dual", "seed", "dual"};
  for (int qd = 0; qd < 4; ++qd) {
    BoundaryArc arc;
    arc.theta0 = qd * kPi / 2;
    arc.theta1 = (qd + 1) * kPi / 2;
    arc.quadrant = qd + 1;
    arc.source = sources[qd];
    curve.arcs.push_back(std::move(arc));
  }
  return curve;
}

NormPtr make_day_radon(NormPtr seed2d) {
  return day_construction(seed2d).norm;
}

// ---------------------------------------------------------------------------
// Radon symmetry
// ---------------------------------------------------------------------------

RadonSymmetryReport verify_radon_symmetry(const NormPtr& norm2d, int pairs,
                                          std::uint64_t seed,
                                          double margin_tol,
                                          const Tolerances& tol) {
  require(norm2d != nullptr && norm2d->dim() == 2,
          "verify_radon_symmetry requires a 2D spec");
  RadonSymmetryReport report;
  report.symmetric = true;

  if (norm2d->is_exact()) {
    report.exact = true;
    const auto lattice = face_lattice(norm2d);
    const PolyhedralData& data = *norm2d->polyhedral();
    const auto active_rows = [&](int class_id) {
      RMat rows;
      for (int i : lattice->class_face(class_id).active)
        rows.push_back(data.functionals[i]);
      return rows;
    };
    // Edges u -> w live between points of the open face cones, and x-perp
    // depends on x only through its class. A violation therefore splits:
    // some y in w's cone straddling A_u, and some x in u's cone missed by
    // A_w. Both are decided over the finite candidate set of each sector.
    for (int u = 0; u < lattice->num_classes && report.symmetric; ++u) {
      const RMat au = active_rows(u);
      const SectorFamily su = sector_of(*lattice, u);
      for (int w = 0; w < lattice->num_classes && report.symmetric; ++w) {
        const RMat aw = active_rows(w);
        const SectorFamily sw = sector_of(*lattice, w);
        ++report.pairs_checked;

        std::optional<RVec> y_wit;
        for (const RVec& c : sector_candidates(sw, au)) {
          if (straddle_holds(au, c)) {
            y_wit = c;
            break;
          }
        }
        if (!y_wit) continue;
        std::optional<RVec> x_wit;
        for (const RVec& c : sector_candidates(su, aw)) {
          if (!straddle_holds(aw, c)) {
            x_wit = c;
            break;
          }
        }
        if (!x_wit) continue;

        report.symmetric = false;
        const NVec xv = unit_numeric(*norm2d, *x_wit);
        const NVec yv = unit_numeric(*norm2d, *y_wit);
        report.counterexample = std::make_pair(xv, yv);
        report.max_violation =
            std::max(0.0, -robust_orth_margin(*norm2d, yv, xv, tol));
      }
    }

    Rng rng(derive_seed(seed, "radon-symmetry-spot"));
    for (int i = 0; i < pairs; ++i) {
      const NVec xd = rng.direction(2);
      const NVec yd = rng.direction(2);
      const RVec x{Rat(xd[0]), Rat(xd[1])};
      const RVec y{Rat(yd[0]), Rat(yd[1])};
      ++report.pairs_checked;
      RMat ax, ay;
      for (int k : data.active_set(x)) ax.push_back(data.functionals[k]);
      for (int k : data.active_set(y)) ay.push_back(data.functionals[k]);
      if (straddle_holds(ax, y) && !straddle_holds(ay, x)) {
        report.symmetric = false;
        const NVec xv = unit_numeric(*norm2d, x);
        const NVec yv = unit_numeric(*norm2d, y);
        if (!report.counterexample)
          report.counterexample = std::make_pair(xv, yv);
        report.max_violation =
            std::max(report.max_violation,
                     -robust_orth_margin(*norm2d, yv, xv, tol));
      }
    }
    return report;
  }

  Rng rng(derive_seed(seed, "radon-symmetry"));
  for (int i = 0; i < pairs; ++i) {
    NVec dir = rng.direction(2);
    NVec x = scale(dir, 1.0 / norm2d->value(dir));
    const auto sd = norm2d->subdifferential(Vec::numeric(x), tol);
    if (!sd.singleton()) continue;
    NVec ydir = rot90(sd.gradient);
    NVec y = scale(ydir, 1.0 / norm2d->value(ydir));
    ++report.pairs_checked;
    const double reverse = robust_orth_margin(*norm2d, y, x, tol);
    if (reverse < -margin_tol) {
      report.symmetric = false;
      report.max_violation = std::max(report.max_violation, -reverse);
      if (!report.counterexample) report.counterexample = std::make_pair(x, y);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Hilbert-isomorphism flat conditions
// ---------------------------------------------------------------------------

HilbertConditionReport check_gamma0_hilbert_conditions_real(
    const NormPtr& norm2d, int boundary_samples, const Tolerances& tol) {
  require(norm2d != nullptr && norm2d->dim() == 2,
          "hilbert conditions require a 2D spec");
  HilbertConditionReport report;
  report.all_flat_endpoints_smooth = true;

  if (norm2d->is_exact()) {
    const auto lattice = face_lattice(norm2d);
    for (int id : lattice->faces_of_dim(1)) {
      const Face& face = lattice->faces[id];
      ++report.flat_segments;
      const NVec a = rvec_to_doubles(lattice->ball_vertices[face.vertex_ids[0]]);
      const NVec b = rvec_to_doubles(lattice->ball_vertices[face.vertex_ids[1]]);
      report.segments.emplace_back(a, b);
      for (int vid : face.vertex_ids) {
        // A polytope vertex in 2D carries >= 2 active functionals.
        std::vector<int> active;
        for (const Face& vf : lattice->faces) {
          if (vf.dim == 0 && vf.vertex_ids[0] == vid) {
            active = vf.active;
            break;
          }
        }
        if (active.size() != 1) report.all_flat_endpoints_smooth = false;
      }
    }
    return report;
  }

  const int n = boundary_samples;
  NMat pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i)
    pts.push_back(boundary_point(*norm2d, 2.0 * kPi * i / n));
  const auto at = [&](int i) -> const NVec& { return pts[((i % n) + n) % n]; };
  const auto theta_of = [&](int i) { return 2.0 * kPi * i / n; };

  const auto mid_flat = [&](int i) {
    const NVec m = scale(add(at(i), at(i + 1)), 0.5);
    return norm2d->value(m) >= 1.0 - tol.flat_collinear;
  };
  std::vector<bool> flat(n);
  for (int i = 0; i < n; ++i) {
    const NVec d1 = sub(at(i + 1), at(i));
    const NVec d2 = sub(at(i + 2), at(i + 1));
    const double cross = d1[0] * d2[1] - d1[1] * d2[0];
    flat[i] = std::abs(cross) <= tol.flat_collinear && mid_flat(i) &&
              mid_flat(i + 1);
  }

  int start = -1;
  for (int i = 0; i < n; ++i) {
    if (!flat[i]) {
      start = i;
      break;
    }
  }
  if (start < 0)
    throw ContractError("boundary reads entirely flat; not a norm sphere");

  std::vector<FlatRun> runs;
  int i = start;
  while (i < start + n) {
    if (!flat[i % n]) {
      ++i;
      continue;
    }
    int j = i;
    while (j < start + n && flat[j % n]) ++j;
    // run of flat triples [i, j): samples i .. j+1 lie on one line
    FlatRun run;
    const NVec first = at(i);
    const NVec last = at(j + 1);
    run.direction = normalize2(sub(last, first));
    const NVec normal = rot90(run.direction);
    const double c = dot(normal, first);
    run.theta_a = refine_junction(*norm2d, normal, c, theta_of(i), theta_of(i - 1));
    run.theta_b = refine_junction(*norm2d, normal, c, theta_of(j + 1), theta_of(j + 2));
    run.a = boundary_point(*norm2d, run.theta_a);
    run.b = boundary_point(*norm2d, run.theta_b);
    runs.push_back(std::move(run));
    i = j;
  }

  for (const FlatRun& run : runs) {
    ++report.flat_segments;
    report.segments.emplace_back(run.a, run.b);
    if (!junction_smooth(*norm2d, run.direction, run.theta_a, -1.0) ||
        !junction_smooth(*norm2d, run.direction, run.theta_b, +1.0))
      report.all_flat_endpoints_smooth = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Complex Radon criterion
// ---------------------------------------------------------------------------

bool complex_radon_orthogonal(std::complex<double> a, std::complex<double> b,
                              std::complex<double> c, std::complex<double> d,
                              const Tolerances& tol) {
  require(std::abs(a) > 0 || std::abs(b) > 0,
          "complex_radon_orthogonal: zero left vector");
  static const NormPtr real_plane = make_absolute_radon();
  const NVec x{std::abs(a), -std::abs(b)};
  const NVec y{std::abs(c), std::abs(d)};
  const DirDeriv dd = real_plane->dirderiv(x, y, tol);
  if (margin_of(dd) < -tol.orth_margin) return false;

  const std::complex<double> u = -d * a;
  const std::complex<double> w = c * b;
  if (std::abs(u) <= tol.functional_id || std::abs(w) <= tol.functional_id)
    return true;
  return std::abs(std::arg(u * std::conj(w))) <= 1e-9;
}

// ---------------------------------------------------------------------------
// Direct sums
// ---------------------------------------------------------------------------

DirectSumCheck verify_direct_sum_lemma(const NormPtr& sum, int samples,
                                       std::uint64_t seed,
                                       const Tolerances& tol) {
  require(sum != nullptr, "verify_direct_sum_lemma: null norm");
  const auto view = direct_sum_view(*sum);
  require(view.has_value(), "verify_direct_sum_lemma requires a direct sum");
  const int nx = view->left->dim();
  const int ny = view->right->dim();

  Rng rng(derive_seed(seed, "direct-sum"));
  DirectSumCheck check;
  const double slack = 1e-7;

  const auto embed = [&](const NVec& left, const NVec& right) {
    NVec z = left;
    z.insert(z.end(), right.begin(), right.end());
    return z;
  };

  for (int i = 0; i < samples; ++i) {
    NVec x = scale(rng.direction(nx), rng.uniform(0.5, 2.0));
    NVec z = scale(rng.direction(nx), rng.uniform(0.5, 2.0));
    NVec y = (i % 8 == 0) ? NVec(ny, 0.0)
                          : scale(rng.direction(ny), rng.uniform(0.5, 2.0));
    const NVec zeros(ny, 0.0);
    const NVec x0 = embed(x, zeros);
    const NVec zy = embed(z, y);

    // D+-((x,0);(z,y)) = D+-(x;z): the zero block contributes nothing.
    const DirDeriv big = sum->dirderiv(x0, zy, tol);
    const DirDeriv small = view->left->dirderiv(x, z, tol);
    ++check.checks;
    if (std::abs(big.plus - small.plus) > slack ||
        std::abs(big.minus - small.minus) > slack)
      ++check.failures;

    // Reverse: derivatives at (z,y) along (x,0) are the X derivatives
    // scaled by |z|_X / |(z,y)|_Z, so the straddle verdicts coincide.
    const double zn = view->left->value(z);
    if (zn > 1e-9) {
      const double ratio = zn / sum->value(zy);
      const DirDeriv rev_big = sum->dirderiv(zy, x0, tol);
      const DirDeriv rev_small = view->left->dirderiv(z, x, tol);
      ++check.checks;
      if (std::abs(rev_big.plus - ratio * rev_small.plus) > slack ||
          std::abs(rev_big.minus - ratio * rev_small.minus) > slack)
        ++check.failures;
    }
  }
  check.passed = check.failures == 0;
  return check;
}

// ---------------------------------------------------------------------------
// The fixed nonsmooth counterexample space
// ---------------------------------------------------------------------------

NonsmoothCounterexampleReport nonsmooth_counterexample_check(
    std::uint64_t seed, const Tolerances& tol) {
  NonsmoothCounterexampleReport report;
  const NormPtr z = make_direct_sum_l2(make_absolute_radon(), make_lp(2, 1));
  const double inv_e = std::exp(-1.0);

  const NVec x_tilde{1.0, 0.0, 0.0};
  report.x_tilde_nonsmooth = !is_smooth(*z, Vec::numeric(x_tilde), tol);

  // Flat-top family (xi, 1, 0), |xi| <= 1/e, endpoints included.
  const std::vector<double> xis{-inv_e, -0.5 * inv_e, 0.0, 0.5 * inv_e, inv_e};
  report.flat_family_bj_set = true;
  for (std::size_t i = 0; i < xis.size(); ++i) {
    for (std::size_t j = i + 1; j < xis.size(); ++j) {
      const NVec zi{xis[i], 1.0, 0.0};
      const NVec zj{xis[j], 1.0, 0.0};
      if (!bj_equivalent(*z, Vec::numeric(zi), Vec::numeric(zj),
                         derive_seed(seed, "flat-family"), 256, tol)) {
        report.flat_family_bj_set = false;
      }
    }
  }

  // x~-perp ^ x1-perp ^ z~-perp should contain no direction: membership
  // margins cannot all clear -1e-6 on the unit sphere.
  const NVec x1{0.0, 0.0, 1.0};
  const NVec z_flat{0.0, 1.0, 0.0};
  const NVec z_edge{inv_e, 1.0, 0.0};
  const auto member_margin = [&](const NVec& from, const NVec& v) {
    return margin_of(z->dirderiv(from, v, tol));
  };

  Rng rng(derive_seed(seed, "final-intersection"));
  std::vector<NVec> probes{
      {1, 0, 0},          {0, 1, 0},          {0, 0, 1},
      {1, 1, 0},          {1, 0, 1},          {0, 1, 1},
      {1, 1, 1},          {-1, 1, 0},         {inv_e, 1, 0},
      {-inv_e, 1, 0},     {0.1, 1, 0.1},      {1, -1, 1},
  };
  for (int i = 0; i < 500; ++i) probes.push_back(rng.direction(3));

  report.final_intersection_trivial = true;
  for (NVec v : probes) {
    const double nv = z->value(v);
    if (nv <= 1e-9) continue;
    v = scale(v, 1.0 / nv);
    if (member_margin(x_tilde, v) >= -1e-6 && member_margin(x1, v) >= -1e-6 &&
        member_margin(z_flat, v) >= -1e-6 && member_margin(z_edge, v) >= -1e-6) {
      report.final_intersection_trivial = false;
      break;
    }
  }

  report.passed = report.x_tilde_nonsmooth && report.flat_family_bj_set &&
                  report.final_intersection_trivial;
  return report;
}

}  // namespace bjorth
