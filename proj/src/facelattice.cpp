#include "bjorth/facelattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace bjorth {

namespace {

std::vector<int> sorted_intersection(const std::vector<int>& a,
                                     const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

int affine_dim(const RMat& points) {
  if (points.size() <= 1) return 0;
  RMat diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    diffs.push_back(sub(points[i], points[0]));
  }
  return rank(std::move(diffs));
}

}  // namespace

const Face& FaceLattice::class_face(int class_id) const {
  for (const Face& f : faces) {
    if (class_of[f.id] == class_id) return f;
  }
  throw ContractError("class_face: unknown class id");
}

int FaceLattice::facet_count() const {
  const int top = norm->dim() - 1;
  int count = 0;
  for (const Face& f : faces) count += f.dim == top;
  return count;
}

std::vector<int> FaceLattice::faces_of_dim(int d) const {
  std::vector<int> ids;
  for (const Face& f : faces) {
    if (f.dim == d) ids.push_back(f.id);
  }
  return ids;
}

std::shared_ptr<const FaceLattice> face_lattice(const NormPtr& norm) {
  if (!norm || !norm->is_exact()) {
    throw ContractError("face_lattice: exact polyhedral spec required");
  }
  const int n = norm->dim();
  if (n < 1 || n > 4) {
    throw ContractError("face_lattice: dimension must be between 1 and 4");
  }
  const PolyhedralData& data = *norm->polyhedral();
  const int m = static_cast<int>(data.functionals.size());
  if (m > 64) throw BudgetError("face_lattice: too many dual vertices");

  // Ball vertices: unique solutions of n active functionals at value 1 that
  // the remaining functionals do not exceed.
  std::set<RVec> vertex_set;
  std::vector<int> pick(n);
  const RVec ones(n, Rat(1));
  auto try_subset = [&]() {
    RMat rows;
    for (int i : pick) rows.push_back(data.functionals[i]);
    auto sol = solve_unique(std::move(rows), ones);
    if (!sol) return;
    if (data.value(*sol) == Rat(1)) vertex_set.insert(*sol);
  };
  // Enumerate n-subsets of the m functionals.
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      try_subset();
      return;
    }
    for (int i = start; i <= m - (n - depth); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  if (vertex_set.empty()) {
    throw ContractError("face_lattice: unit ball has no vertices");
  }
  if (vertex_set.size() > 512) {
    throw BudgetError("face_lattice: vertex budget exceeded");
  }

  auto lattice = std::make_shared<FaceLattice>();
  lattice->norm = norm;
  lattice->ball_vertices.assign(vertex_set.begin(), vertex_set.end());
  std::sort(lattice->ball_vertices.begin(), lattice->ball_vertices.end(),
            [](const RVec& a, const RVec& b) { return compare(a, b) < 0; });
  const RMat& verts = lattice->ball_vertices;
  const int nv = static_cast<int>(verts.size());

  auto vertex_index = [&](const RVec& v) {
    auto it = std::lower_bound(
        verts.begin(), verts.end(), v,
        [](const RVec& a, const RVec& b) { return compare(a, b) < 0; });
    if (it == verts.end() || compare(*it, v) != 0) {
      throw ContractError("face_lattice: missing vertex");
    }
    return static_cast<int>(it - verts.begin());
  };

  // Facet vertex lists, then close the family under intersection: every
  // proper face is an intersection of the facets containing it, and its
  // vertex set is the intersection of their vertex sets.
  std::set<std::vector<int>> family;
  for (int i = 0; i < m; ++i) {
    std::vector<int> vi;
    for (int v = 0; v < nv; ++v) {
      if (dot(data.functionals[i], verts[v]) == Rat(1)) vi.push_back(v);
    }
    if (vi.empty()) {
      throw ContractError("face_lattice: functional supports no vertex");
    }
    family.insert(std::move(vi));
  }
  std::vector<std::vector<int>> queue(family.begin(), family.end());
  while (!queue.empty()) {
    std::vector<int> w = std::move(queue.back());
    queue.pop_back();
    for (auto it = family.begin(); it != family.end(); ++it) {
      std::vector<int> meet = sorted_intersection(w, *it);
      if (meet.empty() || family.count(meet)) continue;
      if (family.size() >= 4096) {
        throw BudgetError("face_lattice: face budget exceeded");
      }
      queue.push_back(meet);
      family.insert(std::move(queue.back()));
    }
  }

  // Materialize faces sorted by (dim, vertex list).
  std::vector<Face> faces;
  for (const std::vector<int>& w : family) {
    Face f;
    f.vertex_ids = w;
    RMat points;
    for (int v : w) points.push_back(verts[v]);
    f.dim = affine_dim(points);
    for (int i = 0; i < m; ++i) {
      bool all = true;
      for (int v : w) {
        if (dot(data.functionals[i], verts[v]) != Rat(1)) {
          all = false;
          break;
        }
      }
      if (all) f.active.push_back(i);
    }
    RVec centroid(n, Rat(0));
    for (int v : w) centroid = add(centroid, verts[v]);
    f.representative = scale(centroid, Rat(1) / Rat(static_cast<int>(w.size())));
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertex_ids < b.vertex_ids;
  });
  std::map<std::vector<int>, int> id_of;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    faces[i].id = static_cast<int>(i);
    id_of[faces[i].vertex_ids] = faces[i].id;
  }

  // Immediate subfaces and the antipodal pairing.
  std::vector<int> vertex_antipode(nv);
  for (int v = 0; v < nv; ++v) vertex_antipode[v] = vertex_index(negate(verts[v]));
  for (Face& f : faces) {
    for (const Face& g : faces) {
      if (g.dim != f.dim - 1) continue;
      if (std::includes(f.vertex_ids.begin(), f.vertex_ids.end(),
                        g.vertex_ids.begin(), g.vertex_ids.end())) {
        f.boundary_face_ids.push_back(g.id);
      }
    }
    std::vector<int> anti;
    for (int v : f.vertex_ids) anti.push_back(vertex_antipode[v]);
    std::sort(anti.begin(), anti.end());
    auto it = id_of.find(anti);
    if (it == id_of.end()) {
      throw ContractError("face_lattice: antipodal face missing");
    }
    f.antipodal_id = it->second;
  }

  lattice->faces = std::move(faces);
  lattice->class_of.assign(lattice->faces.size(), -1);
  int next_class = 0;
  for (const Face& f : lattice->faces) {
    if (lattice->class_of[f.id] >= 0) continue;
    lattice->class_of[f.id] = next_class;
    lattice->class_of[f.antipodal_id] = next_class;
    ++next_class;
  }
  lattice->num_classes = next_class;
  return lattice;
}

}  // namespace bjorth
