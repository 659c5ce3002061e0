#include <doctest.h>

#include <algorithm>
#include <set>

#include "bjorth/facelattice.hpp"
#include "bjorth/norms.hpp"

using namespace bjorth;

namespace {

RVec rv(int a, int b) { return RVec{Rat(a), Rat(b)}; }

bool has_vertex(const RMat& vertices, const RVec& v) {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

}  // namespace

TEST_CASE("square lattice (linf2)") {
  const auto lat = face_lattice(make_lp_inf(2));
  REQUIRE(lat);
  CHECK(lat->ball_vertices.size() == 4);
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      CHECK(has_vertex(lat->ball_vertices, rv(a, b)));
    }
  }
  CHECK(lat->faces.size() == 8);  // 4 vertices + 4 edges
  CHECK(lat->num_classes == 4);
  CHECK(lat->facet_count() == 4);
  CHECK(lat->faces_of_dim(0).size() == 4);
  CHECK(lat->faces_of_dim(1).size() == 4);

  for (const Face& f : lat->faces) {
    // Antipodal involution pairs distinct faces of the same dimension.
    const Face& anti = lat->faces[f.antipodal_id];
    CHECK(anti.dim == f.dim);
    CHECK(anti.antipodal_id == f.id);
    CHECK(f.antipodal_id != f.id);
    CHECK(lat->class_of[f.id] == lat->class_of[f.antipodal_id]);
    // Representatives are relative-interior points of norm 1.
    CHECK(lat->norm->polyhedral()->value(f.representative) == Rat(1));
    if (f.dim == 1) {
      CHECK(f.vertex_ids.size() == 2);
      CHECK(f.boundary_face_ids.size() == 2);
    }
  }

  // Edge representatives are the centroids: the right edge gives (1, 0).
  bool found_right_edge = false;
  for (const Face& f : lat->faces) {
    if (f.dim == 1 && f.representative == rv(1, 0)) found_right_edge = true;
  }
  CHECK(found_right_edge);
}

TEST_CASE("hexagonal lattice") {
  const auto norm = make_hexagonal();
  const auto lat = face_lattice(norm);
  CHECK(lat->faces.size() == 12);
  CHECK(lat->num_classes == 6);

  RMat sorted = lat->ball_vertices;
  std::sort(sorted.begin(), sorted.end(),
            [](const RVec& a, const RVec& b) { return compare(a, b) < 0; });
  const RMat expected{rv(-1, -1), rv(-1, 0), rv(0, -1),
                      rv(0, 1),   rv(1, 0),  rv(1, 1)};
  CHECK(sorted == expected);

  // The corner (1,1) is supported exactly by the functionals (1,0) and
  // (0,1); (1,-1) does not attain 1 there.
  for (const Face& f : lat->faces) {
    if (f.dim != 0 || f.representative != rv(1, 1)) continue;
    RMat active;
    for (int i : f.active) active.push_back(norm->polyhedral()->functionals[i]);
    std::sort(active.begin(), active.end(),
              [](const RVec& a, const RVec& b) { return compare(a, b) < 0; });
    CHECK(active == RMat{rv(0, 1), rv(1, 0)});
  }
}

TEST_CASE("octahedron and cube lattices") {
  const auto l13 = face_lattice(make_lp(1.0, 3));
  CHECK(l13->ball_vertices.size() == 6);
  CHECK(l13->faces.size() == 26);  // 6 + 12 + 8
  CHECK(l13->num_classes == 13);
  CHECK(l13->facet_count() == 8);

  const auto linf3 = face_lattice(make_lp_inf(3));
  CHECK(linf3->ball_vertices.size() == 8);
  CHECK(linf3->faces.size() == 26);  // 8 + 12 + 6
  CHECK(linf3->num_classes == 13);
  CHECK(linf3->facet_count() == 6);
  CHECK(linf3->faces_of_dim(2).size() == 6);

  // Every facet of the cube has 4 vertices and 4 boundary edges.
  for (int id : linf3->faces_of_dim(2)) {
    CHECK(linf3->faces[id].vertex_ids.size() == 4);
    CHECK(linf3->faces[id].boundary_face_ids.size() == 4);
  }
}

TEST_CASE("4-cube lattice") {
  const auto lat = face_lattice(make_lp_inf(4));
  CHECK(lat->ball_vertices.size() == 16);
  CHECK(lat->faces.size() == 80);  // 16 + 32 + 24 + 8
  CHECK(lat->num_classes == 40);
  CHECK(lat->facet_count() == 8);
}

TEST_CASE("ball vertices are extreme points") {
  for (const auto& norm : {make_lp_inf(2), make_hexagonal(), make_lp(1.0, 3)}) {
    const auto lat = face_lattice(norm);
    for (std::size_t i = 0; i < lat->ball_vertices.size(); ++i) {
      RMat others;
      for (std::size_t j = 0; j < lat->ball_vertices.size(); ++j) {
        if (j != i) others.push_back(lat->ball_vertices[j]);
      }
      CHECK_FALSE(in_convex_hull(lat->ball_vertices[i], others));
    }
  }
}

TEST_CASE("class representatives cover every class once") {
  const auto lat = face_lattice(make_hexagonal());
  std::set<int> seen;
  for (int c = 0; c < lat->num_classes; ++c) {
    const Face& f = lat->class_face(c);
    CHECK(lat->class_of[f.id] == c);
    seen.insert(c);
  }
  CHECK(static_cast<int>(seen.size()) == lat->num_classes);
}

TEST_CASE("lattice contracts") {
  CHECK_THROWS_AS(face_lattice(make_lp(2, 2)), ContractError);
}
