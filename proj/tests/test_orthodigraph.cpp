#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "bjorth/norms.hpp"
#include "bjorth/numeric.hpp"
#include "bjorth/orthodigraph.hpp"

using namespace bjorth;

namespace {

OrthoDigraph exact_graph(const NormPtr& norm, bool gamma0 = false) {
  return build_orthodigraph(norm, OrthoDigraph::Mode::ExactQuotient, gamma0);
}

std::vector<int> sorted_out_degrees(const OrthoDigraph& g) {
  std::vector<int> d;
  for (const auto& v : g.vertices) d.push_back(g.out_degree(v.id));
  std::sort(d.begin(), d.end());
  return d;
}

int edge_count(const OrthoDigraph& g) {
  int total = 0;
  for (const auto& row : g.adj) {
    total += static_cast<int>(std::count(row.begin(), row.end(), true));
  }
  return total;
}

}  // namespace

TEST_CASE("square quotient digraph") {
  const auto g = exact_graph(make_lp_inf(2));
  REQUIRE(g.vertices.size() == 4);
  CHECK(sorted_out_degrees(g) == std::vector<int>{1, 1, 3, 3});

  // Smooth classes are the edge classes; each points only at the other edge
  // class, while corner classes reach everything but themselves.
  for (const auto& v : g.vertices) {
    if (v.smooth) {
      CHECK(g.out_degree(v.id) == 1);
      const auto targets = [&] {
        for (int w = 0; w < 4; ++w) {
          if (g.edge(v.id, w)) return w;
        }
        return -1;
      }();
      CHECK(g.vertices[targets].smooth);
      CHECK(targets != v.id);
    } else {
      CHECK(g.out_degree(v.id) == 3);
      CHECK_FALSE(g.edge(v.id, v.id));
    }
  }
}

TEST_CASE("gamma0 adds the zero vertex and the only loop") {
  const auto g = exact_graph(make_lp_inf(2), true);
  REQUIRE(g.vertices.size() == 5);
  CHECK(edge_count(g) == 17);  // 8 quotient edges + 5 out of 0 + 4 into 0

  int zero_id = -1;
  for (const auto& v : g.vertices) {
    if (v.name == "0") zero_id = v.id;
  }
  REQUIRE(zero_id >= 0);
  CHECK(g.out_degree(zero_id) == 5);
  for (const auto& v : g.vertices) {
    CHECK(g.edge(v.id, zero_id));
    CHECK(g.edge(v.id, v.id) == (v.id == zero_id));
  }
}

TEST_CASE("digraph dimension") {
  CHECK(digraph_dimension(exact_graph(make_lp_inf(2))).dimension == 2);
  CHECK(digraph_dimension(exact_graph(make_hexagonal())).dimension == 2);
  CHECK(digraph_dimension(exact_graph(make_lp(1.0, 3))).dimension == 3);
  CHECK(digraph_dimension(exact_graph(make_lp_inf(4))).dimension == 4);

  const auto r = digraph_dimension(exact_graph(make_lp_inf(3)));
  CHECK(r.dimension == 3);
  CHECK(static_cast<int>(r.witness.size()) == 3);
  CHECK_FALSE(r.sampled);
}

TEST_CASE("2d smooth classification matches the pointwise test") {
  const auto g = exact_graph(make_hexagonal());
  const auto cls = classify_smooth_vertices_2d(g);
  CHECK(cls.smooth_ids.size() == 3);
  CHECK(cls.nonsmooth_ids.size() == 3);
  for (int id : cls.smooth_ids) {
    CHECK(is_smooth(*g.norm, Vec::exact(g.vertices[id].exact_rep)));
  }
  for (int id : cls.nonsmooth_ids) {
    CHECK_FALSE(is_smooth(*g.norm, Vec::exact(g.vertices[id].exact_rep)));
  }
}

TEST_CASE("nd smooth classification") {
  const struct {
    NormPtr norm;
    int smooth;
  } cases[] = {{make_lp_inf(3), 3}, {make_lp(1.0, 3), 4}, {make_lp_inf(4), 4}};
  for (const auto& c : cases) {
    CAPTURE(c.norm->label());
    const auto g = exact_graph(c.norm);
    const auto cls = classify_smooth_vertices_nd(g);
    CHECK(static_cast<int>(cls.smooth_ids.size()) == c.smooth);
    for (int id : cls.smooth_ids) {
      CHECK(is_smooth(*g.norm, Vec::exact(g.vertices[id].exact_rep)));
    }
    for (int id : cls.nonsmooth_ids) {
      CHECK_FALSE(is_smooth(*g.norm, Vec::exact(g.vertices[id].exact_rep)));
    }
  }
  CHECK_THROWS_AS(classify_smooth_vertices_nd(exact_graph(make_lp_inf(2))),
                  ContractError);
}

TEST_CASE("sampled graphs: euclidean adjacency and determinism") {
  const auto lp22 = make_lp(2, 2);
  const auto g =
      build_orthodigraph(lp22, OrthoDigraph::Mode::Sampled, false, 100, 42);
  CHECK(static_cast<int>(g.vertices.size()) >= 50);  // antipodal merging
  for (const auto& v : g.vertices) CHECK(v.smooth);
  for (const auto& u : g.vertices) {
    for (const auto& v : g.vertices) {
      if (u.id == v.id) continue;
      const double cosine =
          std::abs(dot(normalize2(u.num_rep), normalize2(v.num_rep)));
      if (cosine > 1e-9 && cosine < 1e-7) continue;
      CHECK(g.edge(u.id, v.id) == (cosine <= 1e-9));
    }
  }

  const auto g2 =
      build_orthodigraph(lp22, OrthoDigraph::Mode::Sampled, false, 100, 42);
  CHECK(graph_fingerprint(g) == graph_fingerprint(g2));
  CHECK(export_dot(g) == export_dot(g2));

  const auto sampled_dim = digraph_dimension(g);
  CHECK(sampled_dim.dimension == 2);
  CHECK(sampled_dim.sampled);
}

TEST_CASE("span recovery in euclidean 3-space") {
  const auto lp23 = make_lp(2, 3);
  const auto r = span_from_graph(lp23, {NVec{1, 0, 0}});
  REQUIRE(r.basis.size() == 1);
  const NVec b = normalize2(r.basis[0]);
  CHECK(std::abs(std::abs(b[0]) - 1.0) <= 1e-7);
  CHECK(std::abs(b[1]) <= 1e-7);
  CHECK(std::abs(b[2]) <= 1e-7);
  CHECK(r.omega_minimum == 2);

  const auto plane = span_from_graph(lp23, {NVec{1, 0, 0}, NVec{0, 1, 0}});
  CHECK(plane.basis.size() == 2);
}

TEST_CASE("sup norm recognition") {
  const auto yes = recognize_sup_norm(exact_graph(make_lp_inf(3)));
  CHECK(yes.is_sup_norm);
  CHECK(yes.smooth_neighborhood_count == 3);
  CHECK(yes.dimension == 3);

  const auto oct = recognize_sup_norm(exact_graph(make_lp(1.0, 3)));
  CHECK_FALSE(oct.is_sup_norm);
  CHECK(oct.smooth_neighborhood_count == 4);

  const auto hex = recognize_sup_norm(exact_graph(make_hexagonal()));
  CHECK_FALSE(hex.is_sup_norm);
  CHECK(hex.smooth_neighborhood_count == 3);
  CHECK(hex.dimension == 2);
}

TEST_CASE("maximal faces with class-dimension profiles") {
  const auto profile = [](const OrthoDigraph& g,
                          const std::vector<MaximalFace>& faces) {
    std::vector<std::map<int, int>> out;
    for (const auto& f : faces) {
      std::map<int, int> by_dim;
      for (int id : f.vertex_ids) {
        ++by_dim[g.lattice->class_face(id).dim];
      }
      out.push_back(std::move(by_dim));
    }
    return out;
  };

  const auto cube = exact_graph(make_lp_inf(3));
  const auto cube_faces = find_maximal_faces(cube);
  REQUIRE(cube_faces.size() == 3);
  for (const auto& p : profile(cube, cube_faces)) {
    CHECK(p == std::map<int, int>{{0, 4}, {1, 4}, {2, 1}});
  }
  for (const auto& f : cube_faces) {
    CHECK(cube.lattice->class_face(f.witness_class).dim == 2);
  }

  const auto oct = exact_graph(make_lp(1.0, 3));
  const auto oct_faces = find_maximal_faces(oct);
  REQUIRE(oct_faces.size() == 4);
  for (const auto& p : profile(oct, oct_faces)) {
    CHECK(p == std::map<int, int>{{0, 3}, {1, 3}, {2, 1}});
  }

  const auto hex = exact_graph(make_hexagonal());
  const auto hex_faces = find_maximal_faces(hex);
  REQUIRE(hex_faces.size() == 3);
  for (const auto& p : profile(hex, hex_faces)) {
    CHECK(p == std::map<int, int>{{0, 2}, {1, 1}});
  }
}

TEST_CASE("fingerprints identify linearly equivalent balls") {
  const auto square = graph_fingerprint(exact_graph(make_lp_inf(2)));
  const RMat pgram{{Rat(1), Rat(0)},
                   {Rat(-1), Rat(0)},
                   {Rat(1), Rat(1)},
                   {Rat(-1), Rat(-1)}};
  const auto sheared =
      graph_fingerprint(exact_graph(make_polyhedral(pgram, "pgram")));
  CHECK(square == sheared);
  CHECK(square != graph_fingerprint(exact_graph(make_hexagonal())));
}

TEST_CASE("dot export is stable and complete") {
  const auto g = exact_graph(make_lp_inf(2));
  const std::string dot = export_dot(g);
  CHECK(dot == export_dot(exact_graph(make_lp_inf(2))));
  int arrows = 0;
  for (std::size_t i = 0; i + 1 < dot.size(); ++i) {
    arrows += dot[i] == '-' && dot[i + 1] == '>';
  }
  CHECK(arrows == 8);
  CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("graph contracts") {
  CHECK_THROWS_AS(
      build_orthodigraph(make_lp(2, 2), OrthoDigraph::Mode::ExactQuotient),
      ContractError);
  CHECK_THROWS_AS(build_orthodigraph(make_lp(2, 2),
                                     OrthoDigraph::Mode::Sampled, false, 0),
                  ContractError);
  CHECK_THROWS_AS(find_maximal_faces(build_orthodigraph(
                      make_lp(2, 2), OrthoDigraph::Mode::Sampled, false, 16)),
                  ContractError);
  CHECK_THROWS_AS(span_from_graph(make_lp_inf(3), {NVec{1, 0, 0}}),
                  ContractError);
}
