#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bjorth/bjcore.hpp"
#include "bjorth/facelattice.hpp"

namespace bjorth {

/// Orthogonality digraph on projective classes.
///   ExactQuotient: vertices are face classes (faces modulo the antipodal
///     identification) of a polyhedral ball; every vertex carries the exact
///     active set, which fully determines the true neighborhood x-perp as a
///     union of kernels. Edges are materialized between canonical
///     (relative-interior centroid) representatives; the theorem-level
///     operations below work from active sets, not from materialized edges,
///     because incoming neighborhoods genuinely vary inside a face class.
///   Sampled: seeded projective sample points with antipodal merging; edges
///     are numeric verdicts between samples.
struct OrthoDigraph {
  enum class Mode { ExactQuotient, Sampled };

  struct Vertex {
    int id = 0;
    std::string name;              // "C<k>" or "S<k>"; "0" for the loop vertex
    bool smooth = false;
    // exact payload
    int face_id = -1;
    std::vector<int> active;       // signed active set (lattice indexing)
    RVec exact_rep;
    // sampled payload
    NVec num_rep;
    NVec gradient;                 // smooth samples only
  };

  Mode mode = Mode::ExactQuotient;
  bool gamma0 = false;             // materialize the 0 vertex with its loop
  NormPtr norm;
  std::shared_ptr<const FaceLattice> lattice;  // exact mode
  std::vector<Vertex> vertices;
  std::vector<std::vector<bool>> adj;          // adj[u][v] <=> edge u -> v
  std::uint64_t seed = 0;
  int sample_count = 0;

  int out_degree(int v) const;
  bool edge(int u, int v) const { return adj[u][v]; }
};

/// Builds the graph. Exact quotient requires an exact spec; sampled mode
/// requires count >= 1 and a real spec. gamma0 adds the 0 vertex, its loop
/// (the only loop), and the always-present 0 <-> v edges.
OrthoDigraph build_orthodigraph(const NormPtr& norm, OrthoDigraph::Mode mode,
                                bool gamma0 = false, int count = 0,
                                std::uint64_t seed = 1,
                                const Tolerances& tol = {});

struct DimensionResult {
  int dimension = 0;          // min |Omega| with trivial common perp
  bool sampled = false;       // numeric kernel-rank bound, not a proof
  std::vector<int> witness;   // vertex ids of a minimal Omega
};

/// Dimension of the space recovered from the graph:
///   dim X = min{ |Omega| : the common intersection of x-perp over Omega is
///   trivial } (trivial = {0} with the Gamma_0 convention, empty projectively
///   with the Gamma convention; the two searches coincide mechanically and
///   are asserted to agree).
/// Exact mode searches subsets in increasing cardinality: smooth-class
/// subsets decide by rational kernel rank; subsets containing a nonsmooth
/// class are pruned by the kernel-containment certificate (each x-perp
/// contains some Ker f, so any subset smaller than the ambient rank is
/// certified nonempty without search).
DimensionResult digraph_dimension(const OrthoDigraph& graph);

struct SmoothClassification {
  std::vector<int> smooth_ids;
  std::vector<int> nonsmooth_ids;
  bool sampled = false;
};

/// 2D criterion: x is smooth iff x-perp contains exactly one projective
/// line. Exact mode counts lines in the active-set union of kernels; sampled
/// mode classifies representatives numerically.
SmoothClassification classify_smooth_vertices_2d(const OrthoDigraph& graph,
                                                 const Tolerances& tol = {});

/// n >= 3 criterion ((n-2)-tuple test): x is smooth iff there are vertices
/// x3..xn with |x-perp ^ x3-perp ^ ... ^ xn-perp| = 1 and, for every
/// reordering, with Omega = { y : |x-perp ^ y-perp ^ x4-perp ^ ...| = 1 },
/// the intersection x4-perp ^ ... ^ x-perp ^ (^_{y in Omega} y-perp) is
/// empty. On exact graphs all singleton/emptiness decisions are exact
/// (ConeSystem); on sampled graphs representatives are classified
/// numerically and the result is flagged sampled.
/// budget_cap bounds the exact tuple search; exceeding it throws
/// BudgetError.
SmoothClassification classify_smooth_vertices_nd(const OrthoDigraph& graph,
                                                 long budget_cap = 2000000);

struct MaximalFace {
  std::vector<int> vertex_ids;  // graph vertices whose classes form the face
  int witness_class = -1;       // z with z-perp contained in every member's
};

/// Maximal faces of the unit ball recovered graph-theoretically: collections
/// F with (i) some z-perp contained in x-perp for every x in F and (ii) no
/// proper superset satisfying (i). Exact quotient graphs only.
std::vector<MaximalFace> find_maximal_faces(const OrthoDigraph& graph);

struct SpanResult {
  NMat basis;            // recovered span of S
  int omega_minimum = 0; // minimal witness count in the second formula
  int witnesses_used = 0;
};

/// Recovers span(S) = intersection of x-perp over sampled x orthogonal to
/// every s in S (smooth numeric specs). Witnesses are sampled through the
/// annihilator of S and verified; reports BudgetError if none can be found.
SpanResult span_from_graph(const NormPtr& norm, const NMat& s_set,
                           int witness_budget = 64, std::uint64_t seed = 1,
                           const Tolerances& tol = {});

struct SupNormVerdict {
  bool is_sup_norm = false;
  int smooth_neighborhood_count = 0;
  int dimension = 0;
  bool sampled = false;
};

/// Recognition of linear images of the sup norm: the space is one iff the
/// number of distinct x-perp over smooth vertices equals the dimension.
SupNormVerdict recognize_sup_norm(const OrthoDigraph& graph,
                                  const Tolerances& tol = {});

struct PolyhedralityVerdict {
  bool polyhedral_like = false;
  bool exact = false;
  int distinct_count = 0;              // exact class count
  std::map<int, int> sampled_counts;   // sample size -> distinct descriptors
};

/// Polyhedrality: finitely many distinct outgoing neighborhoods. Exact specs
/// count descriptor classes; numeric specs sample at increasing sizes and
/// report whether the distinct-kernel count saturates.
PolyhedralityVerdict polyhedrality_verdict(const NormPtr& norm,
                                           std::uint64_t seed = 1,
                                           const Tolerances& tol = {});

struct GraphFingerprint {
  int dimension = 0;
  int smooth_count = 0;
  int nonsmooth_count = 0;
  std::vector<int> out_degrees;  // sorted multiset
  int maximal_face_count = -1;   // -1 when not applicable (sampled)
  bool sampled = false;

  bool operator==(const GraphFingerprint&) const = default;
};

GraphFingerprint graph_fingerprint(const OrthoDigraph& graph);

/// Deterministic DOT export: stable vertex order and labels
/// (name, smooth flag, descriptor hash); byte-identical across runs.
std::string export_dot(const OrthoDigraph& graph);

}  // namespace bjorth
