#pragma once

#include <memory>
#include <vector>

#include "bjorth/norms.hpp"

namespace bjorth {

/// One proper face of the unit ball boundary of a polyhedral norm.
struct Face {
  int id = 0;                       // stable: faces sorted by (dim, vertices)
  int dim = 0;                      // 0 = ball vertex ... n-1 = facet
  std::vector<int> active;          // indices of dual functionals equal to 1
  std::vector<int> vertex_ids;      // ball vertices contained in the face
  RVec representative;              // exact relative-interior point (norm 1)
  std::vector<int> boundary_face_ids;  // immediate (dim-1) subfaces
  int antipodal_id = 0;
};

/// Complete boundary face enumeration of a polyhedral unit ball (dim <= 4),
/// plus the antipodal pairing that yields projective face classes.
struct FaceLattice {
  NormPtr norm;
  RMat ball_vertices;
  std::vector<Face> faces;
  /// class_of[face id] -> class id; classes are numbered by their smaller
  /// member face id, contiguously from 0.
  std::vector<int> class_of;
  int num_classes = 0;

  const Face& class_face(int class_id) const;   // canonical member
  int facet_count() const;
  std::vector<int> faces_of_dim(int d) const;
};

/// Enumerates the lattice. Throws ContractError for non-exact specs or
/// dim > 4, BudgetError if the enumeration exceeds internal caps.
std::shared_ptr<const FaceLattice> face_lattice(const NormPtr& norm);

}  // namespace bjorth
