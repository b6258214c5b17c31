#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "orbidx/group_action.hpp"

namespace orbidx {

/// Sorted list of vertex ids.
using Simplex = std::vector<int>;

/// Face-closed set of simplices over a vertex pool. The pool may hold ids
/// that no simplex uses (boundary and fixed subcomplexes keep the parent's
/// pool so group permutations stay valid). Coordinates are optional.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Face closure of `simplices`. `coords` is either empty (combinatorial)
  /// or has exactly `pool_size` entries.
  static SimplicialComplex from_simplices(std::vector<Eigen::VectorXd> coords, int pool_size,
                                          std::vector<Simplex> simplices);

  /// Highest simplex dimension, -1 when empty.
  int dim() const { return dim_; }
  int pool_size() const { return pool_size_; }
  bool empty() const { return simplices_.empty(); }
  bool has_coordinates() const { return !coords_.empty(); }
  const std::vector<Eigen::VectorXd>& coordinates() const { return coords_; }
  const Eigen::VectorXd& coordinate(int v) const { return coords_[v]; }

  /// All simplices ordered by dimension, then lexicographically.
  const std::vector<Simplex>& simplices() const { return simplices_; }
  int index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s) >= 0; }

  std::vector<Simplex> simplices_of_dim(int d) const;
  std::vector<Simplex> maximal_simplices() const;
  std::vector<int> vertex_ids() const;

  bool operator==(const SimplicialComplex& other) const { return simplices_ == other.simplices_; }

 private:
  int dim_ = -1;
  int pool_size_ = 0;
  std::vector<Eigen::VectorXd> coords_;
  std::vector<Simplex> simplices_;
  std::map<Simplex, int> index_;
};

/// Global quotient M/G: a triangulated manifold with a compatible
/// orthogonal-plus-simplicial group action.
struct QuotientPresentation {
  SimplicialComplex complex;
  GroupAction action;
  bool regular = false;

  /// Validates the action (permutes simplices, faithful on the complex,
  /// fixed sets of codimension >= 2, matrices agree with vertex
  /// permutations on coordinates) and computes the `regular` flag.
  static QuotientPresentation create(SimplicialComplex complex, GroupAction action,
                                     double tol = 1e-9);
};

/// One cell per G-orbit of simplices; faces given as orbit indices. The
/// quotient of a regular action need not be a simplicial complex (two
/// orbit edges may share both endpoints), so cells are kept abstractly.
struct OrbitComplex {
  std::vector<Simplex> representatives;
  std::vector<int> orbit_sizes;
  std::vector<std::vector<int>> facets;

  int cell_dim(std::size_t i) const { return static_cast<int>(representatives[i].size()) - 1; }
};

struct Subdivision {
  SimplicialComplex complex;
  std::vector<int> origin;  // new vertex id -> index of the subdivided simplex
};

Subdivision barycentric_subdivide_with_origin(const SimplicialComplex& k);
SimplicialComplex barycentric_subdivide(const SimplicialComplex& k);

/// Subdivides the presentation and lifts the permutation action to the
/// barycenters.
QuotientPresentation subdivide_presentation(const QuotientPresentation& p);

/// True when every element that maps a simplex to itself fixes it vertexwise.
bool is_regular(const SimplicialComplex& k, const GroupAction& g);

struct Regularized {
  QuotientPresentation presentation;
  int subdivisions = 0;
};

/// Subdivide-and-test, at most twice.
Regularized regularize(const QuotientPresentation& p);

OrbitComplex quotient_complex(const QuotientPresentation& p);

/// Closure of the (dim-1)-faces lying in exactly one top simplex.
SimplicialComplex boundary_subcomplex(const SimplicialComplex& k);

/// The boundary with the restricted action (same group, same vertex pool).
QuotientPresentation boundary_presentation(const QuotientPresentation& p);

/// Two copies glued along the boundary. Interior vertex v of the second copy
/// becomes v + pool_size; boundary vertices are shared. If some interior
/// simplex spans only boundary vertices the input is subdivided once first.
QuotientPresentation double_complex(const QuotientPresentation& p);

/// Simplices fixed vertexwise by element `g`.
SimplicialComplex fixed_subcomplex(const QuotientPresentation& p, int g);

int euler_characteristic(const SimplicialComplex& k);
int euler_characteristic(const OrbitComplex& k);

/// Image of a simplex under a vertex permutation, sorted.
Simplex apply(const Permutation& perm, const Simplex& s);

}  // namespace orbidx
