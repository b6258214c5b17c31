#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "orbidx/tolerances.hpp"

namespace orbidx {

using Permutation = std::vector<int>;

/// A finite-group element acting orthogonally on R^n and by a vertex
/// permutation on a simplicial complex. `id` indexes the owning group table.
struct GroupElement {
  Eigen::MatrixXd matrix;
  Permutation vertex_perm;
  int id = -1;
};

struct CodimensionReport {
  bool passed = true;
  std::vector<int> offending;  // element ids whose fixed space has codimension < 2
};

/// Finite group with a multiplication table. Element 0 is always the
/// identity; elements are listed in breadth-first generation order.
/// Immutable after construction.
class GroupAction {
 public:
  /// Closes `generators` under multiplication. Matrix equality within
  /// `tol` decides element identity; vertex permutations compose exactly
  /// and must agree whenever matrices do.
  static GroupAction close(std::span<const GroupElement> generators, int max_order = 512,
                           double tol = 1e-9);

  static GroupAction trivial(int dim, int num_vertices);

  int order() const { return static_cast<int>(elements_.size()); }
  int dim() const { return dim_; }
  int num_vertices() const;
  const GroupElement& element(int i) const { return elements_[i]; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  int mult(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& mult_table() const { return table_; }

  /// Ids of this group's elements in the group it was carved out of
  /// (identity map for groups built by `close`).
  const std::vector<int>& parent_ids() const { return parent_ids_; }

  /// Index of the element whose matrix matches `m` within `tol`, or -1.
  int find(const Eigen::MatrixXd& m, double tol = 1e-9) const;

  /// Same matrices and table, new vertex permutations (one per element).
  GroupAction with_permutations(std::vector<Permutation> perms) const;

  /// Subgroup on the given element ids (must be closed), re-indexed with
  /// `parent_ids` recording the original ids.
  GroupAction subgroup(std::span<const int> ids) const;

 private:
  GroupAction() = default;

  int dim_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> parent_ids_;
};

/// Partition of element ids into conjugacy classes, each sorted, classes
/// ordered by their smallest id.
std::vector<std::vector<int>> conjugacy_classes(const GroupAction& group);

/// Index of the class containing `g`.
int class_of(const std::vector<std::vector<int>>& classes, int g);

GroupAction centralizer(const GroupAction& group, int g);

/// Every non-identity element must fix a subspace of dimension <= n - 2.
CodimensionReport validate_codimension2(const GroupAction& group);

/// Dimension of ker(M - I). Singular values below 1e-6 count as zero;
/// for orthogonal M of order <= 512 the nonzero ones exceed 1e-2.
int fixed_space_dim(const Eigen::MatrixXd& m);

/// Orthonormal basis (columns) of ker(M - I).
Eigen::MatrixXd fixed_space_basis(const Eigen::MatrixXd& m);

}  // namespace orbidx
