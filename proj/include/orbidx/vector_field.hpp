#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbidx/boundary_model.hpp"
#include "orbidx/expr.hpp"
#include "orbidx/group_action.hpp"
#include "orbidx/rational.hpp"
#include "orbidx/tolerances.hpp"

namespace orbidx {

/// Closed-form vector field on R^n, one expression per component, with the
/// symbolic Jacobian built once at construction.
class FieldExpr {
 public:
  explicit FieldExpr(std::vector<Expr> components);
  static FieldExpr parse(std::span<const std::string> components);

  int dim() const { return static_cast<int>(components_.size()); }
  const Expr& component(int i) const { return components_[i]; }
  const Expr& partial(int i, int j) const { return jacobian_[i * dim() + j]; }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
  std::vector<std::string> to_strings() const;

 private:
  std::vector<Expr> components_;
  std::vector<Expr> jacobian_;  // row-major d component_i / d x_j
};

struct ZeroRecord {
  Eigen::VectorXd location;
  int isotropy_order = 1;
  /// Eigenvalues of the Jacobian with negative real part; empty when the
  /// zero is degenerate and its index came from a winding number.
  std::optional<int> morse_lambda;
  int det_sign = 0;     // sign of det Jacobian, 0 when degenerate
  int local_index = 0;  // topological index upstairs
  Rational orb_index{0};
};

struct EquivarianceReport {
  bool passed = true;
  double max_violation = 0.0;
  int worst_element = -1;
};

struct ZeroSearch {
  std::vector<Eigen::VectorXd> zeros;  // upstairs, sorted lexicographically
  int seeds = 0;
  int divergent_seeds = 0;
};

struct IndexSum {
  Rational total{0};              // orbit-representative sum
  Rational upstairs_over_order{0};  // (sum of all upstairs indices) / |G|
  std::vector<ZeroRecord> records;  // all upstairs zeros
  std::vector<int> representatives;  // record index of one zero per orbit
  std::vector<int> orbit_of;         // record index -> orbit number
  bool all_nondegenerate = true;
  /// C_lambda = sum over orbit representatives with Morse index lambda of 1/|G_p|.
  std::vector<Rational> morse_counts;
  Rational morse_sum{0};  // sum_lambda (-1)^lambda C_lambda
};

Eigen::VectorXd evaluate(const FieldExpr& f, const Eigen::VectorXd& x);

/// Checks A_g F(p) = F(A_g p) for every element at `samples` Halton points
/// in the box [-radius, radius]^n.
EquivarianceReport check_equivariance(const FieldExpr& f, const GroupAction& g, int samples = 64,
                                      double tol = 1e-8, double radius = 1.0);

/// Grid-seeded damped Newton. Throws ZeroOnBoundary when a zero lies
/// within tol.dedup of the boundary and MismatchDetected when the zero set
/// is not invariant under the group.
ZeroSearch find_zeros(const FieldExpr& f, const GroupAction& g, const BoundaryModel& domain, int grid_density,
                      const Tolerances& tol = {});

/// Index data at a nondegenerate zero. Throws DegenerateZero when
/// |det J| <= tol.degenerate.
ZeroRecord orbifold_index_at(const FieldExpr& f, const Eigen::VectorXd& z, const GroupAction& g,
                             const Tolerances& tol = {});

using PlanarField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// Degree of F / |F| around the circle. Samples double until every angular
/// step is below pi/2. Throws FieldVanishesOnCircle if |F| <= tol_field at
/// a sample.
int winding_number_2d(const PlanarField& f, const Eigen::Vector2d& center, double radius, int min_samples = 64,
                      double tol_field = 1e-9);
int winding_number_2d(const FieldExpr& f, const Eigen::Vector2d& center, double radius, int min_samples = 64,
                      double tol_field = 1e-9);

/// Ind^orb(Y; Q): sums det_sign / |G_z| over one zero per orbit and
/// cross-checks against the upstairs sum divided by |G|. Degenerate planar
/// zeros fall back to a winding number on a small circle.
IndexSum orbifold_index_sum(const FieldExpr& f, const GroupAction& g, const BoundaryModel& domain,
                            const Tolerances& tol = {});

/// Number of elements with |A_g x - x| < tol.
int isotropy_order(const GroupAction& g, const Eigen::VectorXd& x, double tol);

/// Groups points into G-orbits (matching within `tol`). Returns orbit number
/// per point, orbits numbered by first appearance.
std::vector<int> orbit_partition(const GroupAction& g, std::span<const Eigen::VectorXd> points, double tol);

}  // namespace orbidx
