#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbidx/boundary_model.hpp"
#include "orbidx/errors.hpp"
#include "orbidx/group_action.hpp"
#include "orbidx/rational.hpp"
#include "orbidx/tolerances.hpp"
#include "orbidx/vector_field.hpp"

namespace orbidx {

struct BoundaryPoint {
  Eigen::VectorXd position;
  Eigen::VectorXd normal;   // outward unit normal
  Eigen::VectorXd tangent;  // n = 2 only, M on the left
  int piece = -1;           // -1 for n = 1 endpoints
  double u = 0.0;
  double normal_component = 0.0;
  double tangential_component = 0.0;
  double normal_derivative = 0.0;  // dN/du at a tangency point
  int isotropy_order = 1;
  int orbit = -1;
};

/// Closed arc of a boundary loop, in loop arclength t. An arc with
/// t_end < t_start wraps past the loop's base point.
struct Arc {
  int loop = -1;
  double t_start = 0.0;
  double t_end = 0.0;
  bool full_loop = false;
  Eigen::VectorXd midpoint;
  int isotropy_order = 1;
  int orbit = -1;
};

struct ChainLevel {
  int level = 1;
  std::vector<Arc> exit_arcs;   // R_-^1 for n = 2
  std::vector<Arc> entry_arcs;  // R_+^1 for n = 2
  std::vector<BoundaryPoint> exit_points;   // R_- made of points
  std::vector<BoundaryPoint> entry_points;  // R_+ made of points
  std::vector<BoundaryPoint> gamma;         // tangency set
  int chi_exit = 0;   // upstairs chi(R_-)
  int chi_entry = 0;  // upstairs chi(R_+)
  int chi_gamma = 0;  // upstairs chi(Gamma)
  int exit_orbits = 0;
  int gamma_orbits = 0;
  Rational chi_term{0};  // (chi_exit - chi_gamma) / |G|
};

struct ExitChain {
  int dim = 0;
  std::vector<ChainLevel> levels;  // nonempty exit levels only, in order
  std::vector<Rational> chi_terms;
  Rational total{0};
};

struct ContactIssue {
  ErrorCode code;
  std::string message;
  Eigen::VectorXd location;
};

struct ContactReport {
  bool passed = true;
  std::vector<ContactIssue> issues;
};

/// Y(p) . n(p) at arclength u of a boundary piece. Positive points out of M.
double normal_component(const FieldExpr& f, const BoundaryModel& boundary, int piece, double u);
/// Same at an endpoint of a one-dimensional M.
double normal_component(const FieldExpr& f, const BoundaryModel::Endpoint& endpoint);

/// Exit-region chain of F on the boundary, n in {1, 2}. Throws NotGeneric,
/// FieldVanishesOnBoundary, UnsupportedDimension, or MismatchDetected when
/// the orbit-weighted terms disagree with the upstairs counts.
ExitChain compute_chain(const FieldExpr& f, const GroupAction& g, const BoundaryModel& boundary,
                        const Tolerances& tol = {});

/// Runs the genericity checks of compute_chain and reports every failure.
ContactReport verify_generic_contact(const FieldExpr& f, const GroupAction& g, const BoundaryModel& boundary,
                                     const Tolerances& tol = {});

}  // namespace orbidx
