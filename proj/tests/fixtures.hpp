#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbidx/boundary_model.hpp"
#include "orbidx/group_action.hpp"
#include "orbidx/simplicial.hpp"
#include "orbidx/vector_field.hpp"

namespace fx {

using namespace orbidx;

inline Eigen::MatrixXd rotation(double turns) {
  double a = 2 * std::numbers::pi * turns;
  Eigen::MatrixXd m(2, 2);
  m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return m;
}

inline Eigen::MatrixXd diag(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline Eigen::VectorXd pt(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

inline Eigen::VectorXd pt(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

// Center 0, rim vertices 1..6 at angles k pi / 3 on the unit circle.
inline SimplicialComplex hex_disk() {
  std::vector<Eigen::VectorXd> coords{pt(0, 0)};
  for (int k = 0; k < 6; ++k) coords.push_back(pt(std::cos(k * std::numbers::pi / 3), std::sin(k * std::numbers::pi / 3)));
  std::vector<Simplex> tris;
  for (int k = 1; k <= 6; ++k) tris.push_back({0, k, k % 6 + 1});
  return SimplicialComplex::from_simplices(coords, 7, tris);
}

// Rim vertex k -> k + shift, center fixed.
inline Permutation rim_shift(int shift) {
  Permutation p{0};
  for (int k = 0; k < 6; ++k) p.push_back(1 + (k + shift) % 6);
  return p;
}

inline QuotientPresentation disk_trivial() { return QuotientPresentation::create(hex_disk(), GroupAction::trivial(2, 7)); }

inline QuotientPresentation disk_z3() {
  std::vector<GroupElement> gens{{rotation(1.0 / 3), rim_shift(2), -1}};
  return QuotientPresentation::create(hex_disk(), GroupAction::close(gens));
}

inline QuotientPresentation disk_z2() {
  std::vector<GroupElement> gens{{diag(-1, -1), rim_shift(3), -1}};
  return QuotientPresentation::create(hex_disk(), GroupAction::close(gens));
}

inline QuotientPresentation interval() {
  std::vector<Eigen::VectorXd> coords{pt(0.0), pt(0.5), pt(1.0)};
  return QuotientPresentation::create(SimplicialComplex::from_simplices(coords, 3, {{0, 1}, {1, 2}}),
                                      GroupAction::trivial(1, 3));
}

inline BoundaryModel unit_circle(const QuotientPresentation& p) {
  return BoundaryModel::from_circles(p, {CircleSpec{}});
}

inline FieldExpr field(std::vector<std::string> comps) { return FieldExpr::parse(comps); }

}  // namespace fx
