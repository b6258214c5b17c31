#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "orbidx/simplicial.hpp"

namespace orbidx {

/// A boundary circle of a planar domain. `outer` circles bound the domain
/// from outside (outward normal points away from the center); inner circles
/// bound holes.
struct CircleSpec {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 1.0;
  bool outer = true;
};

/// Geometry of the boundary of M: normals, tangents, and membership.
///
/// In dimension 2 the boundary is a set of closed loops made of pieces,
/// each parameterized by arclength u in [0, length] and oriented so that M
/// lies to the left (tangent = outward normal rotated by +90 degrees).
/// In dimension 1 it is a set of endpoints with outward unit normals.
class BoundaryModel {
 public:
  struct Piece {
    enum class Kind { Circle, Segment };
    Kind kind = Kind::Segment;
    int loop = 0;
    double length = 0.0;
    // Circle data.
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    double radius = 0.0;
    bool outer = true;
    // Segment data, a -> b.
    Eigen::Vector2d a = Eigen::Vector2d::Zero();
    Eigen::Vector2d b = Eigen::Vector2d::Zero();

    Eigen::Vector2d position(double u) const;
    Eigen::Vector2d tangent(double u) const;
    Eigen::Vector2d normal(double u) const;
    /// d tangent / du (curvature vector).
    Eigen::Vector2d tangent_derivative(double u) const;
    bool periodic() const { return kind == Kind::Circle; }
  };

  struct Endpoint {
    Eigen::VectorXd position;
    Eigen::VectorXd normal;
    int vertex = -1;
  };

  struct Location {
    int piece = -1;
    double u = 0.0;
  };

  /// Facet-linear boundary read off the triangulation.
  static BoundaryModel piecewise_linear(const QuotientPresentation& p);

  /// Smooth circular boundary. Every boundary vertex of the complex must
  /// lie on one of the circles, and the group must permute the circles.
  static BoundaryModel from_circles(const QuotientPresentation& p, std::vector<CircleSpec> circles,
                                    double tol = 1e-6);

  int dim() const { return dim_; }
  bool smooth() const { return smooth_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  /// Piece ids of each closed loop, in traversal order.
  const std::vector<std::vector<int>>& loops() const { return loops_; }
  const std::vector<Endpoint>& endpoints() const { return endpoints_; }

  bool contains(const Eigen::VectorXd& x) const;
  double distance(const Eigen::VectorXd& x) const;
  /// Piece and arclength of the boundary point nearest `x`, if within `tol`.
  std::optional<Location> locate(const Eigen::VectorXd& x, double tol) const;
  /// Axis-aligned bounding box of M.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> bounds() const;

 private:
  int dim_ = 0;
  bool smooth_ = false;
  std::vector<Piece> pieces_;
  std::vector<std::vector<int>> loops_;
  std::vector<Endpoint> endpoints_;
  std::vector<std::vector<Eigen::VectorXd>> cells_;  // top simplices, for PL membership
  Eigen::VectorXd lo_, hi_;
};

}  // namespace orbidx
