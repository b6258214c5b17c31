#include "orbidx/boundary_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "orbidx/errors.hpp"

namespace orbidx {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circle_angle(const BoundaryModel::Piece& p, double u) { return (p.outer ? u : -u) / p.radius; }

double wrap(double u, double length) {
  double w = std::fmod(u, length);
  return w < 0 ? w + length : w;
}

bool in_simplex(const std::vector<Eigen::VectorXd>& cell, const Eigen::VectorXd& x) {
  const auto n = x.size();
  if (static_cast<Eigen::Index>(cell.size()) != n + 1) return false;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) = cell[j + 1] - cell[0];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) return false;
  Eigen::VectorXd lambda = lu.solve(x - cell[0]);
  constexpr double eps = 1e-12;
  return lambda.minCoeff() >= -eps && lambda.sum() <= 1.0 + eps;
}

double segment_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& x,
                        double* param) {
  Eigen::Vector2d d = b - a;
  double t = std::clamp((x - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  if (param) *param = t * d.norm();
  return (a + t * d - x).norm();
}

}  // namespace

Eigen::Vector2d BoundaryModel::Piece::position(double u) const {
  if (kind == Kind::Segment) return a + (b - a).normalized() * u;
  double th = circle_angle(*this, u);
  return center + radius * Eigen::Vector2d(std::cos(th), std::sin(th));
}

Eigen::Vector2d BoundaryModel::Piece::normal(double u) const {
  if (kind == Kind::Segment) {
    Eigen::Vector2d t = (b - a).normalized();
    return {t.y(), -t.x()};
  }
  double th = circle_angle(*this, u);
  Eigen::Vector2d radial(std::cos(th), std::sin(th));
  return outer ? radial : Eigen::Vector2d(-radial);
}

Eigen::Vector2d BoundaryModel::Piece::tangent(double u) const {
  Eigen::Vector2d n = normal(u);
  return {-n.y(), n.x()};
}

Eigen::Vector2d BoundaryModel::Piece::tangent_derivative(double u) const {
  if (kind == Kind::Segment) return Eigen::Vector2d::Zero();
  double th = circle_angle(*this, u);
  return -Eigen::Vector2d(std::cos(th), std::sin(th)) / radius;
}

BoundaryModel BoundaryModel::piecewise_linear(const QuotientPresentation& p) {
  const auto& k = p.complex;
  if (!k.has_coordinates()) fail(ErrorCode::ValidationError, "boundary geometry needs vertex coordinates");
  BoundaryModel m;
  m.dim_ = k.dim();
  const auto verts = k.vertex_ids();
  m.lo_ = k.coordinate(verts.front());
  m.hi_ = m.lo_;
  for (int v : verts) {
    m.lo_ = m.lo_.cwiseMin(k.coordinate(v));
    m.hi_ = m.hi_.cwiseMax(k.coordinate(v));
  }
  for (const auto& top : k.simplices_of_dim(k.dim())) {
    std::vector<Eigen::VectorXd> cell;
    for (int v : top) cell.push_back(k.coordinate(v));
    m.cells_.push_back(std::move(cell));
  }

  const auto boundary = boundary_subcomplex(k);
  if (m.dim_ == 1) {
    for (int v : boundary.vertex_ids()) {
      for (const auto& e : k.simplices_of_dim(1)) {
        if (e[0] != v && e[1] != v) continue;
        int w = e[0] == v ? e[1] : e[0];
        m.endpoints_.push_back({k.coordinate(v), (k.coordinate(v) - k.coordinate(w)).normalized(), v});
      }
    }
  } else if (m.dim_ == 2) {
    // Orient each boundary edge with its triangle on the left.
    std::map<int, int> next;  // start vertex -> end vertex
    for (const auto& e : boundary.simplices_of_dim(1)) {
      for (const auto& t : k.simplices_of_dim(2)) {
        if (!std::includes(t.begin(), t.end(), e.begin(), e.end())) continue;
        int c = t[0] != e[0] && t[0] != e[1] ? t[0] : (t[1] != e[0] && t[1] != e[1] ? t[1] : t[2]);
        Eigen::Vector2d a = k.coordinate(e[0]).head<2>(), b = k.coordinate(e[1]).head<2>(),
                        cc = k.coordinate(c).head<2>();
        Eigen::Vector2d ab = b - a, ac = cc - a;
        bool left = ab.x() * ac.y() - ab.y() * ac.x() > 0;
        int from = left ? e[0] : e[1], to = left ? e[1] : e[0];
        if (next.count(from)) fail(ErrorCode::NotManifold, "boundary vertex with two outgoing edges");
        next[from] = to;
        break;
      }
    }
    std::map<int, char> used;
    for (const auto& [start, _] : next) {
      if (used[start]) continue;
      std::vector<int> loop;
      int v = start;
      while (!used[v]) {
        used[v] = 1;
        int w = next.at(v);
        Piece piece;
        piece.kind = Piece::Kind::Segment;
        piece.loop = static_cast<int>(m.loops_.size());
        piece.a = k.coordinate(v).head<2>();
        piece.b = k.coordinate(w).head<2>();
        piece.length = (piece.b - piece.a).norm();
        loop.push_back(static_cast<int>(m.pieces_.size()));
        m.pieces_.push_back(piece);
        v = w;
        if (!next.count(v)) fail(ErrorCode::NotManifold, "boundary edges do not close into loops");
      }
      m.loops_.push_back(std::move(loop));
    }
  }
  return m;
}

BoundaryModel BoundaryModel::from_circles(const QuotientPresentation& p, std::vector<CircleSpec> circles,
                                          double tol) {
  BoundaryModel m = piecewise_linear(p);
  if (m.dim_ != 2) fail(ErrorCode::ValidationError, "circular boundary parameterization requires dimension 2");
  if (circles.empty()) fail(ErrorCode::ValidationError, "empty circle list");
  const auto& k = p.complex;
  for (int v : boundary_subcomplex(k).vertex_ids()) {
    Eigen::Vector2d x = k.coordinate(v).head<2>();
    bool on = false;
    for (const auto& c : circles) on = on || std::abs((x - c.center).norm() - c.radius) < tol;
    if (!on) fail(ErrorCode::ValidationError, "boundary vertex " + std::to_string(v) + " lies on no boundary circle");
  }
  for (const auto& e : p.action.elements()) {
    Eigen::Matrix2d a = e.matrix.topLeftCorner<2, 2>();
    for (const auto& c : circles) {
      bool matched = false;
      for (const auto& d : circles)
        matched = matched || ((a * c.center - d.center).norm() < tol && std::abs(c.radius - d.radius) < tol &&
                              c.outer == d.outer);
      if (!matched) fail(ErrorCode::ValidationError, "group does not permute the boundary circles");
    }
  }

  m.smooth_ = true;
  m.pieces_.clear();
  m.loops_.clear();
  for (const auto& c : circles) {
    Piece piece;
    piece.kind = Piece::Kind::Circle;
    piece.loop = static_cast<int>(m.loops_.size());
    piece.center = c.center;
    piece.radius = c.radius;
    piece.outer = c.outer;
    piece.length = kTwoPi * c.radius;
    m.loops_.push_back({static_cast<int>(m.pieces_.size())});
    m.pieces_.push_back(piece);
    m.lo_ = m.lo_.cwiseMin(Eigen::VectorXd((c.center.array() - c.radius).matrix()));
    m.hi_ = m.hi_.cwiseMax(Eigen::VectorXd((c.center.array() + c.radius).matrix()));
  }
  return m;
}

bool BoundaryModel::contains(const Eigen::VectorXd& x) const {
  if (smooth_) {
    for (const auto& p : pieces_) {
      double r = (x.head<2>() - p.center).norm();
      if (p.outer ? r > p.radius : r < p.radius) return false;
    }
    return true;
  }
  if (dim_ == 1) {
    for (const auto& cell : cells_) {
      double lo = std::min(cell[0](0), cell[1](0)), hi = std::max(cell[0](0), cell[1](0));
      if (x(0) >= lo - 1e-12 && x(0) <= hi + 1e-12) return true;
    }
    return false;
  }
  for (const auto& cell : cells_)
    if (in_simplex(cell, x)) return true;
  return false;
}

double BoundaryModel::distance(const Eigen::VectorXd& x) const {
  double best = std::numeric_limits<double>::infinity();
  if (dim_ == 1) {
    for (const auto& e : endpoints_) best = std::min(best, (x - e.position).norm());
    return best;
  }
  if (dim_ != 2) return best;
  for (const auto& p : pieces_) {
    if (p.kind == Piece::Kind::Circle)
      best = std::min(best, std::abs((x.head<2>() - p.center).norm() - p.radius));
    else
      best = std::min(best, segment_distance(p.a, p.b, x.head<2>(), nullptr));
  }
  return best;
}

std::optional<BoundaryModel::Location> BoundaryModel::locate(const Eigen::VectorXd& x, double tol) const {
  std::optional<Location> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    double d, u;
    if (p.kind == Piece::Kind::Circle) {
      Eigen::Vector2d r = x.head<2>() - p.center;
      d = std::abs(r.norm() - p.radius);
      double th = std::atan2(r.y(), r.x());
      u = wrap((p.outer ? th : -th) * p.radius, p.length);
    } else {
      d = segment_distance(p.a, p.b, x.head<2>(), &u);
    }
    if (d <= tol && d < best_d) {
      best_d = d;
      best = Location{static_cast<int>(i), u};
    }
  }
  return best;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> BoundaryModel::bounds() const { return {lo_, hi_}; }

}  // namespace orbidx
