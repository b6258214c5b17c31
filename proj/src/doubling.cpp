#include "orbidx/doubling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbidx/errors.hpp"
#include "orbidx/euler_satake.hpp"

namespace orbidx {

namespace {

constexpr int kDepthLevels = 256;
constexpr int kCheckLevels = 128;
constexpr int kBallSamples = 33;
constexpr int kMaxHalvings = 8;

Eigen::Vector2d rot_cw(const Eigen::Vector2d& v) { return {v.y(), -v.x()}; }

int sign(double x) { return (x > 0) - (x < 0); }

double cyclic_gap(double a, double b, double length) {
  double d = std::abs(a - b);
  return std::min(d, length - d);
}

// Roots of h on [0, length] by sign scan and bisection.
template <class H>
std::vector<double> scan_roots(const H& h, double length, int samples, double tol, bool periodic) {
  std::vector<double> u(samples + 1), y(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    u[k] = length * k / samples;
    y[k] = h(u[k]);
  }
  std::vector<double> roots;
  const int last = periodic ? samples : samples + 1;
  for (int k = 0; k < last; ++k) {
    if (y[k] == 0.0) {
      roots.push_back(u[k]);
      continue;
    }
    if (k == samples || y[k] * y[k + 1] >= 0) continue;
    double lo = u[k], hi = u[k + 1], ylo = y[k];
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      double mid = 0.5 * (lo + hi), ym = h(mid);
      if (ym == 0.0) {
        lo = hi = mid;
        break;
      }
      if (sign(ym) == sign(ylo)) lo = mid, ylo = ym;
      else hi = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

double collar_width(const BoundaryModel& b, const std::vector<Eigen::VectorXd>& zeros) {
  double eps = 1.0;
  if (b.dim() == 1) {
    const auto& ends = b.endpoints();
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j)
        eps = std::min(eps, 0.25 * (ends[i].position - ends[j].position).norm());
  } else {
    const auto& pieces = b.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].outer) eps = std::min(eps, 0.25 * pieces[i].radius);
      for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        double d = (pieces[i].center - pieces[j].center).norm();
        double gap = std::min(std::abs(d - (pieces[i].radius + pieces[j].radius)),
                              std::abs(d - std::abs(pieces[i].radius - pieces[j].radius)));
        eps = std::min(eps, 0.25 * gap);
      }
    }
  }
  for (const auto& z : zeros) eps = std::min(eps, 0.5 * b.distance(z));
  return eps;
}

}  // namespace

double bump(double v, double s) {
  double w = std::abs(v);
  if (w <= 0.5 * s) return 1.0;
  if (w >= s) return 0.0;
  double t = (w - 0.5 * s) / (0.5 * s);
  return 1.0 - t * t * (3.0 - 2.0 * t);
}

DoubledField::DoubledField(FieldExpr base, BoundaryModel boundary, CollarChart collar, std::vector<BoundaryZero> zeros)
    : base_(std::move(base)), boundary_(std::move(boundary)), collar_(std::move(collar)), zeros_(std::move(zeros)) {}

Eigen::VectorXd DoubledField::position(int piece, double u, double v) const {
  const double w = std::abs(v);
  if (dim() == 1) {
    const auto& e = boundary_.endpoints()[piece];
    return e.position - w * e.normal;
  }
  const auto& p = boundary_.pieces()[piece];
  return Eigen::VectorXd(p.position(u) - w * p.normal(u));
}

Eigen::VectorXd DoubledField::base_components(int piece, double u, double v) const {
  const double w = std::abs(v);
  Eigen::VectorXd y = base_.evaluate(position(piece, u, w));
  if (dim() == 1) {
    Eigen::VectorXd out(1);
    out(0) = -y.dot(boundary_.endpoints()[piece].normal);
    return out;
  }
  const auto& p = boundary_.pieces()[piece];
  Eigen::Matrix2d d;
  d.col(0) = p.tangent(u) - w * rot_cw(p.tangent_derivative(u));
  d.col(1) = -p.normal(u);
  return Eigen::VectorXd(d.partialPivLu().solve(Eigen::Vector2d(y)));
}

Eigen::VectorXd DoubledField::components(int piece, double u, double v) const {
  const double w = std::abs(v);
  const double phi = bump(v, collar_.s);
  const double scale = phi * w + 1.0 - phi;
  Eigen::VectorXd at = base_components(piece, u, w);
  Eigen::VectorXd out(dim());
  if (dim() == 1) {
    out(0) = sign(v) * at(0) * scale;
    return out;
  }
  Eigen::VectorXd at0 = phi > 0.0 ? base_components(piece, u, 0.0) : at;
  out(0) = phi * at0(0) + (1.0 - phi) * at(0);
  out(1) = sign(v) * at(1) * scale;
  return out;
}

double DoubledField::z_h(int piece, double u) const {
  const auto& p = boundary_.pieces()[piece];
  return base_.evaluate(p.position(u)).dot(Eigen::VectorXd(p.tangent(u)));
}

Eigen::VectorXd DoubledField::evaluate(int copy, const Eigen::VectorXd& x) const {
  const double mirror = copy == 0 ? 1.0 : -1.0;
  if (dim() == 1) {
    const auto& ends = boundary_.endpoints();
    for (std::size_t i = 0; i < ends.size(); ++i) {
      double w = (x - ends[i].position).norm();
      if (w >= collar_.epsilon) continue;
      Eigen::VectorXd c = components(static_cast<int>(i), 0.0, mirror * w);
      return Eigen::VectorXd(-mirror * c(0) * ends[i].normal);
    }
    return base_.evaluate(x);
  }
  auto loc = boundary_.locate(x, collar_.epsilon);
  if (!loc) return base_.evaluate(x);
  const auto& p = boundary_.pieces()[loc->piece];
  const double w = boundary_.distance(x);
  Eigen::VectorXd c = components(loc->piece, loc->u, mirror * w);
  Eigen::Vector2d du = p.tangent(loc->u) - w * rot_cw(p.tangent_derivative(loc->u));
  return Eigen::VectorXd(c(0) * du - mirror * c(1) * p.normal(loc->u));
}

DoubledField build_doubled_field(const FieldExpr& f, const GroupAction& g, const BoundaryModel& boundary,
                                 const std::vector<Eigen::VectorXd>& interior_zeros, const ExitChain& chain,
                                 const Tolerances& tol, std::optional<double> s) {
  const int n = boundary.dim();
  if (n != 1 && n != 2) fail(ErrorCode::UnsupportedDimension, "doubling is implemented for n = 1 and n = 2 only");
  if (f.dim() != n) fail(ErrorCode::ValidationError, "field arity differs from the complex dimension");
  if (n == 2 && !boundary.smooth())
    fail(ErrorCode::UnsupportedBoundary, "doubling in dimension 2 needs a circular boundary parameterization");
  if (n == 1 && boundary.endpoints().empty()) fail(ErrorCode::EmptyBoundary, "nothing to double");
  if (n == 2 && boundary.pieces().empty()) fail(ErrorCode::EmptyBoundary, "nothing to double");

  CollarChart collar;
  collar.epsilon = collar_width(boundary, interior_zeros);
  if (!(collar.epsilon > 0)) fail(ErrorCode::SupportTooWide, "no room for a boundary collar");
  collar.s = collar.epsilon;  // provisional, for base_components
  DoubledField probe(f, boundary, collar, {});

  // Zeros of Z_h.
  std::vector<BoundaryZero> zeros;
  if (n == 1) {
    for (std::size_t i = 0; i < boundary.endpoints().size(); ++i) {
      BoundaryZero z;
      z.position = boundary.endpoints()[i].position;
      z.piece = static_cast<int>(i);
      z.vertical = probe.base_components(z.piece, 0.0, 0.0)(0);
      z.zh_index = 1;
      zeros.push_back(z);
    }
  } else {
    for (std::size_t i = 0; i < boundary.pieces().size(); ++i) {
      const auto& p = boundary.pieces()[i];
      const int id = static_cast<int>(i);
      auto roots = scan_roots([&](double u) { return probe.z_h(id, u); }, p.length, tol.boundary_samples, tol.newton,
                              p.periodic());
      if (static_cast<int>(roots.size()) > tol.boundary_samples / 4)
        fail(ErrorCode::BoundaryZeroDegenerate, "tangential boundary field has non-isolated zeros");
      for (double u : roots) {
        Eigen::Vector2d x = p.position(u), t = p.tangent(u);
        Eigen::Vector2d y = f.evaluate(x);
        Eigen::Matrix2d j = f.jacobian(x);
        BoundaryZero z;
        z.position = x;
        z.piece = id;
        z.u = u;
        z.zh_derivative = (j * t).dot(t) + y.dot(p.tangent_derivative(u));
        if (std::abs(z.zh_derivative) <= tol.degenerate)
          fail(ErrorCode::BoundaryZeroDegenerate, "degenerate zero of the tangential boundary field");
        z.vertical = -y.dot(p.normal(u));
        z.zh_index = sign(z.zh_derivative);
        zeros.push_back(z);
      }
    }
  }
  for (auto& z : zeros) {
    if (z.vertical == 0.0) fail(ErrorCode::FieldVanishesOnBoundary, "field vanishes on the boundary");
    z.in_exit = z.vertical < 0;
  }

  // Tangency bound s0.
  std::vector<const BoundaryPoint*> gamma;
  if (!chain.levels.empty() && chain.levels.front().level == 1)
    for (const auto& pt : chain.levels.front().gamma) gamma.push_back(&pt);
  collar.s0 = collar.epsilon;
  if (n == 2 && !gamma.empty()) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto* pt : gamma) m = std::min(m, std::abs(probe.base_components(pt->piece, pt->u, 0.0)(0)));
    for (int j = 1; j <= kDepthLevels; ++j) {
      double w = collar.epsilon * j / kDepthLevels;
      bool ok = std::all_of(gamma.begin(), gamma.end(), [&](const BoundaryPoint* pt) {
        return std::abs(probe.base_components(pt->piece, pt->u, 0.0)(0) -
                        probe.base_components(pt->piece, pt->u, w)(0)) < 0.5 * m;
      });
      if (!ok) {
        collar.s0 = collar.epsilon * (j - 1) / kDepthLevels;
        break;
      }
    }
  }

  // Per-zero bounds: the vertical component keeps its sign on a boundary
  // ball around the zero times (-s_i, s_i).
  for (const auto& z : zeros) {
    std::vector<double> us{z.u};
    if (n == 2) {
      const auto& p = boundary.pieces()[z.piece];
      double r = 0.25 * p.length;
      for (const auto* pt : gamma)
        if (pt->piece == z.piece) r = std::min(r, 0.5 * cyclic_gap(pt->u, z.u, p.length));
      us.clear();
      for (int k = 0; k < kBallSamples; ++k) us.push_back(z.u - r + 2.0 * r * k / (kBallSamples - 1));
    }
    const int want = sign(z.vertical);
    double si = collar.epsilon;
    for (int j = 0; j <= kDepthLevels; ++j) {
      double w = collar.epsilon * j / kDepthLevels;
      bool ok = std::all_of(us.begin(), us.end(), [&](double u) {
        return sign(probe.base_components(z.piece, u, w)(n - 1)) == want;
      });
      if (!ok) {
        si = collar.epsilon * std::max(j - 1, 0) / kDepthLevels;
        break;
      }
    }
    collar.s_zeros.push_back(si);
  }

  double bound = std::min(collar.epsilon, collar.s0);
  for (double si : collar.s_zeros) bound = std::min(bound, si);
  if (s) {
    if (!(*s > 0.0 && *s < collar.epsilon))
      fail(ErrorCode::SupportTooWide, "s must lie in (0, epsilon) with epsilon = " + std::to_string(collar.epsilon));
    collar.s = *s;
  } else {
    if (!(bound > 0.0)) fail(ErrorCode::SupportTooWide, "no admissible bump support");
    collar.s = 0.5 * bound;
  }

  // Zero-free certificate off v = 0: X_v vanishes only where b does, so it
  // suffices that X_h is nonzero along the curves b(., w) = 0.
  auto zero_free = [&](const DoubledField& d) {
    const double top = n == 1 ? collar.epsilon : d.collar().s;
    for (int k = 1; k <= kCheckLevels; ++k) {
      double w = top * k / kCheckLevels;
      if (n == 1) {
        for (std::size_t i = 0; i < boundary.endpoints().size(); ++i)
          if (std::abs(d.components(static_cast<int>(i), 0.0, w)(0)) <= tol.field) return false;
        continue;
      }
      for (std::size_t i = 0; i < boundary.pieces().size(); ++i) {
        const int id = static_cast<int>(i);
        const auto& p = boundary.pieces()[i];
        auto roots = scan_roots([&](double u) { return d.base_components(id, u, w)(1); }, p.length,
                                tol.boundary_samples, tol.newton, p.periodic());
        for (double u : roots)
          if (std::abs(d.components(id, u, w)(0)) <= tol.field) return false;
      }
    }
    return true;
  };
  for (;;) {
    DoubledField trial(f, boundary, collar, {});
    if (zero_free(trial)) break;
    if (s || collar.halvings >= kMaxHalvings)
      fail(ErrorCode::SupportTooWide, "doubled field vanishes off the boundary inside the collar");
    collar.s *= 0.5;
    ++collar.halvings;
  }

  // Jacobians at boundary zeros, analytic block form against central differences.
  DoubledField shaped(f, boundary, collar, {});
  const double h = std::min(1e-6, collar.s / 8.0);
  for (auto& z : zeros) {
    if (n == 1) {
      z.jacobian_analytic = Eigen::MatrixXd::Constant(1, 1, z.vertical);
      z.jacobian_fd = Eigen::MatrixXd::Constant(
          1, 1, (shaped.components(z.piece, 0.0, h)(0) - shaped.components(z.piece, 0.0, -h)(0)) / (2 * h));
      z.x_index = sign(z.vertical);
      z.fd_index = sign(z.jacobian_fd(0, 0));
      continue;
    }
    z.jacobian_analytic = Eigen::Matrix2d{{z.zh_derivative, 0.0}, {0.0, z.vertical}};
    Eigen::MatrixXd fd(2, 2);
    fd.col(0) = (shaped.components(z.piece, z.u + h, 0.0) - shaped.components(z.piece, z.u - h, 0.0)) / (2 * h);
    fd.col(1) = (shaped.components(z.piece, z.u, h) - shaped.components(z.piece, z.u, -h)) / (2 * h);
    z.jacobian_fd = fd;
    z.x_index = sign(z.jacobian_analytic.determinant());
    z.fd_index = sign(fd.determinant());

    const auto& p = boundary.pieces()[z.piece];
    double r = 0.25 * collar.s;
    for (const auto& o : zeros)
      if (&o != &z && o.piece == z.piece) r = std::min(r, 0.25 * cyclic_gap(o.u, z.u, p.length));
    for (const auto* pt : gamma)
      if (pt->piece == z.piece) r = std::min(r, 0.25 * cyclic_gap(pt->u, z.u, p.length));
    const int id = z.piece;
    z.winding = winding_number_2d(
        [&](const Eigen::Vector2d& uv) -> Eigen::Vector2d { return shaped.components(id, uv.x(), uv.y()); },
        Eigen::Vector2d(z.u, 0.0), r, 64, tol.field);
  }

  std::vector<Eigen::VectorXd> positions;
  for (const auto& z : zeros) positions.push_back(z.position);
  auto orbit = orbit_partition(g, positions, tol.dedup);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    zeros[i].orbit = orbit[i];
    zeros[i].isotropy_order = isotropy_order(g, zeros[i].position, tol.dedup);
    for (const auto& e : g.elements()) {
      Eigen::VectorXd image = e.matrix * zeros[i].position;
      bool found = std::any_of(positions.begin(), positions.end(),
                               [&](const Eigen::VectorXd& q) { return (q - image).norm() < tol.dedup; });
      if (!found) fail(ErrorCode::MismatchDetected, "boundary zero set is not invariant under the group");
    }
  }
  return DoubledField(f, boundary, collar, std::move(zeros));
}

DoubleReport double_index_report(const DoubledField& d, const QuotientPresentation& p, const IndexSum& index,
                                 const ExitChain& chain, const Tolerances& tol) {
  (void)tol;
  DoubleReport r;
  r.zeros = d.zeros();
  const Rational a = index.total;
  const int order = p.action.order();
  auto line = [&](std::string label, Rational lhs, Rational rhs) {
    bool ok = lhs == rhs;
    r.lines.push_back({label, lhs, rhs, ok});
    if (!ok && r.passed) {
      r.passed = false;
      r.first_failure = label;
    }
  };

  Rational up_boundary(0), up_plus(0), up_minus(0);
  std::vector<char> seen(r.zeros.size() + 1, 0);
  for (std::size_t i = 0; i < r.zeros.size(); ++i) {
    const auto& z = r.zeros[i];
    const std::string tag = "[" + std::to_string(i) + "]";
    line("sign_rule" + tag, Rational(z.x_index), Rational(z.in_exit ? -z.zh_index : z.zh_index));
    line("fd_jacobian" + tag, Rational(z.fd_index), Rational(z.x_index));
    double scale = std::max(1.0, z.jacobian_analytic.cwiseAbs().maxCoeff());
    bool close = (z.jacobian_fd - z.jacobian_analytic).cwiseAbs().maxCoeff() <= 1e-4 * scale;
    line("block_jacobian" + tag, Rational(close ? 1 : 0), Rational(1));
    if (d.dim() == 2) line("winding" + tag, Rational(z.winding), Rational(z.fd_index));

    up_boundary += Rational(z.x_index, order);
    (z.in_exit ? up_minus : up_plus) += Rational(z.zh_index, order);
    if (seen[z.orbit]) continue;
    seen[z.orbit] = 1;
    r.boundary_sum += Rational(z.x_index, z.isotropy_order);
    (z.in_exit ? r.zh_minus : r.zh_plus) += Rational(z.zh_index, z.isotropy_order);
  }
  line("orbit_stabilizer_boundary", r.boundary_sum, up_boundary);
  line("orbit_stabilizer_zh_plus", r.zh_plus, up_plus);
  line("orbit_stabilizer_zh_minus", r.zh_minus, up_minus);

  r.interior = 2 * a;
  r.total = r.interior + r.boundary_sum;
  r.chi_q = chi_orb(p);
  r.chi_boundary = chi_orb(boundary_presentation(p));
  r.chi_double = chi_orb(regularize(double_complex(p)).presentation);
  const Rational half(1, 2);

  line("index_equals_chi_double", r.total, r.chi_double);
  line("additivity_double", r.chi_double, 2 * r.chi_q - r.chi_boundary);
  line("double_split", r.total, 2 * a + r.zh_plus - r.zh_minus);
  line("split_equals_chi", 2 * r.chi_q - r.chi_boundary, 2 * a + r.zh_plus - r.zh_minus);
  line("boundary_closed", r.chi_boundary, r.zh_plus + r.zh_minus);
  line("solve_step_1", a, r.chi_q + half * (-r.chi_boundary + r.zh_minus - r.zh_plus));
  line("solve_step_2", a, r.chi_q + half * (-r.chi_boundary + 2 * r.zh_minus - (r.zh_plus + r.zh_minus)));
  line("solve_step_3", a, r.chi_q + half * (-2 * r.chi_boundary + 2 * r.zh_minus));
  line("solve_step_4", a, r.chi_q - r.chi_boundary + r.zh_minus);
  line("solve_step_5", a, chi_orb_relative(p) + r.zh_minus);
  line("recursion", r.zh_minus, chain.total);
  return r;
}

DoubleReport verify_double_index(const DoubledField& d, const QuotientPresentation& p, const IndexSum& index,
                                 const ExitChain& chain, const Tolerances& tol) {
  DoubleReport r = double_index_report(d, p, index, chain, tol);
  if (!r.passed) fail(ErrorCode::MismatchDetected, "double bookkeeping failed at " + r.first_failure);
  return r;
}

}  // namespace orbidx
