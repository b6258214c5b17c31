#include "orbidx/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "orbidx/errors.hpp"

namespace orbidx {

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

// Damped Newton from one seed; nullopt on divergence or evaluation failure.
// Plain Newton steps past the residual test while the residual keeps
// dropping; pulls degenerate roots in from ~sqrt(tol).
Eigen::VectorXd polish(const FieldExpr& f, Eigen::VectorXd x) {
  double r = f.evaluate(x).norm();
  for (int it = 0; it < 100 && r > 0.0; ++it) {
    Eigen::VectorXd dx = f.jacobian(x).completeOrthogonalDecomposition().solve(-f.evaluate(x));
    if (!dx.allFinite() || dx.norm() <= 1e-15 * (1.0 + x.norm())) break;
    Eigen::VectorXd y = x + dx;
    double ry = f.evaluate(y).norm();
    if (!(ry < r)) break;
    x = y;
    r = ry;
  }
  return x;
}

std::optional<Eigen::VectorXd> newton(const FieldExpr& f, Eigen::VectorXd x, double tol) {
  try {
    for (int it = 0; it < 200; ++it) {
      Eigen::VectorXd fx = f.evaluate(x);
      double r = fx.norm();
      if (r < tol) return polish(f, x);
      Eigen::MatrixXd j = f.jacobian(x);
      Eigen::VectorXd dx = j.completeOrthogonalDecomposition().solve(-fx);
      double t = 1.0;
      Eigen::VectorXd y = x + dx;
      while (t > 1e-10) {
        y = x + t * dx;
        if (f.evaluate(y).norm() < r) break;
        t *= 0.5;
      }
      if (t <= 1e-10 || !y.allFinite() || y.norm() > 1e6) return std::nullopt;
      x = y;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EvalError) throw;
  }
  return std::nullopt;
}

}  // namespace

FieldExpr::FieldExpr(std::vector<Expr> components) : components_(std::move(components)) {
  const int n = dim();
  if (n == 0) fail(ErrorCode::ValidationError, "vector field needs at least one component");
  for (const auto& c : components_)
    if (c.max_variable() >= n) fail(ErrorCode::ValidationError, "field component uses a variable beyond its arity");
  jacobian_.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jacobian_.push_back(components_[i].derivative(j));
}

FieldExpr FieldExpr::parse(std::span<const std::string> components) {
  std::vector<Expr> exprs;
  for (const auto& c : components) exprs.push_back(parse_expression(c, static_cast<int>(components.size())));
  return FieldExpr(std::move(exprs));
}

Eigen::VectorXd FieldExpr::evaluate(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dim());
  std::span<const double> args(x.data(), static_cast<std::size_t>(x.size()));
  for (int i = 0; i < dim(); ++i) out(i) = components_[i].evaluate(args);
  return out;
}

Eigen::MatrixXd FieldExpr::jacobian(const Eigen::VectorXd& x) const {
  const int n = dim();
  Eigen::MatrixXd out(n, n);
  std::span<const double> args(x.data(), static_cast<std::size_t>(x.size()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = partial(i, j).evaluate(args);
  return out;
}

std::vector<std::string> FieldExpr::to_strings() const {
  std::vector<std::string> out;
  for (const auto& c : components_) out.push_back(c.to_string());
  return out;
}

Eigen::VectorXd evaluate(const FieldExpr& f, const Eigen::VectorXd& x) { return f.evaluate(x); }

EquivarianceReport check_equivariance(const FieldExpr& f, const GroupAction& g, int samples, double tol,
                                      double radius) {
  if (samples < 1) fail(ErrorCode::ValidationError, "equivariance check needs at least one sample");
  if (f.dim() != g.dim()) fail(ErrorCode::ValidationError, "field arity differs from the group dimension");
  EquivarianceReport report;
  const int n = f.dim();
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p(i) = radius * (2.0 * halton(s + 1, kPrimes[i % 12]) - 1.0);
    Eigen::VectorXd fp = f.evaluate(p);
    for (const auto& e : g.elements()) {
      double v = (e.matrix * fp - f.evaluate(e.matrix * p)).norm();
      if (v > report.max_violation) {
        report.max_violation = v;
        report.worst_element = e.id;
      }
    }
  }
  report.passed = report.max_violation <= tol;
  return report;
}

int isotropy_order(const GroupAction& g, const Eigen::VectorXd& x, double tol) {
  int count = 0;
  for (const auto& e : g.elements())
    if ((e.matrix * x - x).norm() < tol) ++count;
  return count;
}

std::vector<int> orbit_partition(const GroupAction& g, std::span<const Eigen::VectorXd> points, double tol) {
  std::vector<int> orbit(points.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (orbit[i] >= 0) continue;
    orbit[i] = next;
    for (const auto& e : g.elements()) {
      Eigen::VectorXd image = e.matrix * points[i];
      for (std::size_t j = 0; j < points.size(); ++j)
        if (orbit[j] < 0 && (points[j] - image).norm() < tol) orbit[j] = next;
    }
    ++next;
  }
  return orbit;
}

ZeroSearch find_zeros(const FieldExpr& f, const GroupAction& g, const BoundaryModel& domain, int grid_density,
                      const Tolerances& tol) {
  if (grid_density < 2) fail(ErrorCode::ValidationError, "grid_density must be at least 2 per unit length");
  const int n = f.dim();
  auto [lo, hi] = domain.bounds();
  std::vector<int> counts(n);
  long total = 1;
  for (int i = 0; i < n; ++i) {
    counts[i] = static_cast<int>(std::ceil((hi(i) - lo(i)) * grid_density)) + 1;
    total *= counts[i];
  }

  ZeroSearch out;
  std::vector<int> idx(n, 0);
  for (long s = 0; s < total; ++s) {
    long rem = s;
    Eigen::VectorXd seed(n);
    for (int i = 0; i < n; ++i) {
      idx[i] = static_cast<int>(rem % counts[i]);
      rem /= counts[i];
      seed(i) = counts[i] == 1 ? lo(i) : lo(i) + (hi(i) - lo(i)) * idx[i] / (counts[i] - 1);
    }
    if (!domain.contains(seed)) continue;
    ++out.seeds;
    auto z = newton(f, seed, tol.newton);
    if (!z) {
      ++out.divergent_seeds;
      continue;
    }
    double d = domain.distance(*z);
    if (d < tol.dedup)
      fail(ErrorCode::ZeroOnBoundary, "zero within " + std::to_string(d) + " of the boundary");
    if (!domain.contains(*z)) continue;
    bool seen = std::any_of(out.zeros.begin(), out.zeros.end(),
                            [&](const Eigen::VectorXd& w) { return (w - *z).norm() < tol.dedup; });
    if (!seen) out.zeros.push_back(*z);
  }
  std::sort(out.zeros.begin(), out.zeros.end(), lex_less);

  for (const auto& z : out.zeros)
    for (const auto& e : g.elements()) {
      Eigen::VectorXd image = e.matrix * z;
      bool found = std::any_of(out.zeros.begin(), out.zeros.end(),
                               [&](const Eigen::VectorXd& w) { return (w - image).norm() < tol.dedup; });
      if (!found) fail(ErrorCode::MismatchDetected, "zero set is not invariant under element " + std::to_string(e.id));
    }
  return out;
}

ZeroRecord orbifold_index_at(const FieldExpr& f, const Eigen::VectorXd& z, const GroupAction& g,
                             const Tolerances& tol) {
  Eigen::MatrixXd j = f.jacobian(z);
  double det = j.determinant();
  if (std::abs(det) <= tol.degenerate) fail(ErrorCode::DegenerateZero, "|det J| = " + std::to_string(std::abs(det)));
  Eigen::EigenSolver<Eigen::MatrixXd> es(j, false);
  int lambda = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i).real() < 0) ++lambda;

  ZeroRecord r;
  r.location = z;
  r.isotropy_order = isotropy_order(g, z, tol.group);
  r.morse_lambda = lambda;
  r.det_sign = det > 0 ? 1 : -1;
  r.local_index = r.det_sign;
  r.orb_index = Rational(r.det_sign, r.isotropy_order);
  if ((lambda % 2 == 0 ? 1 : -1) != r.det_sign)
    fail(ErrorCode::MismatchDetected, "(-1)^lambda disagrees with sign(det J)");
  return r;
}

int winding_number_2d(const PlanarField& f, const Eigen::Vector2d& center, double radius, int min_samples,
                      double tol_field) {
  constexpr double pi = std::numbers::pi;
  for (int n = std::max(min_samples, 8); n <= (1 << 22); n *= 2) {
    std::vector<double> angle(n);
    for (int k = 0; k < n; ++k) {
      double t = 2.0 * pi * k / n;
      Eigen::Vector2d v = f(center + radius * Eigen::Vector2d(std::cos(t), std::sin(t)));
      if (v.norm() <= tol_field)
        fail(ErrorCode::FieldVanishesOnCircle, "|F| = " + std::to_string(v.norm()) + " on the circle");
      angle[k] = std::atan2(v.y(), v.x());
    }
    double sum = 0.0, worst = 0.0;
    for (int k = 0; k < n; ++k) {
      double step = angle[(k + 1) % n] - angle[k];
      step = std::remainder(step, 2.0 * pi);
      worst = std::max(worst, std::abs(step));
      sum += step;
    }
    if (worst < pi / 2) return static_cast<int>(std::lround(sum / (2.0 * pi)));
  }
  fail(ErrorCode::FieldVanishesOnCircle, "angular steps never resolved below pi/2");
}

int winding_number_2d(const FieldExpr& f, const Eigen::Vector2d& center, double radius, int min_samples,
                      double tol_field) {
  if (f.dim() != 2) fail(ErrorCode::UnsupportedDimension, "winding number needs a planar field");
  return winding_number_2d([&](const Eigen::Vector2d& p) -> Eigen::Vector2d { return f.evaluate(p); }, center,
                           radius, min_samples, tol_field);
}

IndexSum orbifold_index_sum(const FieldExpr& f, const GroupAction& g, const BoundaryModel& domain,
                            const Tolerances& tol) {
  const auto search = find_zeros(f, g, domain, tol.grid_density, tol);
  IndexSum out;
  const int n = f.dim();
  for (std::size_t i = 0; i < search.zeros.size(); ++i) {
    const auto& z = search.zeros[i];
    try {
      out.records.push_back(orbifold_index_at(f, z, g, tol));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateZero || n != 2) throw;
      double r = std::min(0.1, 0.5 * domain.distance(z));
      for (std::size_t j = 0; j < search.zeros.size(); ++j)
        if (j != i) r = std::min(r, 0.25 * (search.zeros[j] - z).norm());
      ZeroRecord rec;
      rec.location = z;
      rec.isotropy_order = isotropy_order(g, z, tol.dedup);
      rec.local_index = winding_number_2d(f, z.head<2>(), r, 64, tol.field);
      rec.orb_index = Rational(rec.local_index, rec.isotropy_order);
      out.records.push_back(rec);
      out.all_nondegenerate = false;
    }
  }

  std::vector<Eigen::VectorXd> points;
  for (const auto& r : out.records) points.push_back(r.location);
  out.orbit_of = orbit_partition(g, points, tol.dedup);
  int upstairs = 0;
  out.morse_counts.assign(n + 1, Rational(0));
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    const auto& r = out.records[i];
    upstairs += r.local_index;
    bool first = std::find(out.orbit_of.begin(), out.orbit_of.end(), out.orbit_of[i]) - out.orbit_of.begin() ==
                 static_cast<std::ptrdiff_t>(i);
    if (!first) continue;
    out.representatives.push_back(static_cast<int>(i));
    out.total += r.orb_index;
    if (r.morse_lambda) out.morse_counts[*r.morse_lambda] += Rational(1, r.isotropy_order);
  }
  out.upstairs_over_order = Rational(upstairs, g.order());
  if (out.total != out.upstairs_over_order)
    fail(ErrorCode::MismatchDetected, "orbit sum " + to_string(out.total) + " differs from upstairs sum / |G| " +
                                          to_string(out.upstairs_over_order));
  for (int l = 0; l <= n; ++l) out.morse_sum += (l % 2 == 0 ? out.morse_counts[l] : -out.morse_counts[l]);
  if (out.all_nondegenerate && out.morse_sum != out.total)
    fail(ErrorCode::MismatchDetected, "Morse sum differs from the index sum");
  return out;
}

}  // namespace orbidx
