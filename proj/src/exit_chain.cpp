#include "orbidx/exit_chain.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace orbidx {

namespace {

using Piece = BoundaryModel::Piece;

Eigen::Vector2d rot_cw(const Eigen::Vector2d& v) { return {v.y(), -v.x()}; }

struct Probe {
  Eigen::Vector2d position, normal, tangent, field;
  double n = 0.0;
};

Probe probe(const FieldExpr& f, const Piece& p, double u) {
  Probe out;
  out.position = p.position(u);
  out.normal = p.normal(u);
  out.tangent = p.tangent(u);
  out.field = f.evaluate(out.position);
  out.n = out.field.dot(out.normal);
  return out;
}

int sign(double x) { return (x > 0) - (x < 0); }

// Sampling state for one pass over the boundary. Issues are collected so
// verify_generic_contact can list all of them; compute_chain throws the first.
class Scanner {
 public:
  Scanner(const FieldExpr& f, const BoundaryModel& b, const Tolerances& tol) : f_(f), b_(b), tol_(tol) {}

  struct LoopRoots {
    std::vector<double> t;
    std::vector<BoundaryPoint> points;
    int base_sign = 0;  // sign of N at t = 0
  };

  std::vector<LoopRoots> scan() {
    std::vector<LoopRoots> out;
    for (const auto& loop : b_.loops()) out.push_back(scan_loop(loop));
    return out;
  }

  std::vector<ContactIssue> issues;

 private:
  void issue(ErrorCode code, const std::string& msg, const Eigen::Vector2d& at) {
    issues.push_back({code, msg, Eigen::VectorXd(at)});
  }

  BoundaryPoint make_point(int piece, double u) {
    const Piece& p = b_.pieces()[piece];
    Probe pr = probe(f_, p, u);
    Eigen::Matrix2d j = f_.jacobian(pr.position);
    Eigen::Vector2d dn = rot_cw(p.tangent_derivative(u));
    BoundaryPoint bp;
    bp.position = pr.position;
    bp.normal = pr.normal;
    bp.tangent = pr.tangent;
    bp.piece = piece;
    bp.u = u;
    bp.normal_component = pr.n;
    bp.tangential_component = pr.field.dot(pr.tangent);
    bp.normal_derivative = (j * pr.tangent).dot(pr.normal) + pr.field.dot(dn);
    return bp;
  }

  LoopRoots scan_loop(const std::vector<int>& loop) {
    LoopRoots out;
    double offset = 0.0;
    int prev_end_sign = 0;
    bool first_piece = true;
    int first_start_sign = 0;
    for (int id : loop) {
      const Piece& p = b_.pieces()[id];
      const int s = tol_.boundary_samples;
      std::vector<double> u(s + 1), n(s + 1);
      bool bad = false;
      for (int k = 0; k <= s; ++k) {
        u[k] = p.length * k / s;
        Probe pr = probe(f_, p, u[k]);
        if (pr.field.norm() <= tol_.field) {
          issue(ErrorCode::FieldVanishesOnBoundary, "field vanishes on the boundary", pr.position);
          bad = true;
          break;
        }
        n[k] = pr.n;
      }
      if (bad) {
        offset += p.length;
        continue;
      }
      if (first_piece) {
        first_start_sign = sign(n[0]);
        out.base_sign = first_start_sign;
      } else if (prev_end_sign != sign(n[0]) || sign(n[0]) == 0) {
        issue(ErrorCode::NotGeneric, "normal component changes sign at a corner", p.position(0));
      }
      first_piece = false;
      prev_end_sign = sign(n[s]);

      int found = 0;
      for (int k = 0; k < s; ++k) {
        std::optional<double> root;
        if (n[k] == 0.0) {
          root = u[k];
        } else if (n[k] * n[k + 1] < 0) {
          double lo = u[k], hi = u[k + 1], nlo = n[k];
          for (int it = 0; it < 200 && hi - lo > tol_.newton; ++it) {
            double mid = 0.5 * (lo + hi);
            double nm = probe(f_, p, mid).n;
            if (nm == 0.0) {
              lo = hi = mid;
              break;
            }
            if (sign(nm) == sign(nlo)) lo = mid, nlo = nm;
            else hi = mid;
          }
          root = 0.5 * (lo + hi);
        }
        if (!root) continue;
        if (++found > s / 4) {
          issue(ErrorCode::NotGeneric, "tangency set is not finite", p.position(*root));
          break;
        }
        BoundaryPoint bp = make_point(id, *root);
        if (std::abs(bp.normal_derivative) <= tol_.degenerate) {
          issue(ErrorCode::NotGeneric, "tangency is not transversal (dN/du = 0)", bp.position);
          break;
        }
        if (std::abs(bp.tangential_component) <= tol_.degenerate) {
          issue(ErrorCode::NotGeneric, "field vanishes tangentially at a tangency point", bp.position);
          break;
        }
        out.t.push_back(offset + *root);
        out.points.push_back(std::move(bp));
      }
      offset += p.length;
    }
    if (loop.size() > 1 && prev_end_sign != first_start_sign)
      issue(ErrorCode::NotGeneric, "normal component changes sign at a corner", b_.pieces()[loop.front()].position(0));
    return out;
  }

  const FieldExpr& f_;
  const BoundaryModel& b_;
  const Tolerances& tol_;
};

double loop_length(const BoundaryModel& b, int loop) {
  double l = 0.0;
  for (int id : b.loops()[loop]) l += b.pieces()[id].length;
  return l;
}

Eigen::Vector2d loop_position(const BoundaryModel& b, int loop, double t) {
  const auto& ids = b.loops()[loop];
  for (int id : ids) {
    const auto& p = b.pieces()[id];
    if (t <= p.length) return p.position(t);
    t -= p.length;
  }
  const auto& last = b.pieces()[ids.back()];
  return last.position(last.length);
}

double loop_normal_component(const FieldExpr& f, const BoundaryModel& b, int loop, double t) {
  const auto& ids = b.loops()[loop];
  for (int id : ids) {
    const auto& p = b.pieces()[id];
    if (t <= p.length) return normal_component(f, b, id, t);
    t -= p.length;
  }
  return normal_component(f, b, ids.back(), b.pieces()[ids.back()].length);
}

// Orbit numbers and isotropy orders for a point-like set, plus the
// orbit-weighted chi (sum of 1/|G_x| over orbit representatives).
Rational assign_orbits(const GroupAction& g, std::vector<Eigen::VectorXd> positions, std::vector<int>& orbit,
                       std::vector<int>& isotropy, const Tolerances& tol, const char* what) {
  orbit = orbit_partition(g, positions, tol.dedup);
  isotropy.assign(positions.size(), 1);
  Rational weighted(0);
  std::vector<char> seen(positions.size() + 1, 0);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    isotropy[i] = isotropy_order(g, positions[i], tol.dedup);
    if (!seen[orbit[i]]) {
      seen[orbit[i]] = 1;
      weighted += Rational(1, isotropy[i]);
    }
    for (const auto& e : g.elements()) {
      Eigen::VectorXd image = e.matrix * positions[i];
      bool found = std::any_of(positions.begin(), positions.end(),
                               [&](const Eigen::VectorXd& q) { return (q - image).norm() < tol.dedup; });
      if (!found) fail(ErrorCode::MismatchDetected, std::string(what) + " is not invariant under the group");
    }
  }
  return weighted;
}

void check_normals_fixed(const GroupAction& g, const std::vector<BoundaryPoint>& pts, const Tolerances& tol) {
  for (const auto& p : pts) {
    if (p.isotropy_order == 1) continue;
    for (const auto& e : g.elements()) {
      if ((e.matrix * p.position - p.position).norm() >= tol.dedup) continue;
      if ((e.matrix * p.normal - p.normal).norm() >= tol.dedup)
        fail(ErrorCode::MismatchDetected, "isotropy group does not fix the outward normal");
    }
  }
}

Rational points_orbits(const GroupAction& g, std::vector<BoundaryPoint>& pts, const Tolerances& tol,
                       const char* what, int& orbits) {
  std::vector<Eigen::VectorXd> pos;
  for (const auto& p : pts) pos.push_back(p.position);
  std::vector<int> orbit, iso;
  Rational w = assign_orbits(g, pos, orbit, iso, tol, what);
  orbits = pts.empty() ? 0 : *std::max_element(orbit.begin(), orbit.end()) + 1;
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].orbit = orbit[i], pts[i].isotropy_order = iso[i];
  check_normals_fixed(g, pts, tol);
  return w;
}

Rational arcs_orbits(const GroupAction& g, std::vector<Arc>& arcs, const Tolerances& tol, int& orbits) {
  std::vector<Eigen::VectorXd> pos;
  std::vector<int> idx;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (!arcs[i].full_loop) pos.push_back(arcs[i].midpoint), idx.push_back(static_cast<int>(i));
  std::vector<int> orbit, iso;
  Rational w = assign_orbits(g, pos, orbit, iso, tol, "exit arc set");
  orbits = pos.empty() ? 0 : *std::max_element(orbit.begin(), orbit.end()) + 1;
  for (std::size_t i = 0; i < idx.size(); ++i) arcs[idx[i]].orbit = orbit[i], arcs[idx[i]].isotropy_order = iso[i];
  return w;
}

void require_dim(const FieldExpr& f, const BoundaryModel& b) {
  if (b.dim() < 1 || b.dim() > 2)
    fail(ErrorCode::UnsupportedDimension, "exit chains are implemented for n = 1 and n = 2 only");
  if (f.dim() != b.dim()) fail(ErrorCode::ValidationError, "field arity differs from the complex dimension");
}

ExitChain chain_1d(const FieldExpr& f, const GroupAction& g, const BoundaryModel& b, const Tolerances& tol) {
  ExitChain out;
  out.dim = 1;
  ChainLevel level;
  for (const auto& e : b.endpoints()) {
    Eigen::VectorXd y = f.evaluate(e.position);
    if (y.norm() <= tol.field) fail(ErrorCode::FieldVanishesOnBoundary, "field vanishes at an endpoint");
    BoundaryPoint p;
    p.position = e.position;
    p.normal = e.normal;
    p.normal_component = y.dot(e.normal);
    (p.normal_component > 0 ? level.exit_points : level.entry_points).push_back(p);
  }
  int entry_orbits = 0;
  Rational weighted = points_orbits(g, level.exit_points, tol, "exit set", level.exit_orbits);
  points_orbits(g, level.entry_points, tol, "entry set", entry_orbits);
  level.chi_exit = static_cast<int>(level.exit_points.size());
  level.chi_entry = static_cast<int>(level.entry_points.size());
  level.chi_term = Rational(level.chi_exit, g.order());
  if (weighted != level.chi_term)
    fail(ErrorCode::MismatchDetected, "orbit-weighted exit term differs from the upstairs count over |G|");
  if (!level.exit_points.empty()) out.levels.push_back(std::move(level));
  return out;
}

ExitChain chain_2d(const FieldExpr& f, const GroupAction& g, const BoundaryModel& b, const Tolerances& tol) {
  Scanner scanner(f, b, tol);
  auto loops = scanner.scan();
  if (!scanner.issues.empty()) fail(scanner.issues.front().code, scanner.issues.front().message);

  ExitChain out;
  out.dim = 2;
  ChainLevel one;
  one.level = 1;
  for (std::size_t l = 0; l < loops.size(); ++l) {
    const int loop = static_cast<int>(l);
    const auto& roots = loops[l];
    const double len = loop_length(b, loop);
    if (roots.t.empty()) {
      Arc arc{loop, 0.0, len, true, Eigen::VectorXd(loop_position(b, loop, 0.0)), 1, -1};
      (roots.base_sign > 0 ? one.exit_arcs : one.entry_arcs).push_back(arc);
      continue;
    }
    if (roots.t.size() % 2 != 0)
      fail(ErrorCode::NotGeneric, "odd number of tangency points on a boundary loop");
    const std::size_t m = roots.t.size();
    int prev = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double a = roots.t[i], z = roots.t[(i + 1) % m];
      double span = z > a ? z - a : z + len - a;
      double mid = std::fmod(a + 0.5 * span, len);
      int sg = sign(loop_normal_component(f, b, loop, mid));
      if (sg == 0 || sg == prev) fail(ErrorCode::NotGeneric, "normal component does not alternate between tangencies");
      prev = sg;
      Arc arc{loop, a, z, false, Eigen::VectorXd(loop_position(b, loop, mid)), 1, -1};
      (sg > 0 ? one.exit_arcs : one.entry_arcs).push_back(arc);
    }
    for (const auto& p : roots.points) one.gamma.push_back(p);
  }
  auto count_arcs = [](const std::vector<Arc>& arcs) {
    return static_cast<int>(std::count_if(arcs.begin(), arcs.end(), [](const Arc& a) { return !a.full_loop; }));
  };
  one.chi_exit = count_arcs(one.exit_arcs);
  one.chi_entry = count_arcs(one.entry_arcs);
  one.chi_gamma = static_cast<int>(one.gamma.size());
  one.chi_term = Rational(one.chi_exit - one.chi_gamma, g.order());
  Rational w_exit = arcs_orbits(g, one.exit_arcs, tol, one.exit_orbits);
  int entry_orbits = 0;
  arcs_orbits(g, one.entry_arcs, tol, entry_orbits);
  Rational w_gamma = points_orbits(g, one.gamma, tol, "tangency set", one.gamma_orbits);
  if (w_exit - w_gamma != one.chi_term)
    fail(ErrorCode::MismatchDetected, "orbit-weighted level-1 term differs from the upstairs count over |G|");

  ChainLevel two;
  two.level = 2;
  for (const auto& p : one.gamma)
    (sign(p.tangential_component) * sign(p.normal_derivative) < 0 ? two.exit_points : two.entry_points).push_back(p);
  two.chi_exit = static_cast<int>(two.exit_points.size());
  two.chi_entry = static_cast<int>(two.entry_points.size());
  two.chi_term = Rational(two.chi_exit, g.order());
  int entry2 = 0;
  Rational w2 = points_orbits(g, two.exit_points, tol, "level-2 exit set", two.exit_orbits);
  points_orbits(g, two.entry_points, tol, "level-2 entry set", entry2);
  if (w2 != two.chi_term)
    fail(ErrorCode::MismatchDetected, "orbit-weighted level-2 term differs from the upstairs count over |G|");

  bool one_nonempty = !one.exit_arcs.empty();
  bool two_nonempty = !two.exit_points.empty();
  if (one_nonempty) {
    out.levels.push_back(std::move(one));
    if (two_nonempty) out.levels.push_back(std::move(two));
  }
  return out;
}

}  // namespace

double normal_component(const FieldExpr& f, const BoundaryModel& boundary, int piece, double u) {
  return probe(f, boundary.pieces().at(piece), u).n;
}

double normal_component(const FieldExpr& f, const BoundaryModel::Endpoint& endpoint) {
  return f.evaluate(endpoint.position).dot(endpoint.normal);
}

ExitChain compute_chain(const FieldExpr& f, const GroupAction& g, const BoundaryModel& boundary,
                        const Tolerances& tol) {
  require_dim(f, boundary);
  ExitChain out = boundary.dim() == 1 ? chain_1d(f, g, boundary, tol) : chain_2d(f, g, boundary, tol);
  for (const auto& l : out.levels) {
    out.chi_terms.push_back(l.chi_term);
    out.total += l.chi_term;
  }
  return out;
}

ContactReport verify_generic_contact(const FieldExpr& f, const GroupAction& g, const BoundaryModel& boundary,
                                     const Tolerances& tol) {
  ContactReport report;
  try {
    require_dim(f, boundary);
  } catch (const Error& e) {
    report.issues.push_back({e.code(), e.what(), Eigen::VectorXd()});
    report.passed = false;
    return report;
  }
  if (boundary.dim() == 2) {
    Scanner scanner(f, boundary, tol);
    scanner.scan();
    report.issues = std::move(scanner.issues);
  }
  if (report.issues.empty()) {
    try {
      compute_chain(f, g, boundary, tol);
    } catch (const Error& e) {
      report.issues.push_back({e.code(), e.what(), Eigen::VectorXd()});
    }
  }
  report.passed = report.issues.empty();
  return report;
}

}  // namespace orbidx
