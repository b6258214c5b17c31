#include "orbidx/inertia.hpp"

#include "orbidx/errors.hpp"
#include "orbidx/euler_satake.hpp"

namespace orbidx {

std::vector<Sector> build_sectors(const QuotientPresentation& p) {
  if (!p.regular) fail(ErrorCode::RequiresRegular, "build_sectors needs a regular action");
  std::vector<Sector> out;
  for (const auto& cls : conjugacy_classes(p.action)) {
    Sector s{cls.front(), static_cast<int>(cls.size()), fixed_subcomplex(p, cls.front()),
             centralizer(p.action, cls.front())};
    s.chi_fixed = euler_characteristic(s.fixed_complex);
    s.chi_orb_value = Rational(s.chi_fixed, s.centralizer.order());
    out.push_back(std::move(s));
  }
  return out;
}

Rational chi_orb_inertia(const QuotientPresentation& p) {
  Rational sum(0);
  for (const auto& s : build_sectors(p)) sum += s.chi_orb_value;
  const int expected = chi_underlying(p);
  if (sum != Rational(expected))
    fail(ErrorCode::InertiaMismatch,
         "sector sum " + to_string(sum) + " differs from chi of the underlying space " + std::to_string(expected));
  return sum;
}

int induced_index(const FieldExpr& f, const GroupAction& g, int element, const Eigen::VectorXd& z,
                  const Tolerances& tol) {
  Eigen::MatrixXd b = fixed_space_basis(g.element(element).matrix);
  if (b.cols() == 0) return 1;
  Eigen::MatrixXd j = b.transpose() * f.jacobian(z) * b;
  double det = j.determinant();
  if (std::abs(det) <= tol.degenerate) fail(ErrorCode::DegenerateZero, "induced field has a degenerate zero");
  return det > 0 ? 1 : -1;
}

CorollaryReport verify_corollary(const FieldExpr& f, const QuotientPresentation& p, const IndexSum& index,
                                 const ExitChain& chain, const Tolerances& tol) {
  CorollaryReport r;
  const auto& group = p.action;
  for (const auto& s : build_sectors(p)) {
    const Eigen::MatrixXd& a = group.element(s.class_rep).matrix;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    SectorIndex si;
    si.class_rep = s.class_rep;
    si.fixed_dim = fixed_space_dim(a);
    si.centralizer_order = s.centralizer.order();

    if (p.complex.has_coordinates())
      for (int v : s.fixed_complex.vertex_ids()) {
        const Eigen::VectorXd& x = p.complex.coordinate(v);
        if (((a - id) * f.evaluate(x)).norm() > tol.field)
          fail(ErrorCode::TangencyViolation, "field is not tangent to the fixed set of element " +
                                                 std::to_string(s.class_rep));
      }
    for (const auto& rec : index.records) {
      if ((a * rec.location - rec.location).norm() >= tol.dedup) continue;
      if (((a - id) * f.evaluate(rec.location)).norm() > tol.field)
        fail(ErrorCode::TangencyViolation, "field is not tangent to a fixed set at a zero");
      ++si.zeros;
      if (si.fixed_dim == a.rows() && !rec.morse_lambda) si.upstairs_index += rec.local_index;
      else si.upstairs_index += induced_index(f, group, s.class_rep, rec.location, tol);
    }
    si.orb_index = Rational(si.upstairs_index, si.centralizer_order);
    r.lhs += si.orb_index;

    // Exit behaviour is shared across sectors: boundary points fixed by g
    // keep their outward normal.
    for (const auto& level : chain.levels) {
      std::vector<const BoundaryPoint*> pts;
      for (const auto& q : level.gamma) pts.push_back(&q);
      for (const auto& q : level.exit_points) pts.push_back(&q);
      for (const auto* q : pts) {
        if ((a * q->position - q->position).norm() >= tol.dedup) continue;
        if ((a * q->normal - q->normal).norm() >= tol.dedup)
          fail(ErrorCode::MismatchDetected, "an element fixing a boundary point moves its outward normal");
      }
    }
    r.sectors.push_back(si);
  }

  r.chi_underlying_q = chi_underlying(p);
  r.chi_underlying_boundary = chi_underlying(boundary_presentation(p));
  int rhs = r.chi_underlying_q - r.chi_underlying_boundary;
  for (const auto& level : chain.levels) {
    r.chain_terms.push_back(level.exit_orbits - level.gamma_orbits);
    rhs += r.chain_terms.back();
  }
  r.rhs = Rational(rhs);
  r.passed = r.lhs == r.rhs;
  return r;
}

}  // namespace orbidx
