#include "orbidx/euler_satake.hpp"

#include <algorithm>

#include "orbidx/errors.hpp"

namespace orbidx {

int vertexwise_stabilizer_order(const GroupAction& g, const Simplex& s) {
  int count = 0;
  for (const auto& e : g.elements())
    if (std::all_of(s.begin(), s.end(), [&](int v) { return e.vertex_perm[v] == v; })) ++count;
  return count;
}

Rational chi_orb(const QuotientPresentation& p) {
  if (!p.regular) fail(ErrorCode::RequiresRegular, "chi_orb needs a regular action; regularize first");
  const auto q = quotient_complex(p);
  Rational sum(0);
  for (std::size_t i = 0; i < q.representatives.size(); ++i) {
    Rational term(1, vertexwise_stabilizer_order(p.action, q.representatives[i]));
    sum += q.cell_dim(i) % 2 == 0 ? term : -term;
  }
  if (sum != chi_orb_oracle(p))
    fail(ErrorCode::MismatchDetected, "orbit sum " + to_string(sum) + " differs from chi(M)/|G| " +
                                          to_string(chi_orb_oracle(p)));
  return sum;
}

Rational chi_orb_oracle(const QuotientPresentation& p) {
  return Rational(euler_characteristic(p.complex), p.action.order());
}

Rational chi_orb_relative(const QuotientPresentation& p) {
  return chi_orb(p) - chi_orb(boundary_presentation(p));
}

int chi_underlying(const QuotientPresentation& p) { return euler_characteristic(quotient_complex(p)); }

}  // namespace orbidx
