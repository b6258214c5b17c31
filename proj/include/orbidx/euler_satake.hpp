#pragma once

#include "orbidx/rational.hpp"
#include "orbidx/simplicial.hpp"

namespace orbidx {

/// Isotropy-weighted orbit sum: sum over simplex orbits of
/// (-1)^dim / |G_sigma|, with G_sigma the vertexwise stabilizer of a
/// representative. Cross-checked against chi_orb_oracle; a disagreement
/// throws MismatchDetected.
Rational chi_orb(const QuotientPresentation& p);

/// chi(M) / |G|, computed from simplex counts alone.
Rational chi_orb_oracle(const QuotientPresentation& p);

/// chi_orb(Q) - chi_orb(boundary of Q).
Rational chi_orb_relative(const QuotientPresentation& p);

/// Euler characteristic of the underlying space M/G.
int chi_underlying(const QuotientPresentation& p);

/// Order of the vertexwise stabilizer of `s`.
int vertexwise_stabilizer_order(const GroupAction& g, const Simplex& s);

}  // namespace orbidx
