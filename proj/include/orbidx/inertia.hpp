#pragma once

#include <vector>

#include "orbidx/exit_chain.hpp"
#include "orbidx/group_action.hpp"
#include "orbidx/rational.hpp"
#include "orbidx/simplicial.hpp"
#include "orbidx/tolerances.hpp"
#include "orbidx/vector_field.hpp"

namespace orbidx {

/// One sector M^g / C(g) of the inertia orbifold.
struct Sector {
  int class_rep = 0;   // lowest element id of the conjugacy class
  int class_size = 1;
  SimplicialComplex fixed_complex;  // M^g, in the parent's vertex pool
  GroupAction centralizer;          // C(g), ids recorded in parent_ids()
  int chi_fixed = 0;                // chi(M^g)
  Rational chi_orb_value{0};        // chi(M^g) / |C(g)|
};

/// One sector per conjugacy class, in class order. P must be regular.
std::vector<Sector> build_sectors(const QuotientPresentation& p);

/// Sum of the sector characteristics. Throws InertiaMismatch unless it
/// equals chi_underlying(P).
Rational chi_orb_inertia(const QuotientPresentation& p);

struct SectorIndex {
  int class_rep = 0;
  int fixed_dim = 0;        // dimension of the fixed subspace of A_g
  int zeros = 0;            // upstairs zeros lying in M^g
  int upstairs_index = 0;   // sum of induced-field indices over those zeros
  int centralizer_order = 1;
  Rational orb_index{0};    // upstairs_index / |C(g)|
};

struct CorollaryReport {
  std::vector<SectorIndex> sectors;
  Rational lhs{0};               // Ind(induced field; inertia orbifold)
  int chi_underlying_q = 0;      // chi of the underlying space of Q
  int chi_underlying_boundary = 0;
  std::vector<int> chain_terms;  // chi(X_{R_-^i}) - chi(X_{Gamma^i}) from orbit counts
  Rational rhs{0};
  bool passed = false;
};

/// Index of Y restricted to the fixed subspace of `g` at a zero `z`:
/// sign det(B^T J B) for an orthonormal basis B of that subspace, +1 when
/// the subspace is a point. Throws DegenerateZero.
int induced_index(const FieldExpr& f, const GroupAction& g, int element, const Eigen::VectorXd& z,
                  const Tolerances& tol = {});

/// Sector-wise index sum of the induced field against the underlying-space
/// right side. `index` and `chain` come from the main pipeline on P.
/// Throws TangencyViolation when Y is not tangent to some M^g, and
/// MismatchDetected on a failed identity or a non-fixed exit normal.
CorollaryReport verify_corollary(const FieldExpr& f, const QuotientPresentation& p, const IndexSum& index,
                                 const ExitChain& chain, const Tolerances& tol = {});

}  // namespace orbidx
