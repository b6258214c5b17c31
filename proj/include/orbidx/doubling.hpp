#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbidx/boundary_model.hpp"
#include "orbidx/exit_chain.hpp"
#include "orbidx/group_action.hpp"
#include "orbidx/rational.hpp"
#include "orbidx/simplicial.hpp"
#include "orbidx/tolerances.hpp"
#include "orbidx/vector_field.hpp"

namespace orbidx {

/// Product collar of the boundary. A collar point is (piece, u, v): piece
/// and arclength u on the boundary (endpoint index and u = 0 when n = 1),
/// v the signed normal depth, positive on Q and negative on the mirror copy.
struct CollarChart {
  double epsilon = 0.0;
  double s = 0.0;
  double s0 = 0.0;               // tangency-set bound
  std::vector<double> s_zeros;   // one bound per boundary zero
  int halvings = 0;              // extra halvings needed by the zero-free check
};

/// C^1 piecewise cubic, 1 on |v| <= s/2 and 0 on |v| >= s.
double bump(double v, double s);

struct BoundaryZero {
  Eigen::VectorXd position;
  int piece = -1;
  double u = 0.0;
  double zh_derivative = 0.0;  // dZ_h/du, 0 for n = 1
  double vertical = 0.0;       // b(u, 0) = -Y . n, positive on R_+
  bool in_exit = false;        // p in R_-
  int isotropy_order = 1;
  int orbit = -1;
  int zh_index = 0;      // index of Z_h on the boundary (+1 for points)
  int x_index = 0;       // sign det of the block Jacobian
  int fd_index = 0;      // sign det of the finite-difference Jacobian
  int winding = 0;       // n = 2 winding of the chart field, 0 for n = 1
  Eigen::MatrixXd jacobian_analytic;
  Eigen::MatrixXd jacobian_fd;
};

class DoubledField {
 public:
  DoubledField(FieldExpr base, BoundaryModel boundary, CollarChart collar, std::vector<BoundaryZero> zeros);

  const FieldExpr& base() const { return base_; }
  const BoundaryModel& boundary() const { return boundary_; }
  const CollarChart& collar() const { return collar_; }
  const std::vector<BoundaryZero>& zeros() const { return zeros_; }
  int dim() const { return base_.dim(); }

  /// Point of M at collar coordinates (piece, u, |v|).
  Eigen::VectorXd position(int piece, double u, double v) const;
  /// Y in collar coordinates on Q at depth |v|: (a, b) for n = 2, (b) for n = 1.
  Eigen::VectorXd base_components(int piece, double u, double v) const;
  /// The doubled field in collar coordinates: (X_h, X_v), or (X_v) for n = 1.
  Eigen::VectorXd components(int piece, double u, double v) const;
  /// Tangential boundary field Z_h(u) = Y . T.
  double z_h(int piece, double u) const;

  /// Ambient vector of X at x in copy 0 (Q) or 1 (the mirror), both drawn
  /// in the coordinates of M.
  Eigen::VectorXd evaluate(int copy, const Eigen::VectorXd& x) const;

 private:
  FieldExpr base_;
  BoundaryModel boundary_;
  CollarChart collar_;
  std::vector<BoundaryZero> zeros_;
};

/// Builds X_s on the collar. `interior_zeros` are the zeros of Y in M (for
/// the collar width) and `chain` supplies the tangency set. When `s` is
/// empty it is chosen as half the minimum of the tangency and per-zero
/// bounds. Throws UnsupportedBoundary for piecewise-linear boundaries in
/// dimension 2, BoundaryZeroDegenerate, and SupportTooWide.
DoubledField build_doubled_field(const FieldExpr& f, const GroupAction& g, const BoundaryModel& boundary,
                                 const std::vector<Eigen::VectorXd>& interior_zeros, const ExitChain& chain,
                                 const Tolerances& tol = {}, std::optional<double> s = std::nullopt);

struct BookkeepingLine {
  std::string label;
  Rational lhs{0};
  Rational rhs{0};
  bool passed = false;
};

struct DoubleReport {
  Rational interior{0};      // 2 Ind(Y; Q)
  Rational boundary_sum{0};  // sum over boundary zeros of Ind(X; p)
  Rational total{0};         // Ind(X; double)
  Rational zh_plus{0};       // Ind(Z_h; R_+)
  Rational zh_minus{0};      // Ind(Z_h; R_-)
  Rational chi_q{0};
  Rational chi_boundary{0};
  Rational chi_double{0};    // chi_orb of the combinatorial double
  std::vector<BoundaryZero> zeros;
  std::vector<BookkeepingLine> lines;
  bool passed = true;
  std::string first_failure;
};

/// Index bookkeeping on the double. `index` is Ind(Y; Q) and `chain` the
/// exit chain of Y; P must be regular. Does not throw on a failed identity.
DoubleReport double_index_report(const DoubledField& d, const QuotientPresentation& p, const IndexSum& index,
                                 const ExitChain& chain, const Tolerances& tol = {});

/// As double_index_report, but throws MismatchDetected naming the first
/// failed line.
DoubleReport verify_double_index(const DoubledField& d, const QuotientPresentation& p, const IndexSum& index,
                                 const ExitChain& chain, const Tolerances& tol = {});

}  // namespace orbidx
