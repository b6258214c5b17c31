#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "orbidx/boundary_model.hpp"
#include "orbidx/rational.hpp"
#include "orbidx/simplicial.hpp"
#include "orbidx/tolerances.hpp"
#include "orbidx/vector_field.hpp"

namespace orbidx {

/// Values frozen in a scenario file; compared by the `expected` check.
struct Expected {
  std::optional<Rational> lhs;
  std::optional<Rational> chi_relative;
  std::optional<std::vector<Rational>> chain_terms;
};

/// Raw scenario, schema 1. See docs/scenario_schema.md.
struct Scenario {
  std::string name;
  std::string description;
  int dim = 0;
  std::vector<Eigen::VectorXd> vertices;
  std::vector<Simplex> simplices;
  std::vector<GroupElement> generators;
  std::vector<std::string> field;
  std::vector<CircleSpec> circles;  // empty: facet-linear boundary
  Tolerances tol;
  std::vector<std::string> checks;  // default check list, empty for all
  Expected expected;
};

/// Parses and validates. Throws ParseError for malformed JSON and
/// ValidationError (message starts with the offending field path) for
/// schema or cross-reference problems.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::string& path);

/// Rational from "p/q", "p", or an integer JSON value.
Rational parse_rational(std::string_view text);

/// Everything the pipeline needs, derived from a scenario.
struct Prepared {
  Scenario scenario;
  QuotientPresentation original;
  QuotientPresentation presentation;  // regularized
  int subdivisions = 0;
  FieldExpr field;
  BoundaryModel boundary;
  EquivarianceReport equivariance;
};

/// Closes the group, validates the presentation (codimension 2, faithful,
/// simplicial, coordinate-compatible), regularizes, parses the field, and
/// checks equivariance. Failures surface as ValidationError.
Prepared prepare(const Scenario& s);

/// Applies a named tolerance override ("newton", "grid_density", ...).
/// Throws ValidationError on an unknown name.
void set_tolerance(Tolerances& tol, const std::string& name, double value);
std::vector<std::string> tolerance_names();

}  // namespace orbidx
