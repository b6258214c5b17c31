#include "orbidx/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "orbidx/errors.hpp"

namespace orbidx {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(ErrorCode::ValidationError, path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) invalid(path, std::string("missing '") + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) invalid(path, "expected an integer");
  return j.get<int>();
}

Rational rational(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_object() && j.contains("num") && j.contains("den"))
      return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
  } catch (const Error&) {
  } catch (const std::exception&) {
  }
  invalid(path, "expected a rational (\"p/q\", integer, or {num, den})");
}

Eigen::VectorXd point(const json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    invalid(path, "expected " + std::to_string(dim) + " coordinates");
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x(i) = number(j[i], path + "[" + std::to_string(i) + "]");
  return x;
}

Eigen::MatrixXd matrix(const json& j, int dim, const std::string& path) {
  if (j.contains("rotation_turns")) {
    if (dim != 2) invalid(path + ".rotation_turns", "only valid in dimension 2");
    Rational t = rational(j.at("rotation_turns"), path + ".rotation_turns");
    double th = 2.0 * std::numbers::pi * to_double(t);
    Eigen::MatrixXd m(2, 2);
    m << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return m;
  }
  const json& m = require(j, "matrix", path);
  const std::string mp = path + ".matrix";
  if (!m.is_array()) invalid(mp, "expected an array");
  Eigen::MatrixXd out(dim, dim);
  if (!m.empty() && m[0].is_array()) {
    if (static_cast<int>(m.size()) != dim) invalid(mp, "expected " + std::to_string(dim) + " rows");
    for (int r = 0; r < dim; ++r) out.row(r) = point(m[r], dim, mp + "[" + std::to_string(r) + "]").transpose();
  } else {
    if (static_cast<int>(m.size()) != dim * dim) invalid(mp, "expected " + std::to_string(dim * dim) + " entries");
    for (int i = 0; i < dim * dim; ++i) out(i / dim, i % dim) = number(m[i], mp);
  }
  return out;
}

// Vertex permutation induced by a matrix on the coordinates.
Permutation derive_permutation(const Eigen::MatrixXd& m, const std::vector<Eigen::VectorXd>& coords, double tol,
                               const std::string& path) {
  Permutation perm(coords.size(), -1);
  for (std::size_t v = 0; v < coords.size(); ++v) {
    Eigen::VectorXd image = m * coords[v];
    for (std::size_t w = 0; w < coords.size(); ++w)
      if ((coords[w] - image).cwiseAbs().maxCoeff() < tol) {
        perm[v] = static_cast<int>(w);
        break;
      }
    if (perm[v] < 0) invalid(path, "matrix sends vertex " + std::to_string(v) + " to no vertex");
  }
  return perm;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  auto to_int = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      fail(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    return v;
  };
  if (slash == std::string_view::npos) return Rational(to_int(text));
  std::int64_t den = to_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(to_int(text.substr(0, slash)), den);
}

std::vector<std::string> tolerance_names() {
  return {"group",       "newton",    "dedup",            "degenerate",  "field", "equivariance",
          "equivariance_samples", "max_order", "boundary_samples", "grid_density"};
}

void set_tolerance(Tolerances& tol, const std::string& name, double value) {
  auto as_int = [&](int& slot) {
    if (value != std::floor(value) || value < 1) invalid("tolerances." + name, "expected a positive integer");
    slot = static_cast<int>(value);
  };
  auto as_real = [&](double& slot) {
    if (!(value > 0)) invalid("tolerances." + name, "expected a positive number");
    slot = value;
  };
  if (name == "group") as_real(tol.group);
  else if (name == "newton") as_real(tol.newton);
  else if (name == "dedup") as_real(tol.dedup);
  else if (name == "degenerate") as_real(tol.degenerate);
  else if (name == "field") as_real(tol.field);
  else if (name == "equivariance") as_real(tol.equivariance);
  else if (name == "equivariance_samples") as_int(tol.equivariance_samples);
  else if (name == "max_order") as_int(tol.max_order);
  else if (name == "boundary_samples") as_int(tol.boundary_samples);
  else if (name == "grid_density") as_int(tol.grid_density);
  else invalid("tolerances." + name, "unknown tolerance");
}

Scenario parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) invalid("$", "expected an object");
  if (integer(require(j, "schema", "$"), "schema") != 1) invalid("schema", "unsupported schema version");

  Scenario s;
  const json& name = require(j, "name", "$");
  if (!name.is_string() || name.get<std::string>().empty()) invalid("name", "expected a nonempty string");
  s.name = name.get<std::string>();
  if (j.contains("description")) s.description = j.at("description").get<std::string>();
  s.dim = integer(require(j, "dim", "$"), "dim");
  if (s.dim < 1) invalid("dim", "must be positive");

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) invalid("tolerances", "expected an object");
    for (auto it = t.begin(); it != t.end(); ++it)
      set_tolerance(s.tol, it.key(), number(it.value(), "tolerances." + it.key()));
  }

  const json& complex = require(j, "complex", "$");
  const json& verts = require(complex, "vertices", "complex");
  if (!verts.is_array() || verts.empty()) invalid("complex.vertices", "expected a nonempty array");
  for (std::size_t i = 0; i < verts.size(); ++i)
    s.vertices.push_back(point(verts[i], s.dim, "complex.vertices[" + std::to_string(i) + "]"));
  const json& simps = require(complex, "simplices", "complex");
  if (!simps.is_array() || simps.empty()) invalid("complex.simplices", "expected a nonempty array");
  for (std::size_t i = 0; i < simps.size(); ++i) {
    const std::string path = "complex.simplices[" + std::to_string(i) + "]";
    if (!simps[i].is_array() || static_cast<int>(simps[i].size()) != s.dim + 1)
      invalid(path, "expected " + std::to_string(s.dim + 1) + " vertex ids");
    Simplex sx;
    for (const auto& v : simps[i]) {
      int id = integer(v, path);
      if (id < 0 || id >= static_cast<int>(s.vertices.size())) invalid(path, "vertex id out of range");
      sx.push_back(id);
    }
    std::sort(sx.begin(), sx.end());
    if (std::adjacent_find(sx.begin(), sx.end()) != sx.end()) invalid(path, "repeated vertex");
    s.simplices.push_back(std::move(sx));
  }

  if (j.contains("group")) {
    const json& gens = require(j.at("group"), "generators", "group");
    if (!gens.is_array()) invalid("group.generators", "expected an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string path = "group.generators[" + std::to_string(i) + "]";
      GroupElement e;
      e.matrix = matrix(gens[i], s.dim, path);
      if (gens[i].contains("vertex_perm")) {
        const json& p = gens[i].at("vertex_perm");
        if (!p.is_array() || p.size() != s.vertices.size())
          invalid(path + ".vertex_perm", "expected one entry per vertex");
        for (const auto& v : p) {
          int id = integer(v, path + ".vertex_perm");
          if (id < 0 || id >= static_cast<int>(s.vertices.size())) invalid(path + ".vertex_perm", "id out of range");
          e.vertex_perm.push_back(id);
        }
      } else {
        e.vertex_perm = derive_permutation(e.matrix, s.vertices, 1e-6, path);
      }
      s.generators.push_back(std::move(e));
    }
  }

  const json& field = require(j, "field", "$");
  if (!field.is_array() || static_cast<int>(field.size()) != s.dim)
    invalid("field", "expected " + std::to_string(s.dim) + " component strings");
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!field[i].is_string()) invalid("field[" + std::to_string(i) + "]", "expected a string");
    s.field.push_back(field[i].get<std::string>());
  }

  if (j.contains("boundary_param")) {
    const json& bp = j.at("boundary_param");
    const json& circles = require(bp, "circles", "boundary_param");
    if (s.dim != 2) invalid("boundary_param", "circles need dimension 2");
    if (!circles.is_array() || circles.empty()) invalid("boundary_param.circles", "expected a nonempty array");
    for (std::size_t i = 0; i < circles.size(); ++i) {
      const std::string path = "boundary_param.circles[" + std::to_string(i) + "]";
      CircleSpec c;
      c.center = point(require(circles[i], "center", path), 2, path + ".center");
      c.radius = number(require(circles[i], "radius", path), path + ".radius");
      if (!(c.radius > 0)) invalid(path + ".radius", "must be positive");
      if (circles[i].contains("outer")) c.outer = circles[i].at("outer").get<bool>();
      s.circles.push_back(c);
    }
  }

  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) s.checks.push_back(c.get<std::string>());
  }

  if (j.contains("expected")) {
    const json& e = j.at("expected");
    if (e.contains("lhs")) s.expected.lhs = rational(e.at("lhs"), "expected.lhs");
    if (e.contains("chi_relative")) s.expected.chi_relative = rational(e.at("chi_relative"), "expected.chi_relative");
    if (e.contains("chain_terms")) {
      std::vector<Rational> terms;
      for (std::size_t i = 0; i < e.at("chain_terms").size(); ++i)
        terms.push_back(rational(e.at("chain_terms")[i], "expected.chain_terms[" + std::to_string(i) + "]"));
      s.expected.chain_terms = std::move(terms);
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Prepared prepare(const Scenario& s) {
  auto complex = SimplicialComplex::from_simplices(s.vertices, static_cast<int>(s.vertices.size()), s.simplices);
  if (complex.dim() != s.dim) invalid("complex", "top simplices do not have dimension " + std::to_string(s.dim));
  auto group = s.generators.empty()
                   ? GroupAction::trivial(s.dim, static_cast<int>(s.vertices.size()))
                   : GroupAction::close(s.generators, s.tol.max_order, s.tol.group);
  auto original = QuotientPresentation::create(complex, group, s.tol.group);
  boundary_subcomplex(original.complex);  // NotManifold check
  auto reg = regularize(original);
  auto field = FieldExpr::parse(s.field);
  if (field.dim() != s.dim) invalid("field", "arity differs from dim");
  auto boundary = s.circles.empty() ? BoundaryModel::piecewise_linear(original)
                                    : BoundaryModel::from_circles(original, s.circles);
  double radius = 0.0;
  for (const auto& v : s.vertices) radius = std::max(radius, v.cwiseAbs().maxCoeff());
  auto eq = check_equivariance(field, group, s.tol.equivariance_samples, s.tol.equivariance, std::max(radius, 1.0));
  if (!eq.passed)
    invalid("field", "not equivariant: violation " + std::to_string(eq.max_violation) + " at element " +
                         std::to_string(eq.worst_element));
  return Prepared{s, std::move(original), std::move(reg.presentation), reg.subdivisions, std::move(field),
                  std::move(boundary), eq};
}

}  // namespace orbidx
