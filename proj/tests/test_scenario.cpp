#include <doctest.h>

#include <string>

#include "orbidx/errors.hpp"
#include "orbidx/report.hpp"

using namespace orbidx;

namespace {

const std::string catalog = ORBIDX_CATALOG_DIR;
const std::string data = ORBIDX_TEST_DATA_DIR;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::MismatchDetected;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* minimal = R"({
  "schema": 1, "name": "tiny", "dim": 2,
  "complex": {"vertices": [[0,0],[1,0],[0,1]], "simplices": [[0,1,2]]},
  "field": ["x1 - 1/4", "x2 - 1/4"]
})";

}  // namespace

TEST_CASE("load bundled scenario") {
  auto s = load_scenario(catalog + "/disk_z3_radial.json");
  CHECK(s.dim == 2);
  CHECK(s.name == "disk_z3_radial");
  auto p = prepare(s);
  CHECK(p.presentation.action.order() == 3);
  REQUIRE(s.expected.lhs);
  CHECK(*s.expected.lhs == Rational(1, 3));
}

TEST_CASE("malformed and invalid input") {
  CHECK(code_of([] { load_scenario(data + "/malformed.json"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_scenario(data + "/does_not_exist.json"); }) == ErrorCode::ParseError);

  auto reflection = [] { prepare(load_scenario(data + "/disk_reflection.json")); };
  CHECK(code_of(reflection) == ErrorCode::ValidationError);
  CHECK(message_of(reflection).find("codimension") != std::string::npos);
}

TEST_CASE("validation messages carry the field path") {
  std::string arity = minimal;
  arity.replace(arity.find(R"("field": ["x1 - 1/4", "x2 - 1/4"])"), 33, R"("field": ["x1"])");
  CHECK(message_of([&] { parse_scenario(arity); }).find("field") != std::string::npos);

  std::string bad_vertex = minimal;
  bad_vertex.replace(bad_vertex.find("[[0,1,2]]"), 9, "[[0,1,7]]");
  auto msg = message_of([&] { parse_scenario(bad_vertex); });
  CHECK(msg.find("complex.simplices") != std::string::npos);

  std::string schema = minimal;
  schema.replace(schema.find("\"schema\": 1"), 11, "\"schema\": 2");
  CHECK(code_of([&] { parse_scenario(schema); }) == ErrorCode::ValidationError);
}

TEST_CASE("polygonal scenario without circles") {
  auto p = prepare(parse_scenario(minimal));
  CHECK_FALSE(p.boundary.smooth());
  auto r = run_verify(p, {"theorem", "morse", "chi"});
  REQUIRE(r.lhs);
  CHECK(*r.lhs == Rational(1));
  CHECK(r.passed());
}

TEST_CASE("tolerance overrides") {
  Tolerances t;
  set_tolerance(t, "newton", 1e-10);
  set_tolerance(t, "grid_density", 12);
  CHECK(t.newton == 1e-10);
  CHECK(t.grid_density == 12);
  CHECK(code_of([&] { set_tolerance(t, "nonsense", 1); }) == ErrorCode::ValidationError);
}

TEST_CASE("rationals") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("4") == Rational(4));
  CHECK(to_json(Rational(-1, 2)).dump() == R"({"den":2,"num":-1})");
}

TEST_CASE("run_verify examples") {
  auto radial = run_verify(prepare(load_scenario(catalog + "/disk_z3_radial.json")));
  CHECK(*radial.lhs == Rational(1, 3));
  CHECK(radial.chi.chi_relative == Rational(1, 3));
  CHECK(radial.chain->total == Rational(0));
  CHECK(radial.passed());

  auto interval = run_verify(prepare(load_scenario(catalog + "/interval_outflow.json")));
  CHECK(*interval.lhs == Rational(0));
  CHECK(interval.chi.chi_relative == Rational(-1));
  CHECK(interval.chain->total == Rational(1));
  CHECK(interval.passed());

  auto saddle = run_verify(prepare(load_scenario(catalog + "/disk_z2_saddle.json")));
  CHECK(*saddle.lhs == Rational(-1, 2));
  CHECK(saddle.chi.chi_relative == Rational(1, 2));
  CHECK(saddle.chain->total == Rational(-1));
  CHECK(saddle.passed());
}

TEST_CASE("module errors become report entries") {
  auto r = run_verify(prepare(load_scenario(data + "/disk_trivial_rotational.json")));
  CHECK_FALSE(r.passed());
  bool found = false;
  for (const auto& c : r.checks)
    if (c.name == "theorem") {
      found = true;
      CHECK(c.status == Status::Error);
      CHECK(c.code == "NotGeneric");
    }
  CHECK(found);
  CHECK(code_of([&] { run_verify(prepare(parse_scenario(minimal)), {"nope"}); }) == ErrorCode::ValidationError);
}
