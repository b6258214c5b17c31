#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "orbidx/exit_chain.hpp"

using namespace orbidx;

TEST_CASE("normal component on the unit circle") {
  auto p = fx::disk_trivial();
  auto disk = fx::unit_circle(p);
  REQUIRE(disk.pieces().size() == 1);
  const double len = disk.pieces()[0].length;
  for (double u : {0.0, 0.4, 1.3, 2.9, 5.0}) {
    Eigen::Vector2d x = disk.pieces()[0].position(u);
    double theta = std::atan2(x.y(), x.x());
    CHECK(normal_component(fx::field({"x1", "x2"}), disk, 0, u) == doctest::Approx(1));
    CHECK(normal_component(fx::field({"-x1", "-x2"}), disk, 0, u) == doctest::Approx(-1));
    CHECK(normal_component(fx::field({"x1", "-x2"}), disk, 0, u) == doctest::Approx(std::cos(2 * theta)));
  }
  CHECK(len == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("chains on the disk") {
  auto z3 = fx::disk_z3();
  auto radial = compute_chain(fx::field({"x1", "x2"}), z3.action, fx::unit_circle(z3));
  REQUIRE(radial.levels.size() == 1);
  CHECK(radial.levels[0].exit_arcs.size() == 1);
  CHECK(radial.levels[0].exit_arcs[0].full_loop);
  CHECK(radial.levels[0].gamma.empty());
  CHECK(radial.chi_terms == std::vector<Rational>{0});

  auto trivial = fx::disk_trivial();
  auto inward = compute_chain(fx::field({"-x1", "-x2"}), trivial.action, fx::unit_circle(trivial));
  CHECK(inward.levels.empty());
  CHECK(inward.total == Rational(0));

  auto z2 = fx::disk_z2();
  auto saddle = compute_chain(fx::field({"x1", "-x2"}), z2.action, fx::unit_circle(z2));
  REQUIRE(saddle.levels.size() == 1);
  CHECK(saddle.levels[0].exit_arcs.size() == 2);
  CHECK(saddle.levels[0].gamma.size() == 4);
  CHECK(saddle.levels[0].chi_term == Rational(-1));
  CHECK(saddle.levels[0].exit_orbits == 1);
  CHECK(saddle.levels[0].gamma_orbits == 2);
}

TEST_CASE("chain on the interval") {
  auto p = fx::interval();
  auto line = BoundaryModel::piecewise_linear(p);
  auto out = compute_chain(fx::field({"1"}), p.action, line);
  REQUIRE(out.levels.size() == 1);
  CHECK(out.levels[0].exit_points.size() == 1);
  CHECK(out.levels[0].exit_points[0].position(0) == doctest::Approx(1));
  CHECK(out.total == Rational(1));

  auto both = compute_chain(fx::field({"x1 - 1/2"}), p.action, line);
  CHECK(both.total == Rational(2));
  auto none = compute_chain(fx::field({"1/2 - x1"}), p.action, line);
  CHECK(none.levels.empty());
}

TEST_CASE("second level from tangential flow") {
  // Spiral source off-centre on the annulus: two exit arcs, four tangency
  // points, three of which flow out of the exit arcs.
  std::vector<Eigen::VectorXd> coords;
  for (double r : {1.0, 2.0})
    for (int k = 0; k < 6; ++k) coords.push_back(fx::pt(r * std::cos(k * std::numbers::pi / 3), r * std::sin(k * std::numbers::pi / 3)));
  std::vector<Simplex> tris;
  for (int k = 0; k < 6; ++k) {
    int a = k, b = (k + 1) % 6;
    tris.push_back({a, b, 6 + a});
    tris.push_back({b, 6 + b, 6 + a});
  }
  auto p = QuotientPresentation::create(SimplicialComplex::from_simplices(coords, 12, tris), GroupAction::trivial(2, 12));
  auto annulus = BoundaryModel::from_circles(p, {CircleSpec{{0, 0}, 2, true}, CircleSpec{{0, 0}, 1, false}});
  auto c = compute_chain(fx::field({"x1/2 - (x2 - 3/2)", "x1 + (x2 - 3/2)/2"}), p.action, annulus);
  REQUIRE(c.levels.size() == 2);
  CHECK(c.chi_terms == std::vector<Rational>{-2, 3});
  CHECK(c.levels[1].exit_points.size() == 3);
  CHECK(c.levels[1].entry_points.size() == 1);
}

TEST_CASE("generic contact") {
  auto p = fx::disk_trivial();
  auto disk = fx::unit_circle(p);
  CHECK(verify_generic_contact(fx::field({"x1", "x2"}), p.action, disk).passed);
  CHECK(verify_generic_contact(fx::field({"x1", "-x2"}), p.action, disk).passed);
  CHECK(verify_generic_contact(fx::field({"0", "1"}), p.action, disk).passed);

  auto rot = verify_generic_contact(fx::field({"-x2", "x1"}), p.action, disk);
  CHECK_FALSE(rot.passed);
  REQUIRE_FALSE(rot.issues.empty());
  CHECK(rot.issues[0].code == ErrorCode::NotGeneric);

  // Double root of the normal component at theta = 0.
  auto tangent = verify_generic_contact(fx::field({"1 - x1", "0"}), p.action, disk);
  CHECK_FALSE(tangent.passed);
}

TEST_CASE("corner tangency on a polygonal boundary") {
  auto p = fx::disk_trivial();
  auto hex = BoundaryModel::piecewise_linear(p);
  auto r = verify_generic_contact(fx::field({"0", "1"}), p.action, hex);
  CHECK_FALSE(r.passed);
  bool corner = false;
  for (const auto& i : r.issues) corner = corner || i.code == ErrorCode::NotGeneric;
  CHECK(corner);
}
