#include <doctest.h>

#include "fixtures.hpp"
#include "orbidx/euler_satake.hpp"
#include "orbidx/inertia.hpp"

using namespace orbidx;

TEST_CASE("sectors") {
  auto trivial = build_sectors(fx::disk_trivial());
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].chi_orb_value == Rational(1));

  auto z3 = build_sectors(regularize(fx::disk_z3()).presentation);
  REQUIRE(z3.size() == 3);
  for (const auto& s : z3) CHECK(s.chi_orb_value == Rational(1, 3));
  CHECK(z3[1].fixed_complex.simplices().size() == 1);
  CHECK(z3[1].centralizer.order() == 3);

  auto z2 = build_sectors(regularize(fx::disk_z2()).presentation);
  REQUIRE(z2.size() == 2);
  CHECK(z2[0].chi_orb_value == Rational(1, 2));
  CHECK(z2[1].chi_orb_value == Rational(1, 2));
}

TEST_CASE("inertia characteristic equals the underlying one") {
  CHECK(chi_orb_inertia(fx::disk_trivial()) == Rational(1));
  auto z3 = regularize(fx::disk_z3()).presentation;
  CHECK(chi_orb_inertia(z3) == Rational(1));
  CHECK(chi_orb_inertia(boundary_presentation(z3)) == Rational(0));
  CHECK(chi_orb_inertia(double_complex(z3)) ==
        2 * chi_orb_inertia(z3) - chi_orb_inertia(boundary_presentation(z3)));
}

TEST_CASE("requires a regular action") {
  auto raw = fx::disk_z3();
  if (!raw.regular) CHECK_THROWS(build_sectors(raw));
}

TEST_CASE("induced index") {
  auto z2 = fx::disk_z2().action;
  auto f = fx::field({"x1", "-x2"});
  CHECK(induced_index(f, z2, 0, fx::pt(0, 0)) == -1);
  CHECK(induced_index(f, z2, 1, fx::pt(0, 0)) == 1);
}

namespace {

CorollaryReport corollary(QuotientPresentation raw, std::vector<std::string> field) {
  auto p = regularize(raw).presentation;
  auto boundary = fx::unit_circle(raw);
  auto f = fx::field(std::move(field));
  auto index = orbifold_index_sum(f, p.action, boundary);
  auto chain = compute_chain(f, p.action, boundary);
  return verify_corollary(f, p, index, chain);
}

}  // namespace

TEST_CASE("corollary on the disk") {
  auto radial = corollary(fx::disk_z3(), {"x1", "x2"});
  CHECK(radial.passed);
  CHECK(radial.lhs == Rational(1));
  CHECK(radial.rhs == Rational(1));
  REQUIRE(radial.sectors.size() == 3);
  for (const auto& s : radial.sectors) CHECK(s.orb_index == Rational(1, 3));

  auto inward = corollary(fx::disk_trivial(), {"-x1", "-x2"});
  CHECK(inward.lhs == Rational(1));
  CHECK(inward.rhs == Rational(1));

  // Untwisted -1/2 plus the point sector +1/2; right side (1 - 0) + (1 - 2).
  auto saddle = corollary(fx::disk_z2(), {"x1", "-x2"});
  CHECK(saddle.passed);
  CHECK(saddle.lhs == Rational(0));
  CHECK(saddle.rhs == Rational(0));
  CHECK(saddle.chain_terms == std::vector<int>{-1});
}
