#include <doctest.h>

#include "fixtures.hpp"
#include "orbidx/euler_satake.hpp"

using namespace orbidx;

TEST_CASE("chi_orb") {
  CHECK(chi_orb(fx::disk_trivial()) == Rational(1));
  auto z3 = regularize(fx::disk_z3()).presentation;
  CHECK(chi_orb(z3) == Rational(1, 3));
  CHECK(chi_orb_oracle(z3) == Rational(1, 3));
  CHECK(chi_orb(boundary_presentation(z3)) == Rational(0));
}

TEST_CASE("chi_orb_relative") {
  CHECK(chi_orb_relative(fx::interval()) == Rational(-1));
  CHECK(chi_orb_relative(fx::disk_trivial()) == Rational(1));
  CHECK(chi_orb_relative(regularize(fx::disk_z3()).presentation) == Rational(1, 3));
}

TEST_CASE("chi_underlying") {
  CHECK(chi_underlying(fx::disk_trivial()) == 1);
  CHECK(chi_underlying(regularize(fx::disk_z3()).presentation) == 1);
  auto circle = boundary_presentation(regularize(fx::disk_z2()).presentation);
  CHECK(chi_underlying(circle) == 0);
}

TEST_CASE("denominator divides the group order") {
  for (const auto& p : {regularize(fx::disk_z3()).presentation, regularize(fx::disk_z2()).presentation}) {
    auto x = chi_orb(p);
    CHECK(p.action.order() % x.denominator() == 0);
    auto d = chi_orb(double_complex(p));
    CHECK(d == 2 * x - chi_orb(boundary_presentation(p)));
  }
}

TEST_CASE("stabilizer order") {
  auto z3 = regularize(fx::disk_z3()).presentation;
  CHECK(vertexwise_stabilizer_order(z3.action, {0}) == 3);
  CHECK(vertexwise_stabilizer_order(z3.action, z3.complex.simplices_of_dim(2)[0]) == 1);
}
