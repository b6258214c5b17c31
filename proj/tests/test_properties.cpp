#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "orbidx/euler_satake.hpp"
#include "orbidx/inertia.hpp"
#include "orbidx/report.hpp"

using namespace orbidx;

namespace {

// Disk as a fan over a regular polygon with k * m rim vertices, with the
// rotation by 1/k of a turn.
Scenario polygon_disk(int k, int m, std::vector<std::string> field) {
  Scenario s;
  s.name = "polygon_" + std::to_string(k) + "_" + std::to_string(m);
  s.dim = 2;
  const int rim = k * m;
  s.vertices.push_back(fx::pt(0, 0));
  for (int i = 0; i < rim; ++i) {
    double a = 2 * std::numbers::pi * i / rim;
    s.vertices.push_back(fx::pt(std::cos(a), std::sin(a)));
  }
  for (int i = 0; i < rim; ++i) s.simplices.push_back({0, 1 + i, 1 + (i + 1) % rim});
  if (k > 1) {
    Permutation perm{0};
    for (int i = 0; i < rim; ++i) perm.push_back(1 + (i + m) % rim);
    s.generators.push_back({fx::rotation(1.0 / k), perm, -1});
  }
  s.field = std::move(field);
  s.circles.push_back(CircleSpec{});
  return s;
}

std::string num(double x) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << x;
  return "(" + out.str() + ")";
}

}  // namespace

TEST_CASE("chi_orb matches chi(M)/|G| on generated polygons") {
  for (int k = 1; k <= 6; ++k) {
    for (int m = 1; m <= 3; ++m) {
      if (k * m < 3) continue;
      auto prep = prepare(polygon_disk(k, m, {"x1", "x2"}));
      const auto& p = prep.presentation;
      CAPTURE(k);
      CAPTURE(m);
      CHECK(chi_orb(p) == Rational(1, k));
      CHECK(chi_orb_oracle(p) == chi_orb(p));
      auto s1 = subdivide_presentation(p);
      CHECK(chi_orb(s1) == chi_orb(p));
      CHECK(chi_orb(subdivide_presentation(s1)) == chi_orb(p));
      auto bd = boundary_presentation(p);
      CHECK(chi_orb(double_complex(p)) == 2 * chi_orb(p) - chi_orb(bd));
      CHECK(chi_orb_inertia(p) == Rational(chi_underlying(p)));
      CHECK(chi_underlying(p) == 1);
      CHECK(chi_orb_inertia(double_complex(p)) == 2 * chi_orb_inertia(p) - chi_orb_inertia(bd));
    }
  }
}

TEST_CASE("subdivision preserves chi on random complexes") {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 40; ++trial) {
    // Random subset of the triangles of a 4x4 grid.
    std::vector<Simplex> tris;
    std::bernoulli_distribution keep(0.6);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        int a = i * 5 + j, b = a + 1, c = a + 5, d = a + 6;
        if (keep(rng)) tris.push_back({a, b, d});
        if (keep(rng)) tris.push_back({a, c, d});
      }
    }
    if (tris.empty()) continue;
    auto k = SimplicialComplex::from_simplices({}, 25, tris);
    auto s = barycentric_subdivide(k);
    CHECK(euler_characteristic(s) == euler_characteristic(k));
    CHECK(s.simplices_of_dim(2).size() == 6 * k.simplices_of_dim(2).size());
    for (const auto& simplex : s.simplices())
      for (std::size_t drop = 0; drop < simplex.size() && simplex.size() > 1; ++drop) {
        Simplex face = simplex;
        face.erase(face.begin() + static_cast<long>(drop));
        CHECK(s.contains(face));
      }
  }
}

TEST_CASE("main identity for random equivariant fields") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> small(-0.35, 0.35);
  int verified = 0;
  for (int trial = 0; trial < 24; ++trial) {
    int k = 2 + trial % 3;
    std::vector<std::string> field;
    if (k == 2) {
      // Any linear map commutes with -I.
      double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
      if (std::abs(a * d - b * c) < 0.05) continue;
      field = {num(a) + "*x1 + " + num(b) + "*x2", num(c) + "*x1 + " + num(d) + "*x2"};
    } else if (k == 3) {
      // c1 z + c2 conj(z)^2 commutes with the rotation by 1/3.
      double a = coef(rng), b = coef(rng), p = small(rng), q = small(rng);
      if (std::hypot(a, b) < 0.3) continue;
      field = {num(a) + "*x1 - " + num(b) + "*x2 + " + num(p) + "*(x1^2 - x2^2) + " + num(q) + "*2*x1*x2",
               num(b) + "*x1 + " + num(a) + "*x2 + " + num(q) + "*(x1^2 - x2^2) - " + num(p) + "*2*x1*x2"};
    } else {
      // Complex-linear maps commute with every rotation.
      double a = coef(rng), b = coef(rng);
      if (std::hypot(a, b) < 0.3) continue;
      field = {num(a) + "*x1 - " + num(b) + "*x2", num(b) + "*x1 + " + num(a) + "*x2"};
    }
    CAPTURE(field[0]);
    CAPTURE(field[1]);
    auto prep = prepare(polygon_disk(k, 2, field));
    REQUIRE(prep.equivariance.passed);
    auto contact = verify_generic_contact(prep.field, prep.presentation.action, prep.boundary, prep.scenario.tol);
    if (!contact.passed) continue;
    auto r = run_verify(prep, {"theorem", "morse", "winding", "chi", "double", "inertia"});
    for (const auto& c : r.checks) CHECK_MESSAGE(c.status != Status::Fail, std::string(c.name + ": " + c.detail));
    for (const auto& c : r.checks)
      if (c.name == "theorem") CHECK(c.status == Status::Pass);
    REQUIRE(r.lhs);
    REQUIRE(r.rhs);
    CHECK(*r.lhs == *r.rhs);
    // Orbifold index times |G| is the upstairs index sum, an integer.
    CHECK((*r.lhs * k).denominator() == 1);
    ++verified;
  }
  CHECK(verified >= 12);
}

TEST_CASE("reports are byte-stable") {
  auto prep = prepare(polygon_disk(2, 3, {"x1", "-x2"}));
  auto a = to_json(run_verify(prep)).dump();
  auto b = to_json(run_verify(prepare(polygon_disk(2, 3, {"x1", "-x2"})))).dump();
  CHECK(a == b);
  CHECK(a.find("elapsed_ms") == std::string::npos);
}

TEST_CASE("morse sign rule on random linear zeros") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  auto trivial = GroupAction::trivial(2, 0);
  for (int trial = 0; trial < 50; ++trial) {
    double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
    if (std::abs(a * d - b * c) < 1e-2) continue;
    auto f = fx::field({num(a) + "*x1 + " + num(b) + "*x2", num(c) + "*x1 + " + num(d) + "*x2"});
    auto z = orbifold_index_at(f, fx::pt(0, 0), trivial);
    REQUIRE(z.morse_lambda);
    CHECK(((*z.morse_lambda % 2 == 0) ? 1 : -1) == z.det_sign);
    CHECK(winding_number_2d(f, fx::pt(0, 0), 0.5) == z.det_sign);
  }
}
