#include <doctest.h>

#include "fixtures.hpp"
#include "orbidx/errors.hpp"

using namespace orbidx;

namespace {

GroupElement el(Eigen::MatrixXd m) { return {std::move(m), {}, -1}; }

GroupAction dihedral6() {
  std::vector<GroupElement> gens{el(fx::rotation(1.0 / 3)), el(fx::diag(1, -1))};
  return GroupAction::close(gens);
}

}  // namespace

TEST_CASE("closing generators") {
  std::vector<GroupElement> id{el(Eigen::MatrixXd::Identity(2, 2))};
  CHECK(GroupAction::close(id).order() == 1);

  std::vector<GroupElement> rot{el(fx::rotation(1.0 / 3))};
  auto z3 = GroupAction::close(rot);
  CHECK(z3.order() == 3);
  CHECK(z3.element(0).matrix.isIdentity(1e-12));

  auto d6 = dihedral6();
  CHECK(d6.order() == 6);
  for (int a = 0; a < 6; ++a) {
    CHECK(d6.mult(a, d6.inverse(a)) == 0);
    for (int b = 0; b < 6; ++b)
      CHECK((d6.element(a).matrix * d6.element(b).matrix).isApprox(d6.element(d6.mult(a, b)).matrix, 1e-9));
  }
}

TEST_CASE("order cap") {
  std::vector<GroupElement> rot{el(fx::rotation(1.0 / 7))};
  CHECK_THROWS_AS(GroupAction::close(rot, 5), Error);
  try {
    GroupAction::close(rot, 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderExceeded);
  }
}

TEST_CASE("non-orthogonal generator") {
  Eigen::MatrixXd m = fx::diag(2, 1);
  std::vector<GroupElement> gens{el(m)};
  try {
    GroupAction::close(gens);
    FAIL("expected NotOrthogonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOrthogonal);
  }
}

TEST_CASE("conjugacy classes") {
  CHECK(conjugacy_classes(GroupAction::trivial(2, 0)).size() == 1);

  std::vector<GroupElement> rot{el(fx::rotation(1.0 / 3))};
  auto z3 = conjugacy_classes(GroupAction::close(rot));
  CHECK(z3.size() == 3);
  for (const auto& c : z3) CHECK(c.size() == 1);

  auto classes = conjugacy_classes(dihedral6());
  REQUIRE(classes.size() == 3);
  std::vector<std::size_t> sizes;
  for (const auto& c : classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
  CHECK(classes[0] == std::vector<int>{0});
}

TEST_CASE("centralizers") {
  auto d6 = dihedral6();
  CHECK(centralizer(d6, 0).order() == 6);

  std::vector<GroupElement> rot{el(fx::rotation(1.0 / 3))};
  auto z3 = GroupAction::close(rot);
  for (int g = 0; g < 3; ++g) CHECK(centralizer(z3, g).order() == 3);

  int r = d6.find(fx::diag(1, -1));
  REQUIRE(r > 0);
  auto c = centralizer(d6, r);
  CHECK(c.order() == 2);
  CHECK(std::find(c.parent_ids().begin(), c.parent_ids().end(), r) != c.parent_ids().end());
}

TEST_CASE("codimension-2 validation") {
  CHECK(validate_codimension2(GroupAction::trivial(2, 0)).passed);

  std::vector<GroupElement> rot{el(fx::rotation(1.0 / 3))};
  CHECK(validate_codimension2(GroupAction::close(rot)).passed);

  std::vector<GroupElement> refl{el(fx::diag(1, -1))};
  auto report = validate_codimension2(GroupAction::close(refl));
  CHECK_FALSE(report.passed);
  CHECK(report.offending == std::vector<int>{1});
}

TEST_CASE("fixed spaces") {
  CHECK(fixed_space_dim(Eigen::MatrixXd::Identity(2, 2)) == 2);
  CHECK(fixed_space_dim(fx::rotation(1.0 / 3)) == 0);
  CHECK(fixed_space_dim(fx::diag(1, -1)) == 1);
  Eigen::MatrixXd b = fixed_space_basis(fx::diag(1, -1));
  REQUIRE(b.cols() == 1);
  CHECK(std::abs(std::abs(b(0, 0)) - 1.0) < 1e-12);
}
