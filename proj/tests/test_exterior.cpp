#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nk/exterior.hpp"
#include "test_support.hpp"

#include <nlohmann/json.hpp>

#include <array>

using namespace nk;
using namespace nk::exterior;
using nk::test::e;
using nk::test::ev;

TEST_CASE("basis sizes and lexicographic order") {
  for (int k = 0; k <= 6; ++k) CHECK(basis(k).size() == std::size_t(binomial(6, k)));
  CHECK(basis(0).size() == 1);
  CHECK(basis(6).size() == 1);
  // e^{12}, e^{13}, ..., e^{56}
  const auto two = basis(2);
  CHECK(two.front() == Mask(0b000011));
  CHECK(two[1] == Mask(0b000101));
  CHECK(two.back() == Mask(0b110000));
  for (int k = 0; k <= 6; ++k)
    for (std::size_t n = 0; n < basis(k).size(); ++n) CHECK(index_of(basis(k)[n]) == int(n));
}

TEST_CASE("KForm rejects a coefficient count that does not match the degree") {
  CHECK_THROWS_AS(KForm(3, std::vector<double>(19, 0.0)), GeometryError);
  CHECK_THROWS_AS(KForm(7), GeometryError);
  CHECK(KForm(3).size() == 20);
}

TEST_CASE("wedge on basis monomials") {
  CHECK(wedge(e({1}), e({2})) == e({1, 2}));
  CHECK(wedge(e({2}), e({1})) == e({1, 2}, -1.0));
  const KForm vol = wedge(e({1, 2, 3}), e({4, 5, 6}));
  CHECK(vol.degree() == 6);
  CHECK(vol[0] == 1.0);
  CHECK(vol == volume());
  CHECK(wedge(e({1, 2}), e({1, 2})).norm() == 0.0);
}

TEST_CASE("wedge past degree six is a contract violation") {
  try {
    wedge(e({1, 2, 3, 4}), e({5, 6, 1}));
    FAIL("expected DegreeOverflow");
  } catch (const GeometryError& err) {
    CHECK(err.code() == ErrorCode::DegreeOverflow);
  }
}

TEST_CASE("wedge of 1-forms evaluates as a 2x2 determinant") {
  test::Generator gen(7);
  for (int n = 0; n < 50; ++n) {
    const KForm a = gen.form(1), b = gen.form(1);
    const Vector6 x = gen.vector(), y = gen.vector();
    const std::array<Vector6, 1> ax{x}, ay{y};
    const std::array<Vector6, 2> xy{x, y};
    const double expected = a.evaluate(ax) * b.evaluate(ay) - a.evaluate(ay) * b.evaluate(ax);
    CHECK(wedge(a, b).evaluate(xy) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("wedge is graded-anticommutative and associative") {
  test::Generator gen(11);
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; p + q <= 6; ++q) {
      const KForm a = gen.form(p), b = gen.form(q);
      const double sign = ((p * q) & 1) ? -1.0 : 1.0;
      CHECK(max_abs_diff(wedge(a, b), sign * wedge(b, a)) <= 1e-12);
    }
  for (int n = 0; n < 100; ++n) {
    const int p = gen.integer(0, 2), q = gen.integer(0, 2), r = gen.integer(0, 2);
    const KForm a = gen.form(p), b = gen.form(q), c = gen.form(r);
    CHECK(max_abs_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) <= 1e-12);
  }
}

TEST_CASE("interior product sign convention") {
  CHECK(interior(ev(1), e({1, 2})) == e({2}));
  CHECK(interior(ev(2), volume()) == e({1, 3, 4, 5, 6}, -1.0));
  CHECK(interior(ev(1), volume()) == e({2, 3, 4, 5, 6}));
  CHECK(interior(ev(1), e({2, 3, 4})).norm() == 0.0);
  CHECK_THROWS_AS(interior(ev(1), KForm(0, {1.0})), GeometryError);
}

TEST_CASE("interior product is a nilpotent antiderivation") {
  test::Generator gen(13);
  double worst = 0;
  for (int n = 0; n < 1000; ++n) {
    const int p = gen.integer(1, 4);
    const int q = gen.integer(1, 6 - p);
    const Vector6 x = gen.vector();
    const KForm a = gen.form(p), b = gen.form(q);
    const double sign = (p & 1) ? -1.0 : 1.0;
    const KForm lhs = interior(x, wedge(a, b));
    const KForm rhs = wedge(interior(x, a), b) + sign * wedge(a, interior(x, b));
    worst = std::max(worst, max_abs_diff(lhs, rhs));
    if (p >= 2) worst = std::max(worst, interior(x, interior(x, a)).norm());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("dual_iso_A inverts contraction into the volume form") {
  CHECK(dual_iso_A(e({2, 3, 4, 5, 6})) == ev(1));
  CHECK(dual_iso_A(e({1, 3, 4, 5, 6})) == -ev(2));
  CHECK(dual_iso_A(KForm(5)) == Vector6::Zero());

  test::Generator gen(17);
  for (int n = 0; n < 200; ++n) {
    const KForm phi = gen.form(5);
    CHECK(max_abs_diff(interior(dual_iso_A(phi), volume()), phi) <= 1e-12);
    const Vector6 y = gen.vector();
    CHECK(max_abs(dual_iso_A(interior(y, volume())) - y) <= 1e-12);
  }
}

TEST_CASE("2-forms and skew matrices") {
  test::Generator gen(19);
  const Matrix6 a = gen.matrix();
  const Matrix6 skew = a - a.transpose();
  const KForm w = two_form(skew);
  CHECK(max_abs(bilinear_matrix(w) - skew) == 0.0);
  const Vector6 x = gen.vector(), y = gen.vector();
  const std::array<Vector6, 2> xy{x, y};
  CHECK(w.evaluate(xy) == doctest::Approx(x.dot(skew * y)).epsilon(1e-12));
}

TEST_CASE("KForm JSON round trip") {
  test::Generator gen(23);
  for (int k = 0; k <= 6; ++k) {
    const KForm f = gen.form(k);
    const nlohmann::json j = f;
    CHECK(j.at("degree") == k);
    CHECK(j.at("coeffs").size() == f.size());
    CHECK(nlohmann::json::parse(j.dump()).get<KForm>() == f);
  }
  CHECK_THROWS(nlohmann::json::parse(R"({"degree": 2, "coeffs": [1, 2]})").get<KForm>());
}
