#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nk/acs.hpp"
#include "nk/hitchin.hpp"
#include "nk/liealg.hpp"
#include "test_support.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

using namespace nk;
using namespace nk::hitchin;
using nk::exterior::KForm;
using nk::test::e;
using nk::test::ev;

namespace {

// d omega_I written out in the b parameters (b row-major, 1-based b1..b9).
KForm d_omega_expansion(const Matrix3& b) {
  auto bi = [&](int n) { return b((n - 1) / 3, (n - 1) % 3); };
  return bi(1) * (e({2, 3, 4}) - e({1, 5, 6})) + bi(2) * (e({2, 3, 5}) - e({1, 6, 4})) +
         bi(3) * (e({2, 3, 6}) - e({1, 4, 5})) + bi(4) * (e({3, 1, 4}) - e({2, 5, 6})) +
         bi(5) * (e({3, 1, 5}) - e({2, 6, 4})) + bi(6) * (e({3, 1, 6}) - e({2, 4, 5})) +
         bi(7) * (e({1, 2, 4}) - e({3, 5, 6})) + bi(8) * (e({1, 2, 5}) - e({3, 6, 4})) +
         bi(9) * (e({1, 2, 6}) - e({3, 4, 5}));
}

KForm psi_i0() { return d_omega_expansion(-Matrix3::Identity()); }

Matrix6 blocks(double tl, double tr, double bl, double br) {
  const Matrix3 e3 = Matrix3::Identity();
  Matrix6 m;
  m << tl * e3, tr * e3, bl * e3, br * e3;
  return m;
}

// The integrable structure [[A, B], [-B, A]] with A = e3 e2^T - e2 e3^T, B = -e1 e1^T.
Matrix6 integrable_j() {
  Matrix3 a = Matrix3::Zero(), b = Matrix3::Zero();
  a(1, 2) = -1;
  a(2, 1) = 1;
  b(0, 0) = -1;
  Matrix6 j;
  j << a, b, -b, a;
  return j;
}

KForm psi_integrable() {
  return liealg::LieAlgebraSpec::standard().mc_differential(exterior::two_form(integrable_j().transpose()));
}

}  // namespace

TEST_CASE("K of d omega_I0") {
  // Block formula with A* = C* = 0 and B* = cofactor(-E) = E.
  CHECK(max_abs(hitchin_K(psi_i0()) - blocks(1, -2, 2, -1)) <= 1e-14);
  CHECK(max_abs(hitchin_K(KForm(3))) == 0.0);
  CHECK_THROWS_AS(hitchin_K(KForm(2)), GeometryError);
}

TEST_CASE("tau anchors") {
  CHECK(tau(psi_i0()) == doctest::Approx(-3).epsilon(1e-14));
  CHECK(tau(2.0 * psi_i0()) == doctest::Approx(-48).epsilon(1e-14));
  CHECK(tau(psi_integrable()) == doctest::Approx(1).epsilon(1e-14));
  const Matrix6 k = hitchin_K(psi_integrable());
  CHECK(max_abs(k * k - Matrix6::Identity()) <= 1e-14);
}

TEST_CASE("K^2 = tau Id for arbitrary 3-forms") {
  test::Generator gen(101);
  for (int n = 0; n < 200; ++n) {
    const KForm psi = gen.form(3);
    const Matrix6 k = hitchin_K(psi);
    const double t = (k * k).trace() / 6;
    CHECK(max_abs(k * k - t * Matrix6::Identity()) <= 1e-10 * std::max(1.0, std::abs(t)));
  }
}

TEST_CASE("tau is homogeneous of degree four") {
  test::Generator gen(103);
  for (int n = 0; n < 100; ++n) {
    const KForm psi = gen.form(3);
    const double lambda = gen.uniform(-3, 3);
    CHECK(tau(lambda * psi) == doctest::Approx(std::pow(lambda, 4) * tau(psi)).epsilon(1e-10));
  }
}

TEST_CASE("orbit classification") {
  CHECK(classify_orbit(psi_i0()) == Orbit::O1);
  CHECK(classify_orbit(psi_integrable()) == Orbit::O2);
  CHECK(classify_orbit(KForm(3)) == Orbit::Degenerate);
  // 1e-3 psi has tau = -3e-12: degenerate at the default eps, O1 below it.
  CHECK(classify_orbit(1e-3 * psi_i0()) == Orbit::Degenerate);
  CHECK(classify_orbit(1e-3 * psi_i0(), 1e-13) == Orbit::O1);
  CHECK(std::string(to_string(Orbit::Degenerate)) == "degenerate");
}

TEST_CASE("hitchin_J") {
  const Matrix6 j0 = blocks(1, -2, 2, -1) / std::sqrt(3.0);
  CHECK(max_abs(hitchin_J(psi_i0()) - j0) <= 1e-14);
  CHECK(max_abs(hitchin_J(5.0 * psi_i0()) - j0) <= 1e-14);

  test::Generator gen(107);
  for (int n = 0; n < 20; ++n) {
    const auto i = acs::sample(gen.engine()(), true);
    const KForm psi = acs::d_omega(i);
    const Matrix6 j = hitchin_J(psi);
    CHECK(max_abs(j * j + Matrix6::Identity()) <= 1e-10);
    CHECK(max_abs(hitchin_J(gen.uniform(0.1, 10) * psi) - j) <= 1e-10);
  }

  for (const KForm& bad : {psi_integrable(), KForm(3)}) {
    try {
      hitchin_J(bad);
      FAIL("expected NonNegativeTau");
    } catch (const GeometryError& err) {
      CHECK(err.code() == ErrorCode::NonNegativeTau);
    }
  }
}

TEST_CASE("dual three-form") {
  const Matrix6 j0 = hitchin_J(psi_i0());
  const KForm phi = dual_three_form(psi_i0(), j0);
  for (int a = 1; a <= 6; ++a)
    CHECK(exterior::max_abs_diff(exterior::interior(ev(a), psi_i0()), exterior::interior(j0 * ev(a), phi)) <= 1e-10);
  // phi(X,Y,Z) = -psi(JX,Y,Z) on a random triple.
  test::Generator gen(109);
  const Vector6 x = gen.vector(), y = gen.vector(), z = gen.vector();
  const std::array<Vector6, 3> xyz{x, y, z}, jxyz{j0 * x, y, z};
  CHECK(phi.evaluate(xyz) == doctest::Approx(-psi_i0().evaluate(jxyz)).epsilon(1e-12));

  CHECK(dual_three_form(KForm(3), j0).norm() == 0.0);

  try {
    dual_three_form(gen.form(3), acs::standard_acs().matrix());
    FAIL("expected NotAlternating");
  } catch (const GeometryError& err) {
    CHECK(err.code() == ErrorCode::NotAlternating);
  }
}

TEST_CASE("d omega_I matches its expansion in the b parameters") {
  test::Generator gen(113);
  for (int n = 0; n < 50; ++n) {
    const auto i = acs::sample(gen.engine()(), false);
    CHECK(exterior::max_abs_diff(acs::d_omega(i), d_omega_expansion(i.B)) <= 1e-12);
  }
  CHECK(exterior::max_abs_diff(acs::d_omega(acs::standard_acs()), psi_i0()) <= 1e-15);
}

TEST_CASE("HitchinStructure") {
  const auto h = HitchinStructure::from(psi_i0());
  REQUIRE(h.kappa);
  CHECK(*h.kappa == doctest::Approx(std::sqrt(3.0)));
  REQUIRE(h.J);
  REQUIRE(h.phi);
  CHECK(max_abs(h.K * h.K - h.tau * Matrix6::Identity()) <= 1e-10);
  CHECK(max_abs(*h.J * *h.J + Matrix6::Identity()) <= 1e-10);

  const nlohmann::json j = h;
  const auto back = nlohmann::json::parse(j.dump()).get<HitchinStructure>();
  CHECK(back.psi == h.psi);
  CHECK(back.K == h.K);
  CHECK(back.tau == h.tau);
  CHECK(*back.J == *h.J);
  CHECK(*back.phi == *h.phi);

  const auto o2 = HitchinStructure::from(psi_integrable());
  CHECK_FALSE(o2.kappa);
  CHECK_FALSE(o2.J);
  const nlohmann::json jo2 = o2;
  CHECK_FALSE(jo2.contains("J"));
}
