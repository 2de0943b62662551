#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nk/liealg.hpp"
#include "test_support.hpp"

#include <nlohmann/json.hpp>

#include <vector>

using namespace nk;
using namespace nk::liealg;
using nk::exterior::KForm;
using nk::test::e;
using nk::test::ev;

namespace {

const LieAlgebraSpec& su2su2() { return LieAlgebraSpec::standard(); }

// d a (X_0..X_k) = sum_{i<j} (-1)^{i+j} a([X_i, X_j], X_0, ..^i..^j.., X_k),
// evaluated on basis tuples. Independent of the derivation-based d.
KForm exterior_derivative_by_evaluation(const LieAlgebraSpec& spec, const KForm& a) {
  const int k = a.degree();
  KForm out(k + 1);
  const auto monomials = exterior::basis(k + 1);
  for (std::size_t n = 0; n < monomials.size(); ++n) {
    std::vector<Vector6> xs;
    for (int i = 0; i < 6; ++i)
      if (monomials[n] & (1u << i)) xs.push_back(unit_vector(i));
    double total = 0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        std::vector<Vector6> args{spec.bracket(xs[i], xs[j])};
        for (int m = 0; m <= k; ++m)
          if (m != i && m != j) args.push_back(xs[m]);
        total += (((i + j) & 1) ? -1.0 : 1.0) * a.evaluate(args);
      }
    out[n] = total;
  }
  return out;
}

Matrix3 rotation(test::Generator& gen) {
  Eigen::HouseholderQR<Matrix3> qr(Matrix3::NullaryExpr([&] { return gen.normal(); }));
  Matrix3 q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

}  // namespace

TEST_CASE("su(2) + su(2) brackets") {
  CHECK(su2su2().bracket(ev(1), ev(2)) == ev(3));
  CHECK(su2su2().bracket(ev(1), ev(3)) == -ev(2));
  CHECK(su2su2().bracket(ev(2), ev(3)) == ev(1));
  CHECK(su2su2().bracket(ev(4), ev(5)) == ev(6));
  CHECK(su2su2().bracket(ev(4), ev(6)) == -ev(5));
  CHECK(su2su2().bracket(ev(5), ev(6)) == ev(4));
  CHECK(su2su2().bracket(ev(1), ev(4)) == Vector6::Zero());
  test::Generator gen(3);
  const Vector6 x = gen.vector();
  CHECK(max_abs(su2su2().bracket(x, x)) <= 1e-15);
  const Vector6 y = gen.vector();
  CHECK(max_abs(su2su2().ad(x) * y - su2su2().bracket(x, y)) <= 1e-14);
}

TEST_CASE("structure constants are antisymmetric and satisfy Jacobi") {
  CHECK(su2su2().antisymmetry_residual() == 0.0);
  CHECK(su2su2().jacobi_residual() <= 1e-12);
}

TEST_CASE("Maurer-Cartan differential on the coframe") {
  CHECK(su2su2().mc_differential(e({1})) == e({2, 3}, -1.0));
  CHECK(su2su2().mc_differential(e({2})) == e({3, 1}, -1.0));
  CHECK(su2su2().mc_differential(e({3})) == e({1, 2}, -1.0));
  CHECK(su2su2().mc_differential(e({4})) == e({5, 6}, -1.0));
  CHECK(su2su2().mc_differential(e({5})) == e({6, 4}, -1.0));
  CHECK(su2su2().mc_differential(e({6})) == e({4, 5}, -1.0));
  // d(e^{14}) = de^1 ^ e^4 - e^1 ^ de^4
  CHECK(su2su2().mc_differential(e({1, 4})) == e({2, 3, 4}, -1.0) + e({1, 5, 6}));
  CHECK_THROWS_AS(su2su2().mc_differential(exterior::volume()), GeometryError);
}

TEST_CASE("d squares to zero and is a graded derivation") {
  test::Generator gen(5);
  double worst = 0;
  for (int n = 0; n < 50; ++n)
    for (int k = 0; k <= 4; ++k) {
      const KForm a = gen.form(k);
      worst = std::max(worst, su2su2().mc_differential(su2su2().mc_differential(a)).norm());
    }
  CHECK(worst <= 1e-12);

  for (int n = 0; n < 100; ++n) {
    const int p = gen.integer(0, 3), q = gen.integer(0, 4 - p);
    const KForm a = gen.form(p), b = gen.form(q);
    const double sign = (p & 1) ? -1.0 : 1.0;
    const KForm lhs = su2su2().mc_differential(exterior::wedge(a, b));
    const KForm rhs = exterior::wedge(su2su2().mc_differential(a), b) +
                      sign * exterior::wedge(a, su2su2().mc_differential(b));
    CHECK(exterior::max_abs_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("d agrees with the bracket-evaluation formula") {
  test::Generator gen(9);
  for (int k = 1; k <= 5; ++k)
    for (int n = 0; n < 10; ++n) {
      const KForm a = gen.form(k);
      CHECK(exterior::max_abs_diff(su2su2().mc_differential(a), exterior_derivative_by_evaluation(su2su2(), a)) <=
            1e-12);
    }
  // Also for a random (non-Lie) antisymmetric bracket; d^2 = 0 is not
  // expected there but the two formulas must still agree.
  LieAlgebraSpec random_spec;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = 0; k < 6; ++k) random_spec.set_bracket(i, j, k, gen.normal());
  for (int k = 1; k <= 4; ++k) {
    const KForm a = gen.form(k);
    CHECK(exterior::max_abs_diff(random_spec.mc_differential(a), exterior_derivative_by_evaluation(random_spec, a)) <=
          1e-11);
  }
}

TEST_CASE("frame changes") {
  test::Generator gen(15);
  SUBCASE("identity changes nothing") {
    const auto id = FrameChange::identity();
    const KForm a = gen.form(3);
    CHECK(exterior::max_abs_diff(id.form(a), a) == 0.0);
    CHECK(id.structure(su2su2()).max_abs_diff(su2su2()) == 0.0);
  }
  SUBCASE("a rotation of the second factor is an automorphism") {
    const Matrix3 x = rotation(gen);
    const auto f = FrameChange::second_factor(x);
    CHECK(f.structure(su2su2()).max_abs_diff(su2su2()) <= 1e-12);
    Vector6 u4;
    u4 << 0, 0, 0, x.col(0);
    CHECK(max_abs(f.matrix().col(3) - u4) == 0.0);
    CHECK(max_abs(f.vector(u4) - ev(4)) <= 1e-14);
  }
  SUBCASE("pullback commutes with d under the transformed structure constants") {
    const FrameChange f(gen.matrix() + 3 * Matrix6::Identity());
    const LieAlgebraSpec moved = f.structure(su2su2());
    for (int k = 0; k <= 4; ++k) {
      const KForm a = gen.form(k);
      CHECK(exterior::max_abs_diff(f.form(su2su2().mc_differential(a)), moved.mc_differential(f.form(a))) <= 1e-9);
    }
    const Matrix6 m = gen.matrix();
    const Vector6 v = gen.vector(), w = gen.vector();
    CHECK(f.vector(m * v).dot(f.bilinear(m.transpose()) * f.vector(w)) ==
          doctest::Approx((m * v).dot(m.transpose() * w)).epsilon(1e-9));
    CHECK(max_abs(f.endomorphism(m) * f.vector(v) - f.vector(m * v)) <= 1e-9);
  }
  SUBCASE("singular frames are rejected") {
    Matrix6 s = Matrix6::Identity();
    s(5, 5) = 0;
    try {
      FrameChange bad(s);
      FAIL("expected SingularFrame");
    } catch (const GeometryError& err) {
      CHECK(err.code() == ErrorCode::SingularFrame);
    }
  }
}

TEST_CASE("structure constants serialize as a sparse 1-based list") {
  const nlohmann::json j = su2su2();
  CHECK(j.size() == 6);
  CHECK(j[0] == nlohmann::json{{"i", 1}, {"j", 2}, {"k", 3}, {"value", 1.0}});
  const auto back = nlohmann::json::parse(j.dump()).get<LieAlgebraSpec>();
  CHECK(back.max_abs_diff(su2su2()) == 0.0);
  CHECK_THROWS(nlohmann::json::parse(R"([{"i": 0, "j": 2, "k": 3, "value": 1}])").get<LieAlgebraSpec>());
}
