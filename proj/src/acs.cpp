#include "nk/acs.hpp"

#include "nk/hitchin.hpp"
#include "nk/json_io.hpp"

#include <array>
#include <cmath>

namespace nk::acs {

Matrix3 cofactor(const Matrix3& m) {
  Matrix3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // Cyclic index choice already carries the (-1)^{i+j} sign.
      out(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  return out;
}

Matrix3 skew_from(const Vector3& v) {
  Matrix3 m;
  m << 0, v(0), v(1),  //
      -v(0), 0, v(2),  //
      -v(1), -v(2), 0;
  return m;
}

OrthogonalACS OrthogonalACS::from_params(const Vector3& a, const Matrix3& b, const Vector3& c) {
  return OrthogonalACS{skew_from(a), b, skew_from(c)};
}

double OrthogonalACS::t() const { return std::sqrt(std::max(0.0, 1.0 - x())); }

Matrix6 OrthogonalACS::matrix() const {
  Matrix6 m;
  m << A, B, -B.transpose(), C;
  return m;
}

OrthogonalACS standard_acs() { return OrthogonalACS{Matrix3::Zero(), -Matrix3::Identity(), Matrix3::Zero()}; }

double scalar_relations_residual(const OrthogonalACS& i) {
  const Vector3 a = i.a();
  const Vector3 c = i.c();
  const Matrix3& b = i.B;
  const std::array<double, 9> r{
      b.row(0).squaredNorm() + a(0) * a(0) + a(1) * a(1) - 1,
      b.row(1).squaredNorm() + a(0) * a(0) + a(2) * a(2) - 1,
      b.row(2).squaredNorm() + a(1) * a(1) + a(2) * a(2) - 1,
      a(1) * a(2) + b.row(0).dot(b.row(1)),
      -a(0) * a(2) + b.row(0).dot(b.row(2)),
      a(0) * a(1) + b.row(1).dot(b.row(2)),
      b.col(0).squaredNorm() + c(0) * c(0) + c(1) * c(1) - 1,
      b.col(1).squaredNorm() + c(0) * c(0) + c(2) * c(2) - 1,
      b.col(2).squaredNorm() + c(1) * c(1) + c(2) * c(2) - 1,
  };
  double m = 0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

double orientation(const Matrix6& j) {
  double best = 0;
  for (int p = 0; p < 6; ++p)
    for (int q = p + 1; q < 6; ++q)
      for (int r = q + 1; r < 6; ++r) {
        Matrix6 frame;
        frame.col(0) = unit_vector(p);
        frame.col(1) = unit_vector(q);
        frame.col(2) = unit_vector(r);
        frame.col(3) = j.col(p);
        frame.col(4) = j.col(q);
        frame.col(5) = j.col(r);
        const double d = frame.determinant();
        if (std::abs(d) > std::abs(best)) best = d;
      }
  return best;
}

OrthogonalACS validate(const Matrix6& i, OrientationPolicy policy, double tol) {
  const double square = max_abs(i * i + Matrix6::Identity());
  if (square > tol)
    throw GeometryError(ErrorCode::NotComplexStructure, "|I^2 + 1| = " + std::to_string(square));
  const double skew = max_abs(i + i.transpose());
  if (skew > tol) throw GeometryError(ErrorCode::NotSkew, "|I + I^T| = " + std::to_string(skew));
  if (policy == OrientationPolicy::positive) {
    const double o = orientation(i);
    if (!(o > 0))
      throw GeometryError(ErrorCode::WrongOrientation,
                          "det(e1,e2,e3,Ie1,Ie2,Ie3)-type orientation is " + std::to_string(o));
  }
  OrthogonalACS out;
  out.A = i.topLeftCorner<3, 3>();
  out.B = i.topRightCorner<3, 3>();
  out.C = i.bottomRightCorner<3, 3>();
  // Exact skew symmetry by construction.
  out.A = 0.5 * (out.A - out.A.transpose()).eval();
  out.C = 0.5 * (out.C - out.C.transpose()).eval();
  return out;
}

GeneralACS validate_general(const Matrix6& j, double tol) {
  const double square = max_abs(j * j + Matrix6::Identity());
  if (square > tol)
    throw GeometryError(ErrorCode::NotComplexStructure, "|J^2 + 1| = " + std::to_string(square));
  const double o = orientation(j);
  if (!(o > 0)) throw GeometryError(ErrorCode::WrongOrientation, "orientation " + std::to_string(o));
  return GeneralACS{j};
}

double amplification_determinant(const Matrix6& j) {
  Matrix6 frame = Matrix6::Zero();
  frame.topLeftCorner<3, 3>() = Matrix3::Identity();
  frame.rightCols<3>() = j.leftCols<3>();
  return frame.determinant();
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix6 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix6 g;
  for (int c = 0; c < 6; ++c)
    for (int r = 0; r < 6; ++r) g(r, c) = normal(rng);
  Eigen::HouseholderQR<Matrix6> qr(g);
  Matrix6 q = qr.householderQ();
  const Matrix6 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < 6; ++c)
    if (r(c, c) < 0) q.col(c) *= -1;
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

OrthogonalACS conjugate_standard(const Matrix6& q) {
  return validate(q * standard_acs().matrix() * q.transpose(), OrientationPolicy::any, 1e-9);
}

OrthogonalACS sample(std::uint64_t seed, bool require_ao_minus, int max_tries) {
  std::mt19937_64 rng(seed);
  for (int n = 0; n < max_tries; ++n) {
    OrthogonalACS i = conjugate_standard(random_rotation(rng));
    if (!require_ao_minus || i.in_ao_minus()) return i;
  }
  throw GeometryError(ErrorCode::SamplingExhausted,
                      "no sample with x < 3/4 in " + std::to_string(max_tries) + " draws");
}

OrthogonalACS sample_in_band(std::uint64_t seed, double lo, double hi, int max_tries) {
  std::mt19937_64 rng(seed);
  for (int n = 0; n < max_tries; ++n) {
    OrthogonalACS i = conjugate_standard(random_rotation(rng));
    const double x = i.x();
    if (x > lo && x < hi) return i;
  }
  throw GeometryError(ErrorCode::SamplingExhausted,
                      "no sample with " + std::to_string(lo) + " < x < " + std::to_string(hi));
}

OrthogonalACS planar_family(int p, int q, double t) {
  if (!(p >= 0 && p < q && q < 3))
    throw GeometryError(ErrorCode::OutOfDomain, "planar_family needs 0 <= p < q < 3");
  if (!(t >= 0.0 && t <= 1.0))
    throw GeometryError(ErrorCode::OutOfDomain, "t = " + std::to_string(t) + " not in [0, 1]");
  const double s = std::sqrt(1.0 - t * t);
  // I0 scaled by t on the (p, q) plane pair, plus s times a structure that
  // anticommutes with I0 there: e_p -> e_q, e_{p+3} -> -e_{q+3}.
  Matrix6 m = standard_acs().matrix();
  for (int k : {p, q}) {
    m(k, k + 3) *= t;
    m(k + 3, k) *= t;
  }
  m(q, p) += s;
  m(p, q) -= s;
  m(q + 3, p + 3) -= s;
  m(p + 3, q + 3) += s;
  return validate(m, OrientationPolicy::positive, 1e-12);
}

KForm omega_of(const OrthogonalACS& i) { return exterior::two_form(i.matrix().transpose()); }

KForm d_omega(const OrthogonalACS& i) { return liealg::LieAlgebraSpec::standard().mc_differential(omega_of(i)); }

GeneralACS alpha_map(const OrthogonalACS& i, double eps) {
  if (!i.in_ao_minus(eps))
    throw GeometryError(ErrorCode::NotInAOMinus,
                        "x = " + std::to_string(i.x()) +
                            " >= 3/4; tau(d omega_I) = 4x - 3 is not negative");
  return GeneralACS{hitchin::hitchin_J(d_omega(i))};
}

Matrix6 polar_part(const Matrix6& j) {
  const Matrix6 d = 0.5 * (j - j.transpose());
  const Matrix6 s = -(d * d);
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(0.5 * (s + s.transpose()));
  const auto& w = eig.eigenvalues();
  if (!(w.minCoeff() > 1e-12 * std::max(1.0, w.maxCoeff())))
    throw GeometryError(ErrorCode::SingularSkewPart,
                        "smallest eigenvalue of -D^2 is " + std::to_string(w.minCoeff()));
  const Matrix6 inv_sqrt = eig.eigenvectors() * w.cwiseSqrt().cwiseInverse().asDiagonal() *
                           eig.eigenvectors().transpose();
  return inv_sqrt * d;
}

OrthogonalACS project_polar(const GeneralACS& j) {
  return validate(polar_part(j.J), OrientationPolicy::any, 1e-9);
}

double y_of_x(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw GeometryError(ErrorCode::OutOfDomain, "y(x) needs 0 <= x < 1");
  if (x < kYSeriesThreshold) return 0.5 + x * (3.0 / 8 + x * (5.0 / 16 + x * (35.0 / 128)));
  const double s = std::sqrt(1.0 - x);
  // (1 - s) / (x s) with 1 - s = x / (1 + s).
  return 1.0 / (s * (1.0 + s));
}

namespace {
void require_ao_minus(const OrthogonalACS& i) {
  if (!i.in_ao_minus())
    throw GeometryError(ErrorCode::NotInAOMinus, "x = " + std::to_string(i.x()) + " >= 3/4");
}
}  // namespace

Matrix3 u_rotation(const OrthogonalACS& i) {
  require_ao_minus(i);
  const double tau = 4.0 * i.x() - 3.0;
  const double y = y_of_x(i.x());
  return (2.0 / std::sqrt(1.0 - tau)) * (Matrix3::Identity() + y * cofactor(i.A)) * cofactor(i.B);
}

Matrix6 theorem2_closed_form(const OrthogonalACS& i) {
  require_ao_minus(i);
  const double tau = 4.0 * i.x() - 3.0;
  const double y = y_of_x(i.x());
  const double scale = 2.0 / std::sqrt(1.0 - tau);
  const Matrix3 bs = cofactor(i.B);
  Matrix6 w = Matrix6::Zero();
  w.topRightCorner<3, 3>() = scale * (Matrix3::Identity() + y * cofactor(i.A)) * bs;
  w.bottomLeftCorner<3, 3>() = -scale * (Matrix3::Identity() + y * cofactor(i.C)) * bs.transpose();
  return w;
}

liealg::FrameChange u_frame(const OrthogonalACS& i) {
  return liealg::FrameChange::second_factor(u_rotation(i).transpose());
}

Matrix6 hermitian_metric(const Matrix6& omega, const Matrix6& j) { return omega * j; }

HermitianPair lemma3_metric(const OrthogonalACS& i) {
  require_ao_minus(i);
  const liealg::FrameChange frame = u_frame(i);
  const double t = i.t();
  const Matrix3 as = cofactor(i.A);
  const Matrix3 diag = 2 * t * (Matrix3::Identity() - as / (1 + t));
  const Matrix3 off = -Matrix3::Identity() + 2 * as;
  Matrix6 g;
  g << diag, off, off, diag;
  return HermitianPair{frame.bilinear(theorem2_closed_form(i)), g, frame, t};
}

Su3Report su3_compatibility(const KForm& omega, const KForm& psi, const Matrix6& j) {
  const Matrix6 q = exterior::bilinear_matrix(omega) * j;
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(0.5 * (q + q.transpose()), Eigen::EigenvaluesOnly);
  return Su3Report{exterior::wedge(omega, psi).norm(), eig.eigenvalues().minCoeff()};
}

void to_json(nlohmann::json& j, const OrthogonalACS& i) {
  const Vector3 a = i.a();
  const Vector3 c = i.c();
  j = nlohmann::json{{"A", {a(0), a(1), a(2)}}, {"B", matrix_to_json(i.B)}, {"C", {c(0), c(1), c(2)}}};
}

void from_json(const nlohmann::json& j, OrthogonalACS& i) {
  if (j.contains("I")) {
    const Matrix6 m = matrix_from_json<6, 6>(j.at("I"));
    i.A = m.topLeftCorner<3, 3>();
    i.B = m.topRightCorner<3, 3>();
    i.C = m.bottomRightCorner<3, 3>();
    return;
  }
  const auto a = j.at("A").get<std::array<double, 3>>();
  const auto c = j.at("C").get<std::array<double, 3>>();
  i = OrthogonalACS::from_params({a[0], a[1], a[2]}, matrix_from_json<3, 3>(j.at("B")),
                                 {c[0], c[1], c[2]});
}

void to_json(nlohmann::json& j, const GeneralACS& g) { j = matrix_to_json(g.J); }

void from_json(const nlohmann::json& j, GeneralACS& g) { g.J = matrix_from_json<6, 6>(j); }

}  // namespace nk::acs
