#include "nk/curvature.hpp"

#include "nk/hitchin.hpp"
#include "nk/json_io.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace nk::curvature {

LeftInvariantMetric::LeftInvariantMetric(const Matrix6& g, const liealg::LieAlgebraSpec& spec)
    : g_(g), spec_(spec) {
  const double asym = max_abs(g - g.transpose());
  if (asym > 1e-12) throw GeometryError(ErrorCode::InvalidMetric, "g not symmetric by " + std::to_string(asym));
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(g, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0))
    throw GeometryError(ErrorCode::InvalidMetric,
                        "g not positive definite, min eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()));
}

double LeftInvariantMetric::norm(const Vector6& x) const { return std::sqrt(inner(x, x)); }

Connection::Connection(const LeftInvariantMetric& metric) : metric_(metric) {
  const Matrix6& g = metric.matrix();
  const auto& spec = metric.spec();
  const Eigen::LDLT<Matrix6> solver(g);
  // Koszul: 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      Vector6 rhs;
      for (int k = 0; k < 6; ++k) {
        const Vector6 ei = unit_vector(i), ej = unit_vector(j), ek = unit_vector(k);
        rhs(k) = 0.5 * (metric.inner(spec.bracket(ei, ej), ek) - metric.inner(spec.bracket(ej, ek), ei) +
                        metric.inner(spec.bracket(ek, ei), ej));
      }
      table_[i].col(j) = solver.solve(rhs);
    }
  }
}

Matrix6 Connection::operator()(const Vector6& x) const {
  Matrix6 m = Matrix6::Zero();
  for (int i = 0; i < 6; ++i)
    if (x(i) != 0.0) m += x(i) * table_[i];
  return m;
}

Matrix6 Connection::curvature_operator(const Vector6& x, const Vector6& y) const {
  const Matrix6 nx = (*this)(x);
  const Matrix6 ny = (*this)(y);
  return nx * ny - ny * nx - (*this)(metric_.spec().bracket(x, y));
}

Matrix6 Connection::ricci_tensor() const {
  Matrix6 ric = Matrix6::Zero();
  for (int k = 0; k < 6; ++k)
    for (int a = 0; a < 6; ++a) {
      const Matrix6 r = curvature_operator(unit_vector(k), unit_vector(a));
      ric.row(a) += r.row(k);
    }
  return ric;
}

Vector6 levi_civita(const LeftInvariantMetric& g, const Vector6& x, const Vector6& y) {
  return Connection(g).covariant(x, y);
}

Vector6 riemann(const LeftInvariantMetric& g, const Vector6& x, const Vector6& y, const Vector6& z) {
  return Connection(g).riemann(x, y, z);
}

CurvatureReport ricci(const LeftInvariantMetric& g, const Frame& frame) {
  CurvatureReport report;
  report.orthonormal_frame = frame;
  Matrix6 v;
  for (int i = 0; i < 6; ++i) v.col(i) = frame[i];
  const Matrix6 ric = Connection(g).ricci_tensor();
  report.ricci = v.transpose() * ric * v;
  report.scalar = (g.matrix().ldlt().solve(ric)).trace();
  return report;
}

CurvatureReport ricci(const LeftInvariantMetric& g) {
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(g.matrix());
  Frame frame;
  for (int i = 0; i < 6; ++i) frame[i] = eig.eigenvectors().col(i) / std::sqrt(eig.eigenvalues()(i));
  return ricci(g, frame);
}

ClosedFormRicci theorem3_closed_form(double t, double eps) {
  const double q = 4 * t * t - 1;
  if (std::abs(q) < eps)
    throw GeometryError(ErrorCode::PoleAtHalf, "4t^2 - 1 = " + std::to_string(q) + " at t = " + std::to_string(t));
  if (!(t > 0.5 && t <= 1.0))
    throw GeometryError(ErrorCode::OutOfDomain, "t = " + std::to_string(t) + " not in (1/2, 1]");
  const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
  const double den = 2 * q * q;
  const double r1 = -(8 * t4 - 16 * t3 - 10 * t2 + 10 * t + 3) / den;
  const double r3 = (4 * t2 + 1) / den;
  const double r4 = -(8 * t4 - 16 * t3 + 6 * t2 - 2 * t - 1) / den;
  const double r6 = (-3 + 16 * t4 - 8 * t2) / den;
  const double s = -(8 * t4 - 32 * t3 - 2 * t2 + 8 * t + 3) / (q * q);
  return ClosedFormRicci{{r1, r1, r3, r4, r4, r6}, s};
}

namespace {

// Directions (p1, p2) spanning the plane orthogonal to the axis of A, and the
// unit axis itself; A* = axis axis^T.
std::array<Vector3, 3> eigen_seeds(const acs::OrthogonalACS& i) {
  const Vector3 a = i.a();  // (a1, a2, a3)
  const Vector3 axis(-a(2), a(1), -a(0));
  const double a13 = a(0) * a(0) + a(2) * a(2);
  if (a13 > 1e-24) {
    const Vector3 p1(-a(0), 0, a(2));
    const Vector3 p2(a(1) * a(2), a13, a(0) * a(1));
    return {p1.normalized(), p2.normalized(), axis.normalized()};
  }
  const Vector3 along = std::abs(a(1)) > 0 ? Vector3(0, a(1) > 0 ? 1 : -1, 0) : Vector3::UnitY();
  return {Vector3::UnitX(), Vector3::UnitZ(), along};
}

}  // namespace

Frame proper_frame(const acs::OrthogonalACS& i) {
  const Matrix6 g = acs::lemma3_metric(i).gI;
  const auto [p1, p2, axis] = eigen_seeds(i);
  auto stack = [](const Vector3& top, double sign) {
    Vector6 v;
    v << top, sign * top;
    return v;
  };
  const std::array<Vector6, 6> seeds{stack(p1, 1), stack(p2, 1), stack(axis, 1),
                                     stack(p1, -1), stack(p2, -1), stack(axis, -1)};

  Eigen::SelfAdjointEigenSolver<Matrix6> eig(g);
  const auto& w = eig.eigenvalues();
  const auto& vecs = eig.eigenvectors();
  const double cluster_tol = 1e-7 * std::max(1.0, w.maxCoeff());

  Frame frame;
  for (int n = 0; n < 6; ++n) {
    // Project the seed onto the eigen-cluster nearest its Rayleigh quotient.
    const Vector6& s = seeds[n];
    const double rayleigh = s.dot(g * s) / s.squaredNorm();
    int nearest = 0;
    for (int k = 1; k < 6; ++k)
      if (std::abs(w(k) - rayleigh) < std::abs(w(nearest) - rayleigh)) nearest = k;
    Vector6 v = Vector6::Zero();
    for (int k = 0; k < 6; ++k)
      if (std::abs(w(k) - w(nearest)) <= cluster_tol) v += vecs.col(k) * vecs.col(k).dot(s);
    // g-orthogonalize against earlier members of the same cluster.
    for (int m = 0; m < n; ++m) v -= frame[m] * frame[m].dot(g * v);
    const double len = std::sqrt(v.dot(g * v));
    if (!(len > 1e-8))
      throw GeometryError(ErrorCode::InvalidMetric, "proper frame seed collapsed onto earlier vectors");
    frame[n] = v / len;
  }
  return frame;
}

Matrix6 nearly_kahler_metric() {
  Matrix6 g;
  const Matrix3 e = Matrix3::Identity();
  g << 2 * e, -e, -e, 2 * e;
  return g / std::sqrt(3.0);
}

double nk_defect(const LeftInvariantMetric& g, const Matrix6& j, int samples) {
  const Connection nabla(g);
  // Fixed stream: the defect is a property of (g, J), not of a caller seed.
  std::mt19937_64 rng(0x6e6b646566656374ULL);
  std::normal_distribution<double> normal;
  double worst = 0;
  auto probe = [&](Vector6 x) {
    x /= g.norm(x);
    const Matrix6 nx = nabla(x);
    const Vector6 d = nx * (j * x) - j * (nx * x);
    worst = std::max(worst, g.norm(d));
  };
  for (int i = 0; i < 6; ++i) probe(unit_vector(i));
  for (int n = 0; n < samples; ++n) {
    Vector6 x;
    for (int i = 0; i < 6; ++i) x(i) = normal(rng);
    probe(x);
  }
  return worst;
}

NkFormSystem nk_form_system(const LeftInvariantMetric& g, const Matrix6& j) {
  using exterior::KForm;
  const KForm omega = exterior::two_form(j.transpose() * g.matrix());
  const KForm psi = 3.0 * g.spec().mc_differential(omega);
  NkFormSystem out{0, std::numeric_limits<double>::infinity(), exterior::wedge(omega, psi).norm(), false};
  KForm phi(3);
  try {
    phi = hitchin::dual_three_form(psi, j, 1e-9 * std::max(1.0, psi.norm()));
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::NotAlternating) throw;
    return out;
  }
  out.phi_alternating = true;
  const KForm dphi = g.spec().mc_differential(phi);
  const KForm ww = exterior::wedge(omega, omega);
  double dot = 0, sq = 0;
  for (std::size_t n = 0; n < ww.size(); ++n) {
    dot += dphi[n] * ww[n];
    sq += ww[n] * ww[n];
  }
  out.mu = sq > 0 ? -dot / (2 * sq) : 0.0;
  out.residual = (dphi + (2 * out.mu) * ww).norm();
  return out;
}

void to_json(nlohmann::json& j, const CurvatureReport& r) {
  Matrix6 frame;
  for (int i = 0; i < 6; ++i) frame.row(i) = r.orthonormal_frame[i].transpose();
  j = nlohmann::json{{"frame", matrix_to_json(frame)}, {"ricci", matrix_to_json(r.ricci)}, {"scalar", r.scalar}};
  j["nk_defect"] = r.nk_defect ? nlohmann::json(*r.nk_defect) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, CurvatureReport& r) {
  const Matrix6 frame = matrix_from_json<6, 6>(j.at("frame"));
  for (int i = 0; i < 6; ++i) r.orthonormal_frame[i] = frame.row(i).transpose();
  r.ricci = matrix_from_json<6, 6>(j.at("ricci"));
  r.scalar = j.at("scalar").get<double>();
  if (j.contains("nk_defect") && !j["nk_defect"].is_null()) r.nk_defect = j["nk_defect"].get<double>();
  else r.nk_defect.reset();
}

}  // namespace nk::curvature
