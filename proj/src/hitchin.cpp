#include "nk/hitchin.hpp"

#include "nk/json_io.hpp"

#include <array>
#include <cmath>

namespace nk::hitchin {

using exterior::basis;
using exterior::dual_iso_A;
using exterior::interior;
using exterior::wedge;

const char* to_string(Orbit orbit) {
  switch (orbit) {
    case Orbit::O1: return "O1";
    case Orbit::O2: return "O2";
    case Orbit::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {
void require_three_form(const KForm& psi) {
  if (psi.degree() != 3)
    throw GeometryError(ErrorCode::InvalidDegree,
                        "expected a 3-form, got degree " + std::to_string(psi.degree()));
}
}  // namespace

Matrix6 hitchin_K(const KForm& psi) {
  require_three_form(psi);
  Matrix6 k;
  for (int j = 0; j < 6; ++j) k.col(j) = dual_iso_A(wedge(interior(unit_vector(j), psi), psi));
  return k;
}

double tau(const KForm& psi) {
  const Matrix6 k = hitchin_K(psi);
  return (k * k).trace() / 6.0;
}

Orbit classify_orbit(const KForm& psi, double eps) {
  const double t = tau(psi);
  if (t < -eps) return Orbit::O1;
  if (t > eps) return Orbit::O2;
  return Orbit::Degenerate;
}

Matrix6 hitchin_J(const KForm& psi, double eps) {
  const Matrix6 k = hitchin_K(psi);
  const double t = (k * k).trace() / 6.0;
  if (t >= -eps)
    throw GeometryError(ErrorCode::NonNegativeTau,
                        "tau = " + std::to_string(t) + " is not negative; psi is not in O1");
  return k / std::sqrt(-t);
}

KForm dual_three_form(const KForm& psi, const Matrix6& j, double tol) {
  require_three_form(psi);
  // T(a,b,c) = -psi(J e_a, e_b, e_c). Antisymmetry in (b,c) is automatic; the
  // (a,b) swap is the real condition.
  std::array<double, 216> t{};
  for (int a = 0; a < 6; ++a) {
    const KForm contracted = interior(j.col(a), psi);
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) {
        const std::array<Vector6, 2> args{unit_vector(b), unit_vector(c)};
        t[(a * 6 + b) * 6 + c] = -contracted.evaluate(args);
      }
  }
  double defect = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        defect = std::max(defect, std::abs(t[(a * 6 + b) * 6 + c] + t[(b * 6 + a) * 6 + c]));
  if (defect > tol)
    throw GeometryError(ErrorCode::NotAlternating,
                        "-psi(J., ., .) fails antisymmetry by " + std::to_string(defect));

  KForm phi(3);
  const auto monomials = basis(3);
  for (std::size_t n = 0; n < monomials.size(); ++n) {
    std::array<int, 3> idx{};
    int p = 0;
    for (int i = 0; i < 6; ++i)
      if (monomials[n] & (1u << i)) idx[p++] = i;
    phi[n] = t[(idx[0] * 6 + idx[1]) * 6 + idx[2]];
  }

  double relation = 0;
  for (int a = 0; a < 6; ++a)
    relation = std::max(relation, exterior::max_abs_diff(interior(unit_vector(a), psi),
                                                         interior(j.col(a), phi)));
  if (relation > tol)
    throw GeometryError(ErrorCode::NotAlternating,
                        "i_X psi = i_JX phi fails by " + std::to_string(relation) +
                            " (J^2 != -1?)");
  return phi;
}

HitchinStructure HitchinStructure::from(const KForm& psi, double eps) {
  HitchinStructure h;
  h.psi = psi;
  h.K = hitchin_K(psi);
  h.tau = (h.K * h.K).trace() / 6.0;
  if (h.tau < -eps) {
    h.kappa = std::sqrt(-h.tau);
    h.J = h.K / *h.kappa;
    h.phi = dual_three_form(psi, *h.J);
  }
  return h;
}

void to_json(nlohmann::json& j, const HitchinStructure& h) {
  j = nlohmann::json{{"psi", h.psi}, {"K", matrix_to_json(h.K)}, {"tau", h.tau}};
  if (h.kappa) j["kappa"] = *h.kappa;
  if (h.J) j["J"] = matrix_to_json(*h.J);
  if (h.phi) j["phi"] = *h.phi;
}

void from_json(const nlohmann::json& j, HitchinStructure& h) {
  h = HitchinStructure{};
  h.psi = j.at("psi").get<KForm>();
  h.K = matrix_from_json<6, 6>(j.at("K"));
  h.tau = j.at("tau").get<double>();
  if (j.contains("kappa")) h.kappa = j["kappa"].get<double>();
  if (j.contains("J")) h.J = matrix_from_json<6, 6>(j["J"]);
  if (j.contains("phi")) h.phi = j["phi"].get<KForm>();
}

}  // namespace nk::hitchin
