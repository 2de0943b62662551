#pragma once

// Stable 3-forms in dimension six. A 3-form psi determines an endomorphism
// K(X) = A(i_X psi ^ psi), trivialized by Vol = e^{123456}, with
// K^2 = tau(psi) Id. When tau < 0 the form lies in the orbit with stabilizer
// SL(3, C) and J = K / sqrt(-tau) is an almost complex structure.

#include "nk/exterior.hpp"
#include "nk/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>

namespace nk::hitchin {

using exterior::KForm;

inline constexpr double kDefaultOrbitEps = 1e-10;

enum class Orbit { O1, O2, Degenerate };

const char* to_string(Orbit orbit);

/// Column j is A(i_{e_j} psi ^ psi).
Matrix6 hitchin_K(const KForm& psi);

/// (1/6) tr K^2.
double tau(const KForm& psi);

Orbit classify_orbit(const KForm& psi, double eps = kDefaultOrbitEps);

/// K / sqrt(-tau). Throws NonNegativeTau unless tau < -eps.
Matrix6 hitchin_J(const KForm& psi, double eps = kDefaultOrbitEps);

/// The 3-form phi with i_X psi = i_{JX} phi, i.e. phi(X,Y,Z) = -psi(JX,Y,Z).
/// Throws NotAlternating when that trilinear form is not alternating within
/// `tol`, which happens when psi is not of type (3,0)+(0,3) for J.
KForm dual_three_form(const KForm& psi, const Matrix6& j, double tol = 1e-10);

struct HitchinStructure {
  KForm psi{3};
  Matrix6 K = Matrix6::Zero();
  double tau = 0;
  std::optional<double> kappa;
  std::optional<Matrix6> J;
  std::optional<KForm> phi;

  /// Fills kappa, J and phi when tau < -eps.
  static HitchinStructure from(const KForm& psi, double eps = kDefaultOrbitEps);
};

void to_json(nlohmann::json& j, const HitchinStructure& h);
void from_json(const nlohmann::json& j, HitchinStructure& h);

}  // namespace nk::hitchin
