#pragma once

// Curvature of left-invariant metrics. Everything reduces to linear algebra
// on the Lie algebra: the Koszul formula gives nabla_X Y for left-invariant
// X, Y with no derivative terms.

#include "nk/acs.hpp"
#include "nk/liealg.hpp"
#include "nk/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <optional>

namespace nk::curvature {

using Frame = std::array<Vector6, 6>;

class LeftInvariantMetric {
 public:
  /// Throws InvalidMetric unless g is symmetric (1e-12) and positive definite.
  explicit LeftInvariantMetric(const Matrix6& g,
                               const liealg::LieAlgebraSpec& spec = liealg::LieAlgebraSpec::standard());

  const Matrix6& matrix() const noexcept { return g_; }
  const liealg::LieAlgebraSpec& spec() const noexcept { return spec_; }
  double inner(const Vector6& x, const Vector6& y) const { return x.dot(g_ * y); }
  double norm(const Vector6& x) const;

 private:
  Matrix6 g_;
  liealg::LieAlgebraSpec spec_;
};

/// The Levi-Civita connection of a left-invariant metric, tabulated on the
/// basis: column j of table(i) is nabla_{e_i} e_j.
class Connection {
 public:
  explicit Connection(const LeftInvariantMetric& metric);

  const LeftInvariantMetric& metric() const noexcept { return metric_; }

  /// Matrix of Y -> nabla_X Y.
  Matrix6 operator()(const Vector6& x) const;
  Vector6 covariant(const Vector6& x, const Vector6& y) const { return (*this)(x) * y; }

  /// R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y] as a matrix.
  Matrix6 curvature_operator(const Vector6& x, const Vector6& y) const;
  Vector6 riemann(const Vector6& x, const Vector6& y, const Vector6& z) const {
    return curvature_operator(x, y) * z;
  }

  /// Ric(e_a, e_b) = tr(Z -> R(Z, e_a) e_b).
  Matrix6 ricci_tensor() const;

 private:
  LeftInvariantMetric metric_;
  std::array<Matrix6, 6> table_;
};

Vector6 levi_civita(const LeftInvariantMetric& g, const Vector6& x, const Vector6& y);
Vector6 riemann(const LeftInvariantMetric& g, const Vector6& x, const Vector6& y, const Vector6& z);

struct CurvatureReport {
  Frame orthonormal_frame{};
  Matrix6 ricci = Matrix6::Zero();  ///< Ric(v_i, v_j)
  double scalar = 0;
  std::optional<double> nk_defect;
};

/// Ricci in the Euclidean eigenframe of g, rescaled to be g-orthonormal.
CurvatureReport ricci(const LeftInvariantMetric& g);
/// Ricci in a caller-supplied g-orthonormal frame.
CurvatureReport ricci(const LeftInvariantMetric& g, const Frame& frame);

struct ClosedFormRicci {
  std::array<double, 6> diagonal;
  double scalar;
};

/// The diagonal Ricci entries and scalar curvature of g_I as rational
/// functions of t, in the order of proper_frame. Throws PoleAtHalf when
/// |4t^2 - 1| < eps and OutOfDomain outside (1/2, 1].
ClosedFormRicci theorem3_closed_form(double t, double eps = 1e-10);

/// g_I-orthonormal eigenframe of the block-formula metric in the (u) frame, ordered
/// by eigenvalue 2t-1 (two vectors), 1, 2t+1 (two), 4t^2-1. Directions inside
/// degenerate eigenspaces follow the closed-form eigenvectors: (p, +-p) with p
/// orthogonal to the axis of A, and (a, +-a) along it.
Frame proper_frame(const acs::OrthogonalACS& i);

/// g_NK = (1/sqrt 3) [[2E, -E], [-E, 2E]].
Matrix6 nearly_kahler_metric();

/// max over sampled g-unit X of |(nabla_X J) X|_g; zero exactly for nearly
/// Kaehler (g, J).
double nk_defect(const LeftInvariantMetric& g, const Matrix6& j, int samples = 512);

struct NkFormSystem {
  double mu;            ///< least-squares fit of d phi = -2 mu omega ^ omega
  double residual;      ///< |d phi + 2 mu omega ^ omega|
  double omega_psi;     ///< |omega ^ psi|
  bool phi_alternating; ///< false when psi is not of type (3,0)+(0,3) for J
};

/// With omega = g(J., .), psi = 3 d omega and phi from i_X psi = i_{JX} phi.
NkFormSystem nk_form_system(const LeftInvariantMetric& g, const Matrix6& j);

void to_json(nlohmann::json& j, const CurvatureReport& r);
void from_json(const nlohmann::json& j, CurvatureReport& r);

}  // namespace nk::curvature
