#pragma once

// Left-invariant almost complex structures on su(2) + su(2), orthogonal for
// the Killing-Cartan metric g = Id, written in 3x3 blocks
//
//        | A     B |        A, C skew with entries a1, a2, a3 / c1, c2, c3
//    I = |         |        in positions (0,1), (0,2), (1,2);
//        | -B^T  C |        B general, b1..b9 row-major.
//
// The map alpha sends I to the Hitchin structure of d(omega_I); project_polar
// retracts a general structure back to an orthogonal one.

#include "nk/exterior.hpp"
#include "nk/liealg.hpp"
#include "nk/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <random>

namespace nk::acs {

using exterior::KForm;

inline constexpr double kTolerance = 1e-10;
/// Boundary of AO-: tau(d omega_I) < 0 iff a1^2 + a2^2 + a3^2 < 3/4.
inline constexpr double kAOMinusBound = 0.75;

/// The cofactor matrix ("algebraic supplement"): entry (i,j) is (-1)^{i+j}
/// times the minor obtained by deleting row i and column j.
Matrix3 cofactor(const Matrix3& m);

/// Skew 3x3 matrix with (0,1), (0,2), (1,2) entries v(0), v(1), v(2).
Matrix3 skew_from(const Vector3& v);

struct OrthogonalACS {
  Matrix3 A = Matrix3::Zero();
  Matrix3 B = Matrix3::Zero();
  Matrix3 C = Matrix3::Zero();

  static OrthogonalACS from_params(const Vector3& a, const Matrix3& b, const Vector3& c);

  Vector3 a() const { return {A(0, 1), A(0, 2), A(1, 2)}; }
  Vector3 c() const { return {C(0, 1), C(0, 2), C(1, 2)}; }
  /// a1^2 + a2^2 + a3^2.
  double x() const { return a().squaredNorm(); }
  /// sqrt(1 - x).
  double t() const;
  bool in_ao_minus(double eps = 0.0) const { return x() < kAOMinusBound - eps; }

  Matrix6 matrix() const;
};

/// I0 = [[0, -E], [E, 0]].
OrthogonalACS standard_acs();

/// Largest residual over the nine scalar relations implied by I^2 = -1.
double scalar_relations_residual(const OrthogonalACS& i);

/// Orientation of (v1, v2, v3, Jv1, Jv2, Jv3) for a J-independent triple of
/// standard basis vectors: the determinant for the best-conditioned triple.
/// Positive exactly when J induces the orientation of (e1, ..., e6).
double orientation(const Matrix6& j);

enum class OrientationPolicy { positive, any };

/// Accepts a g-orthogonal almost complex structure. Throws NotSkew,
/// NotComplexStructure or WrongOrientation.
OrthogonalACS validate(const Matrix6& i, OrientationPolicy policy = OrientationPolicy::positive,
                       double tol = kTolerance);

struct GeneralACS {
  Matrix6 J = Matrix6::Zero();
};

/// Checks J^2 = -1 and positive orientation.
GeneralACS validate_general(const Matrix6& j, double tol = kTolerance);

/// det of the matrix taking (e1..e6) to (e1, e2, e3, Je1, Je2, Je3); equals
/// det of the lower-left block of J.
double amplification_determinant(const Matrix6& j);

// Sampling ------------------------------------------------------------------

/// Independent seed for the index-th substream of `seed` (splitmix64 mixing).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed rotation in SO(6).
Matrix6 random_rotation(std::mt19937_64& rng);

/// Q I0 Q^T.
OrthogonalACS conjugate_standard(const Matrix6& q);

/// Q I0 Q^T with Q Haar on SO(6); with `require_ao_minus` rejects until
/// x < 3/4. Throws SamplingExhausted after max_tries draws.
OrthogonalACS sample(std::uint64_t seed, bool require_ao_minus, int max_tries = 1000);

/// Rejection sample with lo < x < hi.
OrthogonalACS sample_in_band(std::uint64_t seed, double lo, double hi, int max_tries = 200000);

/// One-parameter family in the plane of e_p, e_q and e_{p+3}, e_{q+3}
/// (p < q < 3): cos(theta) I0 + sin(theta) R with cos(theta) = t. Only the
/// (p,q) entry of A is non-zero, so x = 1 - t^2.
OrthogonalACS planar_family(int p, int q, double t);

// The alpha / pi pipeline ---------------------------------------------------

/// omega_I(X, Y) = g(IX, Y); its coefficient matrix is I^T.
KForm omega_of(const OrthogonalACS& i);

/// d omega_I.
KForm d_omega(const OrthogonalACS& i);

/// J_I = K / sqrt(-tau(d omega_I)). Throws NotInAOMinus when x >= 3/4 - eps.
GeneralACS alpha_map(const OrthogonalACS& i, double eps = kTolerance);

/// (-D^2)^{-1/2} D for the skew part D of J.
Matrix6 polar_part(const Matrix6& j);

/// polar_part as an orthogonal structure. Throws SingularSkewPart.
OrthogonalACS project_polar(const GeneralACS& j);

/// y(x) = (1 - sqrt(1 - x)) / (x sqrt(1 - x)), by series for x < 1e-4.
double y_of_x(double x);
inline constexpr double kYSeriesThreshold = 1e-4;

/// Matrix of omega_J(X, Y) = g(pi(J_I) X, Y) from the closed form
/// (2 / sqrt(1 - tau)) [[0, (1 + y A*) B*], [-(1 + y C*) B*^T, 0]].
Matrix6 theorem2_closed_form(const OrthogonalACS& i);

/// The block X = (2 / sqrt(1 - tau)) (1 + y A*) B*, a rotation.
Matrix3 u_rotation(const OrthogonalACS& i);

/// Frame (u) = (e1, e2, e3, X^T e4-block): omega_J is [[0, E], [-E, 0]] there.
liealg::FrameChange u_frame(const OrthogonalACS& i);

/// g(X, Y) = omega(X, J Y) as a matrix: omega * J.
Matrix6 hermitian_metric(const Matrix6& omega, const Matrix6& j);

struct HermitianPair {
  Matrix6 omegaJ;  ///< omega_J in the (u) frame
  Matrix6 gI;      ///< block-formula metric in the (u) frame
  liealg::FrameChange frame;
  double t;
};

/// omega_J and the metric
///   g_I = [[2t(1 - A*/(1+t)), -1 + 2A*], [-1 + 2A*, 2t(1 - A*/(1+t))]]
/// in the (u) frame. g_I coincides with omega_J(., K .) = kappa omega_J(., J_I .).
HermitianPair lemma3_metric(const OrthogonalACS& i);

struct Su3Report {
  double wedge_norm;          ///< |omega ^ psi|
  double positivity_margin;   ///< min over unit X of omega(X, JX)
};

Su3Report su3_compatibility(const KForm& omega, const KForm& psi, const Matrix6& j);

void to_json(nlohmann::json& j, const OrthogonalACS& i);
void from_json(const nlohmann::json& j, OrthogonalACS& i);
void to_json(nlohmann::json& j, const GeneralACS& g);
void from_json(const nlohmann::json& j, GeneralACS& g);

}  // namespace nk::acs
