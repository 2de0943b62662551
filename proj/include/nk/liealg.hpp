#pragma once

// Six-dimensional real Lie algebras given by structure constants, with the
// Maurer-Cartan differential on left-invariant forms. Only su(2) + su(2) is
// shipped, but nothing below depends on it.

#include "nk/exterior.hpp"
#include "nk/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>

namespace nk::liealg {

using exterior::KForm;

class LieAlgebraSpec {
 public:
  LieAlgebraSpec() { constants_.fill(0.0); }

  /// su(2) + su(2) in the frame with [e1,e2]=e3, [e1,e3]=-e2, [e2,e3]=e1 and
  /// the same relations on e4, e5, e6.
  static const LieAlgebraSpec& standard();

  /// C^k_ij, the e_k component of [e_i, e_j].
  double operator()(int k, int i, int j) const { return constants_[(k * 6 + i) * 6 + j]; }

  /// Sets C^k_ij = value and C^k_ji = -value.
  void set_bracket(int i, int j, int k, double value);

  Vector6 bracket(const Vector6& x, const Vector6& y) const;

  /// Matrix of ad_X = [X, .].
  Matrix6 ad(const Vector6& x) const;

  /// Largest violation of C^k_ij = -C^k_ji.
  double antisymmetry_residual() const;
  /// Largest Jacobi-identity residual over all index triples.
  double jacobi_residual() const;

  /// d on left-invariant forms: de^k = -sum_{i<j} C^k_ij e^i ^ e^j, extended
  /// as a graded derivation.
  KForm mc_differential(const KForm& a) const;

  double max_abs_diff(const LieAlgebraSpec& other) const;

 private:
  std::array<double, 216> constants_;
};

/// A change of frame u_j = sum_i F_ij e_i (the columns of F are the new frame
/// vectors written in the old frame).
class FrameChange {
 public:
  explicit FrameChange(const Matrix6& matrix);

  static FrameChange identity() { return FrameChange(Matrix6::Identity()); }
  /// diag(E, R): keeps e1, e2, e3 and moves the second factor by R.
  static FrameChange second_factor(const Matrix3& r);

  const Matrix6& matrix() const noexcept { return matrix_; }
  const Matrix6& inverse() const noexcept { return inverse_; }

  /// Components of a vector in the new frame.
  Vector6 vector(const Vector6& v) const { return inverse_ * v; }
  /// Pullback of a form to the new coframe: coefficients a(u_I).
  KForm form(const KForm& a) const;
  /// Matrix of an endomorphism in the new frame.
  Matrix6 endomorphism(const Matrix6& m) const { return inverse_ * m * matrix_; }
  /// Matrix of a bilinear form in the new frame.
  Matrix6 bilinear(const Matrix6& m) const { return matrix_.transpose() * m * matrix_; }
  LieAlgebraSpec structure(const LieAlgebraSpec& spec) const;

 private:
  Matrix6 matrix_;
  Matrix6 inverse_;
};

void to_json(nlohmann::json& j, const LieAlgebraSpec& spec);
void from_json(const nlohmann::json& j, LieAlgebraSpec& spec);

}  // namespace nk::liealg
