#pragma once

// Exterior algebra of the dual of a fixed 6-dimensional real vector space.
//
// A k-form is stored by its coefficients on the basis e^{i1...ik},
// i1 < ... < ik, listed in lexicographic order. Indices are 0-based in code;
// e^{123} in the usual notation is the mask {0,1,2}.

#include "nk/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace nk::exterior {

constexpr int kDim = 6;

/// Bitmask of the indices of one basis monomial.
using Mask = std::uint8_t;

int binomial(int n, int k);

/// Basis monomials of degree k in lexicographic order.
std::span<const Mask> basis(int degree);

/// Position of a monomial within basis(popcount(mask)).
int index_of(Mask mask);

/// Sign of the permutation sorting the concatenation (a, b) of two disjoint
/// increasing index lists; 0 when they share an index.
int shuffle_sign(Mask a, Mask b);

class KForm {
 public:
  KForm() : KForm(0) {}
  explicit KForm(int degree);
  KForm(int degree, std::vector<double> coeffs);

  /// The monomial e^{i1} ^ ... ^ e^{ik} for 0-based indices in any order,
  /// with the sign of the sorting permutation.
  static KForm monomial(std::initializer_list<int> indices, double scale = 1.0);

  int degree() const noexcept { return degree_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  double operator[](std::size_t i) const { return coeffs_[i]; }
  double& operator[](std::size_t i) { return coeffs_[i]; }

  /// Coefficient of the monomial with this mask.
  double coeff(Mask mask) const;

  KForm& operator+=(const KForm& other);
  KForm& operator-=(const KForm& other);
  KForm& operator*=(double s);

  double norm() const;

  /// Evaluates the form on `degree()` vectors (the determinant pairing
  /// e^{I}(X1..Xk) = det[X_a^{i_b}]).
  double evaluate(std::span<const Vector6> args) const;

  bool operator==(const KForm&) const = default;

 private:
  int degree_;
  std::vector<double> coeffs_;
};

KForm operator+(KForm a, const KForm& b);
KForm operator-(KForm a, const KForm& b);
KForm operator*(double s, KForm a);
KForm operator*(KForm a, double s);

double max_abs_diff(const KForm& a, const KForm& b);

KForm wedge(const KForm& a, const KForm& b);

/// i_X a; requires degree >= 1.
KForm interior(const Vector6& x, const KForm& a);

/// Vol = e^{123456}.
KForm volume();

/// The unique Y with i_Y Vol = phi5.
Vector6 dual_iso_A(const KForm& phi5);

/// 2-form with coefficients M(i,j), i < j; M is the matrix of the bilinear
/// form (X, Y) -> X^T M Y and is assumed skew.
KForm two_form(const Matrix6& bilinear);

/// Skew matrix M with w(X, Y) = X^T M Y.
Matrix6 bilinear_matrix(const KForm& two_form);

void to_json(nlohmann::json& j, const KForm& f);
void from_json(const nlohmann::json& j, KForm& f);

}  // namespace nk::exterior
