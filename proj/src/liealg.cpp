#include "nk/liealg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace nk::liealg {

using exterior::basis;
using exterior::index_of;
using exterior::Mask;

const LieAlgebraSpec& LieAlgebraSpec::standard() {
  static const LieAlgebraSpec spec = [] {
    LieAlgebraSpec s;
    for (int offset : {0, 3}) {
      s.set_bracket(offset + 0, offset + 1, offset + 2, 1.0);
      s.set_bracket(offset + 0, offset + 2, offset + 1, -1.0);
      s.set_bracket(offset + 1, offset + 2, offset + 0, 1.0);
    }
    return s;
  }();
  return spec;
}

void LieAlgebraSpec::set_bracket(int i, int j, int k, double value) {
  constants_[(k * 6 + i) * 6 + j] = value;
  constants_[(k * 6 + j) * 6 + i] = -value;
}

Vector6 LieAlgebraSpec::bracket(const Vector6& x, const Vector6& y) const {
  Vector6 out = Vector6::Zero();
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < 6; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < 6; ++j) out(k) += (*this)(k, i, j) * x(i) * y(j);
    }
  return out;
}

Matrix6 LieAlgebraSpec::ad(const Vector6& x) const {
  Matrix6 m = Matrix6::Zero();
  for (int k = 0; k < 6; ++k)
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 6; ++i) m(k, j) += (*this)(k, i, j) * x(i);
  return m;
}

double LieAlgebraSpec::antisymmetry_residual() const {
  double r = 0;
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) r = std::max(r, std::abs((*this)(k, i, j) + (*this)(k, j, i)));
  return r;
}

double LieAlgebraSpec::jacobi_residual() const {
  double r = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) {
          double s = 0;
          for (int m = 0; m < 6; ++m)
            s += (*this)(m, i, j) * (*this)(l, m, k) + (*this)(m, j, k) * (*this)(l, m, i) +
                 (*this)(m, k, i) * (*this)(l, m, j);
          r = std::max(r, std::abs(s));
        }
  return r;
}

KForm LieAlgebraSpec::mc_differential(const KForm& a) const {
  const int k = a.degree();
  if (k >= 6) throw GeometryError(ErrorCode::DegreeOverflow, "d of a 6-form");
  // d of each coframe 1-form.
  std::array<KForm, 6> d1;
  for (int m = 0; m < 6; ++m) {
    KForm f(2);
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) f[index_of(Mask((1u << i) | (1u << j)))] = -(*this)(m, i, j);
    d1[m] = f;
  }
  // d(e^{i1..ik}) = sum_p (-1)^p e^{i1..i(p-1)} ^ de^{ip} ^ e^{i(p+1)..ik}.
  KForm out(k + 1);
  const auto monomials = basis(k);
  for (std::size_t n = 0; n < monomials.size(); ++n) {
    if (a[n] == 0.0) continue;
    int p = 0;
    for (int i = 0; i < 6; ++i) {
      if (!(monomials[n] & (1u << i))) continue;
      const Mask before = Mask(monomials[n] & ((1u << i) - 1));
      const Mask after = Mask(monomials[n] & ~((2u << i) - 1));
      const auto two = basis(2);
      for (std::size_t q = 0; q < two.size(); ++q) {
        const double c = d1[i][q];
        if (c == 0.0) continue;
        const int s1 = exterior::shuffle_sign(before, two[q]);
        if (s1 == 0) continue;
        const Mask left = Mask(before | two[q]);
        const int s2 = exterior::shuffle_sign(left, after);
        if (s2 == 0) continue;
        const double sign = (p & 1) ? -1.0 : 1.0;
        out[index_of(Mask(left | after))] += sign * s1 * s2 * c * a[n];
      }
      ++p;
    }
  }
  return out;
}

double LieAlgebraSpec::max_abs_diff(const LieAlgebraSpec& other) const {
  double r = 0;
  for (std::size_t n = 0; n < constants_.size(); ++n)
    r = std::max(r, std::abs(constants_[n] - other.constants_[n]));
  return r;
}

FrameChange::FrameChange(const Matrix6& matrix) : matrix_(matrix) {
  Eigen::FullPivLU<Matrix6> lu(matrix);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12)
    throw GeometryError(ErrorCode::SingularFrame, "frame change matrix is singular");
  inverse_ = lu.inverse();
}

FrameChange FrameChange::second_factor(const Matrix3& r) {
  Matrix6 m = Matrix6::Identity();
  m.bottomRightCorner<3, 3>() = r;
  return FrameChange(m);
}

KForm FrameChange::form(const KForm& a) const {
  if (a.degree() == 0) return a;
  KForm out(a.degree());
  const auto monomials = basis(a.degree());
  std::vector<Vector6> args;
  for (std::size_t n = 0; n < monomials.size(); ++n) {
    args.clear();
    for (int i = 0; i < 6; ++i)
      if (monomials[n] & (1u << i)) args.push_back(matrix_.col(i));
    out[n] = a.evaluate(args);
  }
  return out;
}

LieAlgebraSpec FrameChange::structure(const LieAlgebraSpec& spec) const {
  LieAlgebraSpec out;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const Vector6 b = inverse_ * spec.bracket(matrix_.col(i), matrix_.col(j));
      for (int k = 0; k < 6; ++k) out.set_bracket(i, j, k, b(k));
    }
  return out;
}

void to_json(nlohmann::json& j, const LieAlgebraSpec& spec) {
  j = nlohmann::json::array();
  for (int i = 0; i < 6; ++i)
    for (int jj = i + 1; jj < 6; ++jj)
      for (int k = 0; k < 6; ++k)
        if (spec(k, i, jj) != 0.0)
          j.push_back({{"i", i + 1}, {"j", jj + 1}, {"k", k + 1}, {"value", spec(k, i, jj)}});
}

void from_json(const nlohmann::json& j, LieAlgebraSpec& spec) {
  spec = LieAlgebraSpec();
  for (const auto& entry : j) {
    const int i = entry.at("i").get<int>() - 1;
    const int jj = entry.at("j").get<int>() - 1;
    const int k = entry.at("k").get<int>() - 1;
    if (i < 0 || i > 5 || jj < 0 || jj > 5 || k < 0 || k > 5 || i == jj)
      throw nlohmann::json::other_error::create(501, "structure constant index out of range", &entry);
    spec.set_bracket(i, jj, k, entry.at("value").get<double>());
  }
}

}  // namespace nk::liealg
