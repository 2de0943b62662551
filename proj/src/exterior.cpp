#include "nk/exterior.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace nk::exterior {
namespace {

struct BasisTables {
  std::array<std::vector<Mask>, kDim + 1> by_degree;
  std::array<int, 1 << kDim> position{};

  BasisTables() {
    // Lexicographic order on increasing index lists: generate recursively.
    for (int k = 0; k <= kDim; ++k) {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        Mask m = 0;
        for (int i : idx) m |= Mask(1u << i);
        position[m] = int(by_degree[k].size());
        by_degree[k].push_back(m);
        int p = k - 1;
        while (p >= 0 && idx[p] == kDim - k + p) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      }
    }
  }
};

const BasisTables& tables() {
  static const BasisTables t;
  return t;
}

void check_degree(int degree) {
  if (degree < 0 || degree > kDim)
    throw GeometryError(ErrorCode::InvalidDegree,
                        "degree " + std::to_string(degree) + " not in 0..6");
}

}  // namespace

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::span<const Mask> basis(int degree) {
  check_degree(degree);
  return tables().by_degree[degree];
}

int index_of(Mask mask) { return tables().position[mask]; }

int shuffle_sign(Mask a, Mask b) {
  if (a & b) return 0;
  // Count pairs (i in a, j in b) with i > j.
  int inversions = 0;
  for (int j = 0; j < kDim; ++j)
    if (b & (1u << j)) inversions += std::popcount(unsigned(a) >> (j + 1));
  return (inversions & 1) ? -1 : 1;
}

KForm::KForm(int degree) : degree_(degree) {
  check_degree(degree);
  coeffs_.assign(binomial(kDim, degree), 0.0);
}

KForm::KForm(int degree, std::vector<double> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  check_degree(degree);
  if (int(coeffs_.size()) != binomial(kDim, degree))
    throw GeometryError(ErrorCode::InvalidDegree,
                        "degree " + std::to_string(degree) + " needs " +
                            std::to_string(binomial(kDim, degree)) +
                            " coefficients, got " +
                            std::to_string(coeffs_.size()));
}

KForm KForm::monomial(std::initializer_list<int> indices, double scale) {
  std::vector<int> idx(indices);
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return KForm(int(idx.size()));
      if (idx[i] > idx[j]) sign = -sign;
    }
  KForm f(int(idx.size()));
  Mask m = 0;
  for (int i : idx) m |= Mask(1u << i);
  f.coeffs_[index_of(m)] = sign * scale;
  return f;
}

double KForm::coeff(Mask mask) const {
  if (std::popcount(unsigned(mask)) != degree_) return 0.0;
  return coeffs_[index_of(mask)];
}

KForm& KForm::operator+=(const KForm& other) {
  if (other.degree_ != degree_)
    throw GeometryError(ErrorCode::InvalidDegree, "adding forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

KForm& KForm::operator-=(const KForm& other) {
  if (other.degree_ != degree_)
    throw GeometryError(ErrorCode::InvalidDegree, "subtracting forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

KForm& KForm::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

double KForm::norm() const {
  double s = 0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

double KForm::evaluate(std::span<const Vector6> args) const {
  if (int(args.size()) != degree_)
    throw GeometryError(ErrorCode::InvalidDegree, "evaluate needs exactly degree() vectors");
  if (degree_ == 0) return coeffs_[0];
  const auto monomials = basis(degree_);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kDim, kDim> sub(degree_, degree_);
  double total = 0;
  for (std::size_t n = 0; n < monomials.size(); ++n) {
    if (coeffs_[n] == 0.0) continue;
    int col = 0;
    for (int i = 0; i < kDim; ++i) {
      if (!(monomials[n] & (1u << i))) continue;
      for (int a = 0; a < degree_; ++a) sub(a, col) = args[a](i);
      ++col;
    }
    total += coeffs_[n] * sub.determinant();
  }
  return total;
}

KForm operator+(KForm a, const KForm& b) { return a += b; }
KForm operator-(KForm a, const KForm& b) { return a -= b; }
KForm operator*(double s, KForm a) { return a *= s; }
KForm operator*(KForm a, double s) { return a *= s; }

double max_abs_diff(const KForm& a, const KForm& b) {
  if (a.degree() != b.degree())
    throw GeometryError(ErrorCode::InvalidDegree, "comparing forms of different degree");
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

KForm wedge(const KForm& a, const KForm& b) {
  const int degree = a.degree() + b.degree();
  if (degree > kDim)
    throw GeometryError(ErrorCode::DegreeOverflow,
                        "wedge of degrees " + std::to_string(a.degree()) + " and " +
                            std::to_string(b.degree()) + " exceeds 6");
  KForm out(degree);
  const auto ba = basis(a.degree());
  const auto bb = basis(b.degree());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      if (b[j] == 0.0) continue;
      const int s = shuffle_sign(ba[i], bb[j]);
      if (s != 0) out[index_of(ba[i] | bb[j])] += s * a[i] * b[j];
    }
  }
  return out;
}

KForm interior(const Vector6& x, const KForm& a) {
  if (a.degree() < 1)
    throw GeometryError(ErrorCode::InvalidDegree, "interior product of a 0-form");
  KForm out(a.degree() - 1);
  const auto monomials = basis(a.degree());
  for (std::size_t n = 0; n < monomials.size(); ++n) {
    if (a[n] == 0.0) continue;
    int position = 0;
    for (int i = 0; i < kDim; ++i) {
      if (!(monomials[n] & (1u << i))) continue;
      const double sign = (position & 1) ? -1.0 : 1.0;
      out[index_of(Mask(monomials[n] & ~(1u << i)))] += sign * x(i) * a[n];
      ++position;
    }
  }
  return out;
}

KForm volume() {
  KForm v(kDim);
  v[0] = 1.0;
  return v;
}

Vector6 dual_iso_A(const KForm& phi5) {
  if (phi5.degree() != 5)
    throw GeometryError(ErrorCode::InvalidDegree, "dual_iso_A expects a 5-form");
  // i_Y Vol = sum_j (-1)^j Y^j e^{complement of j}.
  Vector6 y;
  for (int j = 0; j < kDim; ++j) {
    const Mask complement = Mask(0x3f & ~(1u << j));
    y(j) = ((j & 1) ? -1.0 : 1.0) * phi5.coeff(complement);
  }
  return y;
}

KForm two_form(const Matrix6& bilinear) {
  KForm f(2);
  const auto monomials = basis(2);
  for (std::size_t n = 0; n < monomials.size(); ++n) {
    const int i = std::countr_zero(unsigned(monomials[n]));
    const int j = 31 - std::countl_zero(unsigned(monomials[n]));
    f[n] = bilinear(i, j);
  }
  return f;
}

Matrix6 bilinear_matrix(const KForm& f) {
  if (f.degree() != 2)
    throw GeometryError(ErrorCode::InvalidDegree, "bilinear_matrix expects a 2-form");
  Matrix6 m = Matrix6::Zero();
  const auto monomials = basis(2);
  for (std::size_t n = 0; n < monomials.size(); ++n) {
    const int i = std::countr_zero(unsigned(monomials[n]));
    const int j = 31 - std::countl_zero(unsigned(monomials[n]));
    m(i, j) = f[n];
    m(j, i) = -f[n];
  }
  return m;
}

void to_json(nlohmann::json& j, const KForm& f) {
  j = nlohmann::json{{"degree", f.degree()},
                     {"coeffs", std::vector<double>(f.coeffs().begin(), f.coeffs().end())}};
}

void from_json(const nlohmann::json& j, KForm& f) {
  f = KForm(j.at("degree").get<int>(), j.at("coeffs").get<std::vector<double>>());
}

}  // namespace nk::exterior
