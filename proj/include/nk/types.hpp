#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace nk {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Vector3 = Eigen::Vector3d;
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix3 = Eigen::Matrix3d;

inline Vector6 unit_vector(int i) { return Vector6::Unit(i); }

enum class ErrorCode {
  InvalidDegree,
  DegreeOverflow,
  NotSkew,
  NotComplexStructure,
  WrongOrientation,
  NotInAOMinus,
  NonNegativeTau,
  NotAlternating,
  SingularSkewPart,
  SingularFrame,
  SamplingExhausted,
  PoleAtHalf,
  OutOfDomain,
  InvalidMetric,
};

const char* to_string(ErrorCode code);

/// Raised for every contract or domain violation in the library. The code
/// names the failed check; the message carries the measured quantity.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Largest absolute entry, the norm every tolerance in this project refers to.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace nk
