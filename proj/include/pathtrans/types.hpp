#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathtrans {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorCode {
  IntervalOutOfRange,
  DomainMismatch,
  NonCanonicalDomain,
  EndpointMismatch,
  InvalidPath,
  InvalidReparametrization,
  OutOfChart,
  InvalidGeometry,
  InverseUnavailable,
  SingularCoefficients,
  NonInvertible,
  ProbeDegenerate,
  NotFactorizable,
  NotApplicable,
  NotALoop,
  NotARotation,
  ConfigParse,
  FileNotFound,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Closed real interval [lo, hi]; lo == hi is a point interval.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  double scale() const { return 1.0 + std::max(std::abs(lo), std::abs(hi)); }
  bool contains(double s, double slack = 0.0) const { return s >= lo - slack && s <= hi + slack; }
  bool contains(const Interval& other, double slack = 0.0) const {
    return other.lo >= lo - slack && other.hi <= hi + slack;
  }
  bool approx_equal(const Interval& other, double tol = 1e-12) const {
    return std::abs(lo - other.lo) <= tol * scale() && std::abs(hi - other.hi) <= tol * scale();
  }
};

/// Selects a one-sided limit of a piecewise quantity at a breakpoint.
enum class Side { Left, Right };

inline Side flip(Side side) { return side == Side::Left ? Side::Right : Side::Left; }

inline double max_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline double max_norm(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace pathtrans
