#include "pathtrans/holonomy.hpp"

#include <cmath>
#include <numbers>

namespace pathtrans {

namespace {

// Round-off decides the sign of sin at a half turn; report the (-pi, pi] representative.
double canonical_angle(double a) {
  if (std::abs(a + std::numbers::pi) <= 1e-9) return std::numbers::pi;
  return a;
}

}  // namespace

HolonomyReport holonomy(const TransportAlongPaths& transport, const Path& loop, const HolonomyOptions& options) {
  const Interval& d = loop.domain();
  const Vec start = loop.position(d.lo);
  const Vec end = loop.position(d.hi);
  if (!transport.space().same_point(start, end, kJunctionTolerance * (1.0 + max_norm(start))))
    throw Error(ErrorCode::NotALoop, "path '" + loop.id() + "' does not close");

  const int r = transport.space().fibre_dim;
  HolonomyReport out;
  out.loop_id = loop.id();
  if (transport.is_linear()) {
    out.matrix = transport.matrix(loop, d.lo, d.hi);
  } else {
    const Vec u0 = options.base_fibre_point.size() == 0 ? Vec::Zero(r) : options.base_fibre_point;
    if (u0.size() != r) throw Error(ErrorCode::DomainMismatch, "base fibre point has the wrong dimension");
    const double h = options.jacobian_step;
    out.matrix.resize(r, r);
    for (int j = 0; j < r; ++j) {
      Vec up = u0, um = u0;
      up(j) += h;
      um(j) -= h;
      out.matrix.col(j) = (transport.apply(loop, d.lo, d.hi, up) - transport.apply(loop, d.lo, d.hi, um)) / (2.0 * h);
    }
  }
  out.distance_to_identity = max_norm(Mat(out.matrix - Mat::Identity(r, r)));
  if (r == 2) out.angle = holonomy_angle(out.matrix);
  return out;
}

double rotation_angle(const Mat& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorCode::NotARotation, "rotation angle needs a 2 x 2 matrix");
  if (max_norm(Mat(m.transpose() * m - Mat::Identity(2, 2))) > 1e-6 || m.determinant() <= 0.0)
    throw Error(ErrorCode::NotARotation, "matrix is not a rotation");
  return canonical_angle(std::atan2(m(1, 0), m(0, 0)));
}

std::optional<double> holonomy_angle(const Mat& m) {
  if (m.rows() != 2 || m.cols() != 2) return std::nullopt;
  const double c = 0.5 * m.trace();
  if (std::abs(m.determinant() - 1.0) > 1e-6 || std::abs(c) > 1.0 + 1e-6) return std::nullopt;
  const double diff = 0.5 * (m(0, 0) - m(1, 1));
  const double sin_sq = std::max(0.0, -m(0, 1) * m(1, 0) - diff * diff);
  const double s = std::copysign(std::sqrt(sin_sq), m(1, 0));
  return canonical_angle(std::atan2(s, c));
}

double angle_distance(double a, double b) {
  const double d = std::remainder(a - b, 2.0 * std::numbers::pi);
  return std::abs(d);
}

}  // namespace pathtrans
