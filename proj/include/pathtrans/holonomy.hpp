#pragma once

#include "pathtrans/transport.hpp"

#include <optional>
#include <string>

namespace pathtrans {

struct HolonomyReport {
  std::string loop_id;
  Mat matrix;
  std::optional<double> angle;  // r = 2 only
  double distance_to_identity = 0.0;
};

struct HolonomyOptions {
  Vec base_fibre_point;           // generic transports: linearization point, zero when empty
  double jacobian_step = 1e-5;
};

/// Transport matrix around the loop, or for generic transports the Jacobian
/// of the loop map at the base fibre point by central differences. Throws
/// NotALoop when the endpoints differ by more than the junction tolerance.
HolonomyReport holonomy(const TransportAlongPaths& transport, const Path& loop, const HolonomyOptions& options = {});

/// atan2(m10, m00) in (-pi, pi] for m orthogonal within 1e-6 with det > 0;
/// throws NotARotation otherwise.
double rotation_angle(const Mat& m);

/// Rotation angle of a 2 x 2 matrix similar to a rotation (det 1 within 1e-6,
/// |trace| <= 2 within 1e-6); unchanged by orientation-preserving changes of
/// frame. Empty for other matrices. Equals rotation_angle for rotations.
std::optional<double> holonomy_angle(const Mat& m);

/// |a - b| reduced to [0, pi].
double angle_distance(double a, double b);

}  // namespace pathtrans
