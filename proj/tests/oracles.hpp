#pragma once

// Reference computations that do not go through the library's integrator.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace oracle {

inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return a.exp(); }

// Fixed-size RK4 for the Levi-Civita lift along the latitude theta0,
// phi = omega * tau on [0, t1]; returns L(t1, 0) in the frame (d_theta, d_phi).
inline Eigen::Matrix2d sphere_latitude_transport(double theta0, double omega, double t1, double h) {
  const double sc = std::sin(theta0) * std::cos(theta0);
  const double cot = std::cos(theta0) / std::sin(theta0);
  // u_theta' = sc * phi' * u_phi,  u_phi' = -cot * phi' * u_theta
  Eigen::Matrix2d a;
  a << 0.0, sc * omega, -cot * omega, 0.0;
  const long n = static_cast<long>(std::ceil(t1 / h - 1e-9));
  const double dt = t1 / static_cast<double>(n);
  Eigen::Matrix2d y = Eigen::Matrix2d::Identity();
  for (long i = 0; i < n; ++i) {
    const Eigen::Matrix2d k1 = a * y;
    const Eigen::Matrix2d k2 = a * (y + 0.5 * dt * k1);
    const Eigen::Matrix2d k3 = a * (y + 0.5 * dt * k2);
    const Eigen::Matrix2d k4 = a * (y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

// Similarity-invariant angle of a unimodular 2x2 matrix conjugate to a rotation.
inline double elliptic_angle(const Eigen::Matrix2d& m) {
  const double c = 0.5 * m.trace();
  const double s2 = -m(0, 1) * m(1, 0) - 0.25 * (m(0, 0) - m(1, 1)) * (m(0, 0) - m(1, 1));
  const double s = std::copysign(std::sqrt(std::max(0.0, s2)), m(1, 0));
  return std::atan2(s, c);
}

inline double wrap(double a) {
  const double two_pi = 2.0 * M_PI;
  double r = std::fmod(a, two_pi);
  if (r <= -M_PI) r += two_pi;
  if (r > M_PI) r -= two_pi;
  return r;
}

}  // namespace oracle
