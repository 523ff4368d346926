#pragma once

#include "pathtrans/types.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pathtrans {

enum class Smoothness { C1, PiecewiseC1, C0 };

const char* to_string(Smoothness s);

/// Junction tolerance used by canonical products and loop detection.
inline constexpr double kJunctionTolerance = 1e-9;
/// Default finite-difference step, relative to the parameter range.
inline constexpr double kDefaultRelativeFdStep = 1e-5;

/**
 * A parametrized curve s -> x(s) in a single coordinate chart of the base.
 *
 * Paths are immutable values; copies share the underlying evaluators.
 * Velocity evaluators take a Side so that piecewise-C1 paths (canonical
 * products, piecewise-affine reparametrizations) can report the one-sided
 * tangent at each of their breakpoints.
 */
class Path {
 public:
  using PositionFn = std::function<Vec(double)>;
  using VelocityFn = std::function<Vec(double, Side)>;

  Path(int dim, Interval domain, PositionFn position, VelocityFn velocity = {},
       Smoothness smoothness = Smoothness::C1, std::vector<double> breaks = {},
       std::string id = "path");

  int dim() const { return dim_; }
  const Interval& domain() const { return domain_; }
  Smoothness smoothness() const { return smoothness_; }
  const std::string& id() const { return id_; }
  bool has_velocity() const { return static_cast<bool>(velocity_); }

  /// Interior parameters where the tangent may jump.
  std::span<const double> breaks() const { return breaks_; }

  Vec position(double s) const;
  /// Analytic velocity; throws NotApplicable when the path has none.
  Vec velocity(double s, Side side = Side::Right) const;

  double fd_step() const { return fd_step_; }
  Path with_fd_step(double h) const;
  Path with_id(std::string id) const;

  // Raw evaluator access for path combinators.
  const PositionFn& position_fn() const { return position_; }
  const VelocityFn& velocity_fn() const { return velocity_; }

 private:
  void check_parameter(double s) const;

  int dim_;
  Interval domain_;
  PositionFn position_;
  VelocityFn velocity_;
  Smoothness smoothness_;
  std::vector<double> breaks_;
  std::string id_;
  double fd_step_;
};

enum class Orientation { Preserving, Reversing };

/// A change of parameter chi: source -> target (monotone, C1 or piecewise C1).
class Reparametrization {
 public:
  using MapFn = std::function<double(double)>;
  using DerivativeFn = std::function<double(double, Side)>;

  Reparametrization(Interval source, Interval target, MapFn map, DerivativeFn derivative,
                    std::vector<double> breaks = {});

  static Reparametrization identity(Interval domain);
  /// Affine bijection source -> target; reversing maps source.lo to target.hi.
  static Reparametrization affine(Interval source, Interval target,
                                  Orientation orientation = Orientation::Preserving);
  /// chi(s) = target.lo + L * ((s - source.lo) / source.length())^p, p > 0.
  static Reparametrization power(Interval source, Interval target, double exponent);
  /// Piecewise-affine map through the knots (src[i], tgt[i]); both strictly monotone.
  static Reparametrization piecewise_affine(std::vector<double> source_knots,
                                            std::vector<double> target_knots);

  const Interval& source() const { return source_; }
  const Interval& target() const { return target_; }
  Orientation orientation() const { return orientation_; }
  std::span<const double> breaks() const { return breaks_; }

  double operator()(double s) const;
  double derivative(double s, Side side = Side::Right) const;
  /// Numerical inverse by bisection (chi is monotone).
  double inverse(double x) const;

 private:
  Interval source_;
  Interval target_;
  MapFn map_;
  DerivativeFn derivative_;
  std::vector<double> breaks_;
  Orientation orientation_;
};

Path restrict(const Path& p, Interval sub);
Path reparametrize(const Path& p, const Reparametrization& chi);
/// result(t) = p(1 - t); requires p.domain() == [0, 1].
Path invert_canonical(const Path& p);
/// result(t) = p1(2t) on [0, 1/2] and p2(2t - 1) on [1/2, 1].
Path product_canonical(const Path& p1, const Path& p2, double junction_tol = kJunctionTolerance);

/// Tangent at s: analytic velocity when present, otherwise second-order finite
/// differences (central in the interior, one-sided at the endpoints).
Vec tangent(const Path& p, double s, Side side = Side::Right);
/// Tangent by finite differences with an explicit step, ignoring any analytic velocity.
Vec numerical_tangent(const Path& p, double s, double h);

namespace paths {

/// x(s) = from + (s - lo)/(hi - lo) * (to - from).
Path segment(const Vec& from, const Vec& to, Interval domain = {0.0, 1.0});
/// x(s) = point + (s - anchor) * velocity.
Path line(const Vec& point, const Vec& velocity, Interval domain, double anchor);
Path constant(const Vec& point, Interval domain = {0.0, 1.0});
/// The point path {r} -> {x}.
Path point_path(double r, const Vec& x);

/// (theta, phi)(s) = (colatitude, phi0 + omega * s) in the sphere chart.
Path latitude(double colatitude, double omega, Interval domain, double phi0 = 0.0);
/// Closed latitude circle on [0, 1] traversed `turns` times.
Path latitude_turns(double colatitude, double turns);

/// Great circle through the chart point `start` = (theta, phi) whose chart
/// velocity at domain.lo is `direction` = (dtheta, dphi).
Path great_circle(const Vec& start, const Vec& direction, Interval domain);

/// Natural cubic spline through (s_k, x_k); needs at least two samples with
/// strictly increasing s.
Path from_samples(std::vector<double> s, std::vector<Vec> x, std::string id = "samples");
/// CSV rows (s, x^1, ..., x^n); lines starting with '#' and a non-numeric
/// header row are skipped.
Path from_samples_csv(const std::string& file);

}  // namespace paths

}  // namespace pathtrans
