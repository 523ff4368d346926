#include "pathtrans/path.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pathtrans {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IntervalOutOfRange: return "interval-out-of-range";
    case ErrorCode::DomainMismatch: return "domain-mismatch";
    case ErrorCode::NonCanonicalDomain: return "non-canonical-domain";
    case ErrorCode::EndpointMismatch: return "endpoint-mismatch";
    case ErrorCode::InvalidPath: return "invalid-path";
    case ErrorCode::InvalidReparametrization: return "invalid-reparametrization";
    case ErrorCode::OutOfChart: return "out-of-chart";
    case ErrorCode::InvalidGeometry: return "invalid-geometry";
    case ErrorCode::InverseUnavailable: return "inverse-unavailable";
    case ErrorCode::SingularCoefficients: return "singular-coefficients";
    case ErrorCode::NonInvertible: return "non-invertible";
    case ErrorCode::ProbeDegenerate: return "probe-degenerate";
    case ErrorCode::NotFactorizable: return "not-factorizable";
    case ErrorCode::NotApplicable: return "not-applicable";
    case ErrorCode::NotALoop: return "not-a-loop";
    case ErrorCode::NotARotation: return "not-a-rotation";
    case ErrorCode::ConfigParse: return "config-parse";
    case ErrorCode::FileNotFound: return "file-not-found";
  }
  return "unknown";
}

const char* to_string(Smoothness s) {
  switch (s) {
    case Smoothness::C1: return "C1";
    case Smoothness::PiecewiseC1: return "piecewise-C1";
    case Smoothness::C0: return "C0";
  }
  return "unknown";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Parameter slack tolerated when evaluating at the domain ends.
double slack(const Interval& d) { return 1e-9 * d.scale(); }

Smoothness weaker(Smoothness a, Smoothness b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

std::vector<double> interior_sorted(std::vector<double> breaks, const Interval& d) {
  std::erase_if(breaks, [&](double b) { return !(b > d.lo && b < d.hi); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double a, double b) { return std::abs(a - b) <= 1e-14 * d.scale(); }),
               breaks.end());
  return breaks;
}

}  // namespace

Path::Path(int dim, Interval domain, PositionFn position, VelocityFn velocity, Smoothness smoothness,
           std::vector<double> breaks, std::string id)
    : dim_(dim),
      domain_(domain),
      position_(std::move(position)),
      velocity_(std::move(velocity)),
      smoothness_(smoothness),
      breaks_(interior_sorted(std::move(breaks), domain)),
      id_(std::move(id)),
      fd_step_(kDefaultRelativeFdStep * domain.length()) {
  if (dim_ <= 0) throw Error(ErrorCode::InvalidPath, "dimension must be positive");
  if (!std::isfinite(domain_.lo) || !std::isfinite(domain_.hi) || domain_.lo > domain_.hi)
    throw Error(ErrorCode::InvalidPath, "domain must be a finite closed interval");
  if (!position_) throw Error(ErrorCode::InvalidPath, "position evaluator is required");
  if (!velocity_ && smoothness_ == Smoothness::C1) smoothness_ = Smoothness::PiecewiseC1;

  for (int k = 0; k <= 4; ++k) {
    const double s = domain_.lo + domain_.length() * k / 4.0;
    const Vec x = position_(s);
    if (x.size() != dim_) throw Error(ErrorCode::InvalidPath, "position has wrong dimension");
    if (!x.allFinite()) throw Error(ErrorCode::InvalidPath, "position is not finite on the domain");
  }
}

void Path::check_parameter(double s) const {
  if (!domain_.contains(s, slack(domain_)))
    throw Error(ErrorCode::IntervalOutOfRange,
                "parameter " + std::to_string(s) + " outside [" + std::to_string(domain_.lo) + ", " +
                    std::to_string(domain_.hi) + "] of " + id_);
}

Vec Path::position(double s) const {
  check_parameter(s);
  return position_(std::clamp(s, domain_.lo, domain_.hi));
}

Vec Path::velocity(double s, Side side) const {
  if (!velocity_) throw Error(ErrorCode::NotApplicable, "path " + id_ + " has no analytic velocity");
  check_parameter(s);
  return velocity_(std::clamp(s, domain_.lo, domain_.hi), side);
}

Path Path::with_fd_step(double h) const {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidPath, "finite-difference step must be positive");
  Path copy = *this;
  copy.fd_step_ = h;
  return copy;
}

Path Path::with_id(std::string id) const {
  Path copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

// ---------------------------------------------------------------------------
// Reparametrization

Reparametrization::Reparametrization(Interval source, Interval target, MapFn map, DerivativeFn derivative,
                                     std::vector<double> breaks)
    : source_(source),
      target_(target),
      map_(std::move(map)),
      derivative_(std::move(derivative)),
      breaks_(interior_sorted(std::move(breaks), source)),
      orientation_(Orientation::Preserving) {
  if (!map_ || !derivative_) throw Error(ErrorCode::InvalidReparametrization, "map and derivative are required");
  if (!(source_.length() > 0.0) || !(target_.length() > 0.0))
    throw Error(ErrorCode::InvalidReparametrization, "source and target must be non-degenerate");

  const double mid = 0.5 * (source_.lo + source_.hi);
  orientation_ = derivative_(mid, Side::Right) < 0.0 ? Orientation::Reversing : Orientation::Preserving;

  const double tol = 1e-9 * target_.scale();
  const double at_lo = map_(source_.lo);
  const double at_hi = map_(source_.hi);
  const bool ends_ok = orientation_ == Orientation::Preserving
                           ? std::abs(at_lo - target_.lo) <= tol && std::abs(at_hi - target_.hi) <= tol
                           : std::abs(at_lo - target_.hi) <= tol && std::abs(at_hi - target_.lo) <= tol;
  if (!ends_ok) throw Error(ErrorCode::InvalidReparametrization, "endpoints must map onto the target endpoints");

  const double sign = orientation_ == Orientation::Preserving ? 1.0 : -1.0;
  for (int k = 1; k < 100; ++k) {
    const double s = source_.lo + source_.length() * k / 100.0;
    for (Side side : {Side::Left, Side::Right}) {
      if (!(sign * derivative_(s, side) > 0.0))
        throw Error(ErrorCode::InvalidReparametrization, "derivative must keep a strict sign in the interior");
    }
  }
  for (double s : {source_.lo, source_.hi}) {
    if (sign * derivative_(s, Side::Right) < 0.0)
      throw Error(ErrorCode::InvalidReparametrization, "derivative changes sign at an endpoint");
  }
}

Reparametrization Reparametrization::identity(Interval domain) {
  return Reparametrization(
      domain, domain, [](double s) { return s; }, [](double, Side) { return 1.0; });
}

Reparametrization Reparametrization::affine(Interval source, Interval target, Orientation orientation) {
  const double slope = (orientation == Orientation::Preserving ? 1.0 : -1.0) * target.length() / source.length();
  const double origin = orientation == Orientation::Preserving ? target.lo : target.hi;
  return Reparametrization(
      source, target, [=](double s) { return origin + slope * (s - source.lo); },
      [=](double, Side) { return slope; });
}

Reparametrization Reparametrization::power(Interval source, Interval target, double exponent) {
  if (!(exponent > 0.0)) throw Error(ErrorCode::InvalidReparametrization, "exponent must be positive");
  const double src_len = source.length();
  const double tgt_len = target.length();
  return Reparametrization(
      source, target,
      [=](double s) { return target.lo + tgt_len * std::pow((s - source.lo) / src_len, exponent); },
      [=](double s, Side) {
        return tgt_len * exponent * std::pow((s - source.lo) / src_len, exponent - 1.0) / src_len;
      });
}

Reparametrization Reparametrization::piecewise_affine(std::vector<double> src, std::vector<double> tgt) {
  if (src.size() < 2 || src.size() != tgt.size())
    throw Error(ErrorCode::InvalidReparametrization, "need matching knot lists of length >= 2");
  for (std::size_t i = 1; i < src.size(); ++i) {
    if (!(src[i] > src[i - 1])) throw Error(ErrorCode::InvalidReparametrization, "source knots must increase");
  }
  const Interval source{src.front(), src.back()};
  const Interval target{std::min(tgt.front(), tgt.back()), std::max(tgt.front(), tgt.back())};
  auto segment_of = [src](double s, Side side) {
    auto it = side == Side::Left ? std::lower_bound(src.begin(), src.end(), s)
                                 : std::upper_bound(src.begin(), src.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(src.begin(), it));
    i = std::clamp<std::size_t>(i, 1, src.size() - 1);
    return i - 1;
  };
  auto map = [=](double s) {
    const std::size_t i = segment_of(s, Side::Right);
    const double w = (s - src[i]) / (src[i + 1] - src[i]);
    return tgt[i] + w * (tgt[i + 1] - tgt[i]);
  };
  auto derivative = [=](double s, Side side) {
    const std::size_t i = segment_of(s, side);
    return (tgt[i + 1] - tgt[i]) / (src[i + 1] - src[i]);
  };
  std::vector<double> breaks(src.begin() + 1, src.end() - 1);
  return Reparametrization(source, target, map, derivative, std::move(breaks));
}

double Reparametrization::operator()(double s) const {
  return std::clamp(map_(std::clamp(s, source_.lo, source_.hi)), target_.lo, target_.hi);
}

double Reparametrization::derivative(double s, Side side) const {
  return derivative_(std::clamp(s, source_.lo, source_.hi), side);
}

double Reparametrization::inverse(double x) const {
  double lo = source_.lo;
  double hi = source_.hi;
  const bool increasing = orientation_ == Orientation::Preserving;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * source_.scale(); ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool below = (*this)(mid) < x;
    if (below == increasing) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Path calculus

Path restrict(const Path& p, Interval sub) {
  const Interval& d = p.domain();
  if (sub.lo > sub.hi || !d.contains(sub, 1e-12 * d.scale()))
    throw Error(ErrorCode::IntervalOutOfRange, "restriction interval is not inside the path domain");
  sub.lo = std::max(sub.lo, d.lo);
  sub.hi = std::min(sub.hi, d.hi);
  std::vector<double> breaks(p.breaks().begin(), p.breaks().end());
  return Path(p.dim(), sub, p.position_fn(), p.velocity_fn(), p.smoothness(), std::move(breaks), p.id());
}

Path reparametrize(const Path& p, const Reparametrization& chi) {
  if (!chi.target().approx_equal(p.domain()))
    throw Error(ErrorCode::DomainMismatch, "reparametrization target differs from the path domain");
  auto pos = p.position_fn();
  Path::PositionFn position = [pos, chi](double s) { return pos(chi(s)); };
  Path::VelocityFn velocity;
  if (p.has_velocity()) {
    const bool reversing = chi.orientation() == Orientation::Reversing;
    velocity = [vel = p.velocity_fn(), chi, reversing](double s, Side side) -> Vec {
      return chi.derivative(s, side) * vel(chi(s), reversing ? flip(side) : side);
    };
  }
  std::vector<double> breaks(chi.breaks().begin(), chi.breaks().end());
  for (double b : p.breaks()) breaks.push_back(chi.inverse(b));
  Smoothness smooth = p.smoothness();
  if (!breaks.empty()) smooth = weaker(smooth, Smoothness::PiecewiseC1);
  return Path(p.dim(), chi.source(), std::move(position), std::move(velocity), smooth, std::move(breaks),
              "reparam(" + p.id() + ")");
}

namespace {

void require_canonical(const Path& p) {
  if (!p.domain().approx_equal(Interval{0.0, 1.0}))
    throw Error(ErrorCode::NonCanonicalDomain, "path " + p.id() + " is not defined on [0, 1]");
}

}  // namespace

Path invert_canonical(const Path& p) {
  require_canonical(p);
  Path::PositionFn position = [pos = p.position_fn()](double t) { return pos(1.0 - t); };
  Path::VelocityFn velocity;
  if (p.has_velocity()) {
    velocity = [vel = p.velocity_fn()](double t, Side side) -> Vec { return -vel(1.0 - t, flip(side)); };
  }
  std::vector<double> breaks;
  for (double b : p.breaks()) breaks.push_back(1.0 - b);
  return Path(p.dim(), {0.0, 1.0}, std::move(position), std::move(velocity), p.smoothness(), std::move(breaks),
              "inv(" + p.id() + ")");
}

Path product_canonical(const Path& p1, const Path& p2, double junction_tol) {
  require_canonical(p1);
  require_canonical(p2);
  if (p1.dim() != p2.dim()) throw Error(ErrorCode::DomainMismatch, "paths live in different dimensions");
  if (max_norm(Vec(p1.position(1.0) - p2.position(0.0))) > junction_tol)
    throw Error(ErrorCode::EndpointMismatch, "p1(1) != p2(0) for product of " + p1.id() + " and " + p2.id());

  Path::PositionFn position = [a = p1.position_fn(), b = p2.position_fn()](double t) {
    return t <= 0.5 ? a(2.0 * t) : b(2.0 * t - 1.0);
  };
  Path::VelocityFn velocity;
  Smoothness smooth = weaker(weaker(p1.smoothness(), p2.smoothness()), Smoothness::PiecewiseC1);
  if (p1.has_velocity() && p2.has_velocity()) {
    velocity = [a = p1.velocity_fn(), b = p2.velocity_fn()](double t, Side side) -> Vec {
      const bool first = t < 0.5 || (t == 0.5 && side == Side::Left);
      return first ? Vec(2.0 * a(2.0 * t, side)) : Vec(2.0 * b(2.0 * t - 1.0, side));
    };
    const bool both_c1 = p1.smoothness() == Smoothness::C1 && p2.smoothness() == Smoothness::C1;
    const Vec left = 2.0 * p1.velocity(1.0, Side::Left);
    const Vec right = 2.0 * p2.velocity(0.0, Side::Right);
    if (both_c1 && max_norm(Vec(left - right)) <= junction_tol) smooth = Smoothness::C1;
  }
  if (p1.smoothness() == Smoothness::C0 || p2.smoothness() == Smoothness::C0) smooth = Smoothness::C0;

  std::vector<double> breaks{0.5};
  for (double b : p1.breaks()) breaks.push_back(0.5 * b);
  for (double b : p2.breaks()) breaks.push_back(0.5 * (b + 1.0));
  return Path(p1.dim(), {0.0, 1.0}, std::move(position), std::move(velocity), smooth, std::move(breaks),
              "(" + p1.id() + "*" + p2.id() + ")");
}

Vec numerical_tangent(const Path& p, double s, double h) {
  const Interval& d = p.domain();
  if (!d.contains(s, slack(d))) throw Error(ErrorCode::IntervalOutOfRange, "tangent parameter outside domain");
  s = std::clamp(s, d.lo, d.hi);
  if (d.is_point()) return Vec::Zero(p.dim());
  h = std::min(h, 0.25 * d.length());
  const auto& x = p.position_fn();
  if (s - h >= d.lo && s + h <= d.hi) return (x(s + h) - x(s - h)) / (2.0 * h);
  if (s - d.lo < d.hi - s) return (-3.0 * x(s) + 4.0 * x(s + h) - x(s + 2.0 * h)) / (2.0 * h);
  return (3.0 * x(s) - 4.0 * x(s - h) + x(s - 2.0 * h)) / (2.0 * h);
}

Vec tangent(const Path& p, double s, Side side) {
  if (p.has_velocity()) return p.velocity(s, side);
  return numerical_tangent(p, s, p.fd_step());
}

// ---------------------------------------------------------------------------
// Builtin families

namespace paths {

inline constexpr double kPoleCutoff = 1e-3;

Path segment(const Vec& from, const Vec& to, Interval domain) {
  if (from.size() != to.size()) throw Error(ErrorCode::InvalidPath, "segment endpoints differ in dimension");
  if (!(domain.length() > 0.0)) throw Error(ErrorCode::InvalidPath, "segment needs a non-degenerate domain");
  const Vec v = (to - from) / domain.length();
  return line(from, v, domain, domain.lo).with_id("segment");
}

Path line(const Vec& point, const Vec& velocity, Interval domain, double anchor) {
  if (point.size() != velocity.size()) throw Error(ErrorCode::InvalidPath, "line point/velocity dimension mismatch");
  return Path(
      static_cast<int>(point.size()), domain,
      [=](double s) -> Vec { return point + (s - anchor) * velocity; },
      [=](double, Side) -> Vec { return velocity; }, Smoothness::C1, {}, "line");
}

Path constant(const Vec& point, Interval domain) {
  const auto n = point.size();
  return Path(
      static_cast<int>(n), domain, [=](double) -> Vec { return point; },
      [n](double, Side) -> Vec { return Vec::Zero(n); }, Smoothness::C1, {}, "constant");
}

Path point_path(double r, const Vec& x) { return constant(x, {r, r}).with_id("point"); }

Path latitude(double colatitude, double omega, Interval domain, double phi0) {
  if (!(colatitude > kPoleCutoff && colatitude < std::numbers::pi - kPoleCutoff))
    throw Error(ErrorCode::InvalidPath, "latitude circle touches a pole of the sphere chart");
  return Path(
      2, domain,
      [=](double s) -> Vec { return Eigen::Vector2d(colatitude, phi0 + omega * s); },
      [=](double, Side) -> Vec { return Eigen::Vector2d(0.0, omega); }, Smoothness::C1, {}, "latitude");
}

Path latitude_turns(double colatitude, double turns) {
  return latitude(colatitude, kTwoPi * turns, {0.0, 1.0});
}

Path great_circle(const Vec& start, const Vec& direction, Interval domain) {
  if (start.size() != 2 || direction.size() != 2)
    throw Error(ErrorCode::InvalidPath, "great circle lives in the 2-dimensional sphere chart");
  const double th = start(0);
  const double ph = start(1);
  const Eigen::Vector3d p(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  const Eigen::Vector3d e_th(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
  const Eigen::Vector3d e_ph(-std::sin(ph), std::cos(ph), 0.0);
  const Eigen::Vector3d v = direction(0) * e_th + direction(1) * std::sin(th) * e_ph;
  const double w = v.norm();
  if (w == 0.0) return constant(start, domain).with_id("great_circle");
  const Eigen::Vector3d dir = v / w;
  const double lo = domain.lo;

  auto embed = [=](double s) -> Eigen::Vector3d {
    return p * std::cos(w * (s - lo)) + dir * std::sin(w * (s - lo));
  };
  auto embed_dot = [=](double s) -> Eigen::Vector3d {
    return w * (-p * std::sin(w * (s - lo)) + dir * std::cos(w * (s - lo)));
  };

  // Unwrapped azimuth table; evaluation picks the branch nearest to it.
  constexpr int kTable = 4096;
  auto table = std::make_shared<std::vector<double>>(kTable + 1);
  double prev_raw = ph;
  double acc = ph;
  for (int k = 0; k <= kTable; ++k) {
    const double s = lo + domain.length() * k / kTable;
    const Eigen::Vector3d c = embed(s);
    if (std::hypot(c.x(), c.y()) < std::sin(kPoleCutoff))
      throw Error(ErrorCode::InvalidPath, "great circle passes through a pole of the sphere chart");
    const double raw = std::atan2(c.y(), c.x());
    if (k > 0) acc += std::remainder(raw - prev_raw, kTwoPi);
    (*table)[k] = acc;
    prev_raw = raw;
  }

  auto position = [=](double s) -> Vec {
    const Eigen::Vector3d c = embed(s);
    const double rho = std::hypot(c.x(), c.y());
    const double raw = std::atan2(c.y(), c.x());
    const double u = domain.length() > 0.0 ? (s - lo) / domain.length() * kTable : 0.0;
    const int k = std::clamp(static_cast<int>(u), 0, kTable - 1);
    const double frac = std::clamp(u - k, 0.0, 1.0);
    const double ref = (*table)[k] + frac * ((*table)[k + 1] - (*table)[k]);
    return Eigen::Vector2d(std::atan2(rho, c.z()), raw + kTwoPi * std::round((ref - raw) / kTwoPi));
  };
  auto velocity = [=](double s, Side) -> Vec {
    const Eigen::Vector3d c = embed(s);
    const Eigen::Vector3d d = embed_dot(s);
    const double rho2 = c.x() * c.x() + c.y() * c.y();
    return Eigen::Vector2d(-d.z() / std::sqrt(rho2), (c.x() * d.y() - c.y() * d.x()) / rho2);
  };
  return Path(2, domain, position, velocity, Smoothness::C1, {}, "great_circle");
}

namespace {

// Natural cubic spline through (s_k, y_k) for each row of y.
struct CubicSpline {
  std::vector<double> s;
  Mat y;   // dim x K
  Mat m;   // second derivatives, dim x K

  CubicSpline(std::vector<double> knots, const Mat& values) : s(std::move(knots)), y(values), m(Mat::Zero(values.rows(), values.cols())) {
    const std::size_t k = s.size();
    if (k < 3) return;
    // Thomas algorithm on the interior second derivatives.
    const std::size_t n = k - 2;
    std::vector<double> sub(n), diag(n), sup(n);
    Mat rhs(y.rows(), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double h0 = s[i + 1] - s[i];
      const double h1 = s[i + 2] - s[i + 1];
      sub[i] = h0;
      diag[i] = 2.0 * (h0 + h1);
      sup[i] = h1;
      rhs.col(static_cast<Eigen::Index>(i)) =
          6.0 * ((y.col(static_cast<Eigen::Index>(i + 2)) - y.col(static_cast<Eigen::Index>(i + 1))) / h1 -
                 (y.col(static_cast<Eigen::Index>(i + 1)) - y.col(static_cast<Eigen::Index>(i))) / h0);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs.col(static_cast<Eigen::Index>(i)) -= w * rhs.col(static_cast<Eigen::Index>(i - 1));
    }
    Mat interior(y.rows(), static_cast<Eigen::Index>(n));
    interior.col(static_cast<Eigen::Index>(n - 1)) = rhs.col(static_cast<Eigen::Index>(n - 1)) / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
      interior.col(static_cast<Eigen::Index>(i)) =
          (rhs.col(static_cast<Eigen::Index>(i)) - sup[i] * interior.col(static_cast<Eigen::Index>(i + 1))) / diag[i];
    }
    m.middleCols(1, static_cast<Eigen::Index>(n)) = interior;
  }

  std::size_t interval_of(double x) const {
    auto it = std::upper_bound(s.begin(), s.end(), x);
    std::size_t i = static_cast<std::size_t>(std::distance(s.begin(), it));
    return std::clamp<std::size_t>(i, 1, s.size() - 1) - 1;
  }

  Vec value(double x) const {
    const std::size_t i = interval_of(x);
    const auto a = static_cast<Eigen::Index>(i);
    const double h = s[i + 1] - s[i];
    const double t0 = s[i + 1] - x;
    const double t1 = x - s[i];
    return m.col(a) * (t0 * t0 * t0) / (6.0 * h) + m.col(a + 1) * (t1 * t1 * t1) / (6.0 * h) +
           (y.col(a) / h - m.col(a) * h / 6.0) * t0 + (y.col(a + 1) / h - m.col(a + 1) * h / 6.0) * t1;
  }

  Vec derivative(double x, Side side) const {
    std::size_t i = interval_of(x);
    if (side == Side::Left && i > 0 && x == s[i]) --i;
    const auto a = static_cast<Eigen::Index>(i);
    const double h = s[i + 1] - s[i];
    const double t0 = s[i + 1] - x;
    const double t1 = x - s[i];
    return -m.col(a) * (t0 * t0) / (2.0 * h) + m.col(a + 1) * (t1 * t1) / (2.0 * h) - y.col(a) / h +
           m.col(a) * h / 6.0 + y.col(a + 1) / h - m.col(a + 1) * h / 6.0;
  }
};

}  // namespace

Path from_samples(std::vector<double> s, std::vector<Vec> x, std::string id) {
  if (s.size() < 2 || s.size() != x.size()) throw Error(ErrorCode::InvalidPath, "need at least two samples");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) throw Error(ErrorCode::InvalidPath, "sample parameters must strictly increase");
  }
  const auto dim = x.front().size();
  Mat values(dim, static_cast<Eigen::Index>(x.size()));
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].size() != dim) throw Error(ErrorCode::InvalidPath, "samples differ in dimension");
    values.col(static_cast<Eigen::Index>(k)) = x[k];
  }
  const Interval domain{s.front(), s.back()};
  auto spline = std::make_shared<const CubicSpline>(std::move(s), values);
  return Path(
      static_cast<int>(dim), domain, [spline](double t) { return spline->value(t); },
      [spline](double t, Side side) { return spline->derivative(t, side); }, Smoothness::C1, {}, std::move(id));
}

Path from_samples_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::FileNotFound, file);
  std::vector<double> s;
  std::vector<Vec> x;
  std::string line;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw Error(ErrorCode::ConfigParse, "non-numeric row in " + file + ": " + line);
    }
    header_allowed = false;
    if (row.size() < 2) throw Error(ErrorCode::ConfigParse, "sample rows need s and at least one coordinate");
    if (!x.empty() && static_cast<Eigen::Index>(row.size() - 1) != x.front().size())
      throw Error(ErrorCode::ConfigParse, "inconsistent column count in " + file);
    s.push_back(row[0]);
    x.push_back(Eigen::Map<const Vec>(row.data() + 1, static_cast<Eigen::Index>(row.size() - 1)));
  }
  return from_samples(std::move(s), std::move(x), "samples:" + file);
}

}  // namespace paths

}  // namespace pathtrans
