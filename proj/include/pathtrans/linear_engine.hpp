#pragma once

#include "pathtrans/bundle.hpp"
#include "pathtrans/path.hpp"
#include "pathtrans/transport.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pathtrans {

struct IntegratorOptions {
  double step = 0.0;  // largest RK4 step; 0 selects |t - s| / 1000
  static constexpr long kDefaultSteps = 1000;

  double resolve(double s, double t) const { return step > 0.0 ? step : std::abs(t - s) / kDefaultSteps; }
};

/// L(t, s; gamma), the frame matrix of I_{s -> t}.
struct TransportMatrix {
  Mat value;
  std::string path_id;
  double s = 0.0;
  double t = 0.0;
  double step = 0.0;           // effective step; 0 when s == t
  bool near_singular = false;  // |det| < 1e-12
};

/// Gamma^a_b(s; gamma).
struct TransportCoefficients {
  Mat value;
  std::string path_id;
  double s = 0.0;
};

/// tau -> Gamma(tau; gamma) along one path, with one-sided evaluation at breaks.
struct CoefficientField {
  int fibre_dim = 1;
  std::function<Mat(double, Side)> at;
  std::vector<double> breaks;
  std::string path_id;
};

/// Gamma^a_b(s; gamma) = Gamma^a_{b mu}(gamma(s)) gamma'^mu(s).
TransportCoefficients coefficients_along_path(const BundleGeometry& g, const Path& gamma, double s,
                                              Side side = Side::Right);
/// The field keeps a reference to g.
CoefficientField coefficient_field(const BundleGeometry& g, const Path& gamma);
/// The field tau -> A, independent of the path.
CoefficientField constant_coefficient_field(const Mat& a, std::string path_id = "constant");

/// RK4 solution of dL(tau, s)/dtau = -Gamma(tau) L(tau, s), L(s, s) = Id,
/// evaluated at tau = t. Runs backward for t < s and returns the identity
/// exactly for s == t. Throws SingularCoefficients on non-finite Gamma.
TransportMatrix integrate_transport_matrix(const CoefficientField& field, double s, double t,
                                           const IntegratorOptions& options = {});

struct LiftSample {
  double t = 0.0;
  Vec base_point;
  Vec components;
};

/// {(t, gamma(t), L(t, s0) u)} over the grid; u must lie over gamma(s0).
std::vector<LiftSample> horizontal_lift(const BundleGeometry& g, const Path& gamma, double s0, const FibreVector& u,
                                        std::span<const double> grid, const IntegratorOptions& options = {});

/// The linear transport whose matrices integrate the lift equation of g.
TransportAlongPaths transport_from_connection(std::shared_ptr<const BundleGeometry> g,
                                              const IntegratorOptions& options = {});
/// Linear transport from an arbitrary per-path coefficient field.
TransportAlongPaths transport_from_coefficients(BundleSpace space,
                                                std::function<CoefficientField(const Path&)> field_of_path,
                                                const IntegratorOptions& options = {});

/// (a, b) -> L(a, b), the frame matrix of I_{b -> a}.
using MatrixOfParameters = std::function<Mat(double, double)>;

inline constexpr double kCoefficientDifferenceStep = 1e-4;

/// Gamma(s) = d/dt L(s, t)|_{t = s} by central differences (second-order
/// one-sided ones at the ends of `domain`).
TransportCoefficients coefficients_from_transport(const MatrixOfParameters& l, Interval domain, double s,
                                                  double h = kCoefficientDifferenceStep);
/// Same, with L taken from a linear transport along gamma.
TransportCoefficients coefficients_from_transport(const TransportAlongPaths& transport, const Path& gamma, double s,
                                                  double h = kCoefficientDifferenceStep);

struct FactorizationOptions {
  double threshold = 1e-4;
  std::vector<Vec> probe_velocities;  // empty: coordinate unit vectors
  std::size_t random_velocities = 8;
  double half_width = 0.1;            // parameter half-width of the straight probe paths
  double h = kCoefficientDifferenceStep;
  std::uint64_t seed = 0;
};

struct FactorizationVerdict {
  Vec point;
  ConnectionCoefficients candidate{1, 1};
  double residual = 0.0;
  double threshold = 0.0;
  bool factorizable = true;
};

/// Coefficient matrix of the transport along the straight chart path through x
/// with velocity v, at x.
Mat probe_coefficients(const TransportAlongPaths& transport, const Vec& x, const Vec& v,
                       const FactorizationOptions& options = {});

/// Tests whether Gamma_T(x; v) is linear in v. The candidate 3-index field is
/// fitted from the probe velocities and compared with T at the zero velocity
/// and at random velocities.
FactorizationVerdict factorization_test(const TransportAlongPaths& transport, const Vec& x,
                                        const FactorizationOptions& options = {});

class NotFactorizableError : public Error {
 public:
  explicit NotFactorizableError(FactorizationVerdict verdict);
  const FactorizationVerdict& verdict() const { return verdict_; }

 private:
  FactorizationVerdict verdict_;
};

/// Connection reproducing T at the sample points; multilinear between the
/// points when they form a tensor grid, inverse-distance weighted otherwise.
/// Throws NotFactorizableError at the first failing point.
BundleGeometry connection_from_transport(const TransportAlongPaths& transport, std::span<const Vec> sample_points,
                                         const FactorizationOptions& options = {});

struct LinearityOptions {
  double tolerance = kClosedFormTolerance;
  std::size_t draws_per_pair = 3;
  /// Explicit (lambda, mu) pairs; random ones in [-1, 1] are drawn when empty.
  std::vector<std::pair<double, double>> coefficients;
  std::uint64_t seed = 0;
};

/// max |T(lambda u + mu v) - lambda T(u) - mu T(v)| over the sample pairs.
LawReport check_linearity(const TransportAlongPaths& transport, const Path& gamma, double s, double t,
                          std::span<const std::pair<Vec, Vec>> sample_pairs, const LinearityOptions& options = {});

}  // namespace pathtrans
