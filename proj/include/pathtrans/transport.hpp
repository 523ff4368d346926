#pragma once

#include "pathtrans/bundle.hpp"
#include "pathtrans/path.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pathtrans {

enum class TransportKind { LinearFromConnection, LinearCustom, Generic };

const char* to_string(TransportKind kind);

/**
 * A transport along paths: to every path gamma and parameters s, t it assigns
 * a map from the fibre over gamma(s) to the fibre over gamma(t).
 *
 * Linear transports carry a matrix realization, matrix(gamma, s, t) being the
 * frame matrix L(t, s; gamma) of I_{s -> t}. The composition and identity laws
 * are not enforced here; the check_* functions below measure them.
 */
class TransportAlongPaths {
 public:
  using ApplyFn = std::function<Vec(const Path&, double, double, const Vec&)>;
  using MatrixFn = std::function<Mat(const Path&, double, double)>;

  static TransportAlongPaths linear(BundleSpace space, MatrixFn matrix,
                                    TransportKind kind = TransportKind::LinearCustom,
                                    std::shared_ptr<const BundleGeometry> geometry = nullptr);
  static TransportAlongPaths generic(BundleSpace space, ApplyFn apply, bool differentiable = true);

  const BundleSpace& space() const { return state_->space; }
  const std::string& label() const { return state_->space.label; }
  TransportKind kind() const { return state_->kind; }
  bool is_linear() const { return state_->kind != TransportKind::Generic; }
  bool differentiable() const { return state_->differentiable; }
  /// The connection this transport was built from, when there is one.
  const std::shared_ptr<const BundleGeometry>& geometry() const { return state_->geometry; }

  Vec apply(const Path& gamma, double s, double t, const Vec& u) const;
  /// Checks that u lies over gamma(s); the result lies over gamma(t).
  FibreVector apply(const Path& gamma, double s, double t, const FibreVector& u) const;
  /// L(t, s; gamma); throws NotApplicable for generic transports.
  Mat matrix(const Path& gamma, double s, double t) const;

 private:
  struct State {
    BundleSpace space;
    TransportKind kind;
    bool differentiable;
    ApplyFn apply;
    MatrixFn matrix;
    std::shared_ptr<const BundleGeometry> geometry;
  };
  explicit TransportAlongPaths(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  void check_arguments(const Path& gamma, double s, double t) const;

  std::shared_ptr<const State> state_;
};

/// A parallel transport: one fibre map Psi^gamma per closed-interval path,
/// from the fibre over gamma(lo) to the fibre over gamma(hi).
class ParallelTransport {
 public:
  using ApplyFn = std::function<Vec(const Path&, const Vec&)>;
  using MatrixFn = std::function<Mat(const Path&)>;

  static ParallelTransport linear(BundleSpace space, MatrixFn matrix);
  static ParallelTransport generic(BundleSpace space, ApplyFn apply);

  const BundleSpace& space() const { return state_->space; }
  bool is_linear() const { return static_cast<bool>(state_->matrix); }

  Vec apply(const Path& gamma, const Vec& u) const;
  FibreVector apply(const Path& gamma, const FibreVector& u) const;
  Mat matrix(const Path& gamma) const;

 private:
  struct State {
    BundleSpace space;
    ApplyFn apply;
    MatrixFn matrix;
  };
  explicit ParallelTransport(std::shared_ptr<const State> state) : state_(std::move(state)) {}

  std::shared_ptr<const State> state_;
};

/// Psi^gamma = I^gamma_{lo -> hi}.
ParallelTransport parallel_from_transport(const TransportAlongPaths& transport);

/// I^beta_{s -> t} = Psi^{beta|[s,t]} for s <= t and (Psi^{beta|[t,s]})^{-1}
/// for s >= t. Generic maps are inverted by Newton iteration; failure to
/// converge raises InverseUnavailable.
TransportAlongPaths transport_from_parallel(const ParallelTransport& parallel);

// ---------------------------------------------------------------------------
// Law checks

/// Default tolerances for integrated and closed-form transports.
inline constexpr double kIntegratedTolerance = 1e-6;
inline constexpr double kClosedFormTolerance = 1e-12;

struct LawReport {
  std::string law_id;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::uint64_t seed = 0;

  static LawReport make(std::string law_id, std::size_t samples, double max_residual, double tolerance,
                        std::uint64_t seed);
};

/// Max-norm residual between fibre components.
inline double residual(const Vec& a, const Vec& b) { return max_norm(Vec(a - b)); }

struct LawTriple {
  double r, s, t;
};

/// Composition (I_{s->t} I_{r->s} = I_{r->t}), identity (I_{s->s} = id) and
/// inverse (I_{t->s} I_{s->t} = id) laws over every triple and fibre sample.
LawReport check_groupoid_laws(const TransportAlongPaths& transport, const Path& gamma,
                              std::span<const LawTriple> triples, std::span<const Vec> u_samples,
                              double tolerance = kIntegratedTolerance, std::uint64_t seed = 0);

struct ParametrizationLawOptions {
  std::size_t pairs_per_case = 4;  // random (s, t) pairs per subinterval / reparametrization
  double tolerance = kIntegratedTolerance;
  std::uint64_t seed = 0;
};

/// I^{gamma|J'}_{s->t} = I^gamma_{s->t} for s, t in J'.
LawReport check_restriction_law(const TransportAlongPaths& transport, const Path& gamma,
                                std::span<const Interval> subintervals, std::span<const Vec> u_samples,
                                const ParametrizationLawOptions& options = {});
/// I^{gamma o chi}_{s->t} = I^gamma_{chi(s)->chi(t)}.
LawReport check_reparametrization_law(const TransportAlongPaths& transport, const Path& gamma,
                                      std::span<const Reparametrization> reparams, std::span<const Vec> u_samples,
                                      const ParametrizationLawOptions& options = {});
/// Both of the above folded into one report.
LawReport check_parametrization_laws(const TransportAlongPaths& transport, const Path& gamma,
                                     std::span<const Interval> subintervals,
                                     std::span<const Reparametrization> reparams, std::span<const Vec> u_samples,
                                     const ParametrizationLawOptions& options = {});

struct ParallelFixtures {
  std::vector<Path> paths;                   // canonical paths on [0, 1]
  std::vector<Reparametrization> reparams;   // orientation preserving, target [0, 1]
  std::vector<Vec> u_samples;
  std::vector<Vec> points;                   // base points for point-path identity
  double point_parameter = 0.0;
  std::uint64_t seed = 0;
};

/// One report each for reparametrization invariance, the inverse-path law,
/// the product law and the point-path identity, in that order. Products are
/// formed for every composable ordered pair of fixture paths and for every
/// path with its own canonical inverse.
std::vector<LawReport> check_parallel_axioms(const ParallelTransport& parallel, const ParallelFixtures& fixtures,
                                             double tolerance = kIntegratedTolerance);

// ---------------------------------------------------------------------------
// Smoothness of lifted paths

/// Fibre part of the tangent at s0 to the lifted path t -> I^gamma_{s0->t}(u),
/// by second-order finite differences with step h. The base part equals the
/// path tangent by construction.
Vec lift_tangent(const TransportAlongPaths& transport, const Path& gamma, double s0, const Vec& u, double h);

struct ConvergenceStudy {
  double coarse_error = 0.0;  // |D(h) - D(h/2)|
  double fine_error = 0.0;    // |D(h/2) - D(h/4)|
  double ratio = 0.0;         // coarse / fine; infinite when both are below the noise floor
  bool converged(double min_ratio, double noise_floor = 1e-10) const {
    return coarse_error <= noise_floor || ratio >= min_ratio;
  }
};

ConvergenceStudy lift_tangent_convergence(const TransportAlongPaths& transport, const Path& gamma, double s0,
                                          const Vec& u, double h);

struct SmoothnessOptions {
  double h = 1e-4;              // step for the tangents compared in (b) and (c)
  double convergence_h = 1e-3;  // coarsest step of the order study in (a)
  double tolerance = 1e-5;
  double min_ratio = 3.5;
  // (b): second path with the same point and velocity; defaults to the chart
  // line through gamma(s0) with velocity gamma'(s0).
  std::optional<Path> twin;
  double twin_s = 0.0;
  // (c): second path through gamma(s0); defaults to a chart line with a
  // random velocity drawn from `seed`.
  std::optional<Path> partner;
  double partner_s = 0.0;
  double a1 = 0.7;
  double a2 = -0.4;
  std::uint64_t seed = 0;
};

struct SmoothnessReport {
  LawReport c1_lift;          // (a)
  LawReport initial_uniqueness;  // (b)
  LawReport linearization;    // (c)
  double convergence_ratio = 0.0;

  bool passed() const { return c1_lift.passed && initial_uniqueness.passed && linearization.passed; }
  std::vector<LawReport> reports() const { return {c1_lift, initial_uniqueness, linearization}; }
};

/// Throws NotApplicable for transports without a differentiable realization
/// or when gamma is not C1.
SmoothnessReport check_smoothness_conditions(const TransportAlongPaths& transport, const Path& gamma, double s0,
                                             const Vec& u, const SmoothnessOptions& options = {});

}  // namespace pathtrans
