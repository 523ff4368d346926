#include "pathtrans/transport.hpp"

#include "pathtrans/random.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pathtrans {

const char* to_string(TransportKind kind) {
  switch (kind) {
    case TransportKind::LinearFromConnection: return "linear-from-connection";
    case TransportKind::LinearCustom: return "linear-custom";
    case TransportKind::Generic: return "generic";
  }
  return "?";
}

namespace {

bool same_point(const Vec& a, const Vec& b) {
  return a.size() == b.size() && max_norm(Vec(a - b)) <= 1e-9 * (1.0 + max_norm(a));
}

void require_fibre(const BundleSpace& space, const Vec& u) {
  if (u.size() != space.fibre_dim)
    throw Error(ErrorCode::DomainMismatch, "fibre vector has " + std::to_string(u.size()) + " components, expected " +
                                               std::to_string(space.fibre_dim));
}

}  // namespace

// ---------------------------------------------------------------------------
// TransportAlongPaths

TransportAlongPaths TransportAlongPaths::linear(BundleSpace space, MatrixFn matrix, TransportKind kind,
                                                std::shared_ptr<const BundleGeometry> geometry) {
  if (!matrix) throw Error(ErrorCode::InvalidGeometry, "linear transport needs a matrix evaluator");
  if (kind == TransportKind::Generic) kind = TransportKind::LinearCustom;
  auto state = std::make_shared<State>();
  state->space = std::move(space);
  state->kind = kind;
  state->differentiable = true;
  state->matrix = std::move(matrix);
  state->apply = [m = state->matrix](const Path& g, double s, double t, const Vec& u) -> Vec { return m(g, s, t) * u; };
  state->geometry = std::move(geometry);
  return TransportAlongPaths(std::move(state));
}

TransportAlongPaths TransportAlongPaths::generic(BundleSpace space, ApplyFn apply, bool differentiable) {
  if (!apply) throw Error(ErrorCode::InvalidGeometry, "generic transport needs an evaluator");
  auto state = std::make_shared<State>();
  state->space = std::move(space);
  state->kind = TransportKind::Generic;
  state->differentiable = differentiable;
  state->apply = std::move(apply);
  return TransportAlongPaths(std::move(state));
}

void TransportAlongPaths::check_arguments(const Path& gamma, double s, double t) const {
  if (gamma.dim() != state_->space.base_dim)
    throw Error(ErrorCode::DomainMismatch, "path dimension " + std::to_string(gamma.dim()) +
                                               " does not match base dimension " +
                                               std::to_string(state_->space.base_dim));
  const double slack = 1e-9 * gamma.domain().scale();
  if (!gamma.domain().contains(s, slack) || !gamma.domain().contains(t, slack))
    throw Error(ErrorCode::IntervalOutOfRange, "transport parameters outside the path domain");
}

Vec TransportAlongPaths::apply(const Path& gamma, double s, double t, const Vec& u) const {
  check_arguments(gamma, s, t);
  require_fibre(state_->space, u);
  return state_->apply(gamma, s, t, u);
}

FibreVector TransportAlongPaths::apply(const Path& gamma, double s, double t, const FibreVector& u) const {
  check_arguments(gamma, s, t);
  if (!same_point(u.base_point, gamma.position(s)))
    throw Error(ErrorCode::DomainMismatch, "fibre vector does not lie over gamma(s)");
  return {gamma.position(t), apply(gamma, s, t, u.components)};
}

Mat TransportAlongPaths::matrix(const Path& gamma, double s, double t) const {
  if (!state_->matrix) throw Error(ErrorCode::NotApplicable, "transport '" + label() + "' has no matrix realization");
  check_arguments(gamma, s, t);
  return state_->matrix(gamma, s, t);
}

// ---------------------------------------------------------------------------
// ParallelTransport

ParallelTransport ParallelTransport::linear(BundleSpace space, MatrixFn matrix) {
  if (!matrix) throw Error(ErrorCode::InvalidGeometry, "linear parallel transport needs a matrix evaluator");
  auto state = std::make_shared<State>();
  state->space = std::move(space);
  state->matrix = std::move(matrix);
  state->apply = [m = state->matrix](const Path& g, const Vec& u) -> Vec { return m(g) * u; };
  return ParallelTransport(std::move(state));
}

ParallelTransport ParallelTransport::generic(BundleSpace space, ApplyFn apply) {
  if (!apply) throw Error(ErrorCode::InvalidGeometry, "generic parallel transport needs an evaluator");
  auto state = std::make_shared<State>();
  state->space = std::move(space);
  state->apply = std::move(apply);
  return ParallelTransport(std::move(state));
}

Vec ParallelTransport::apply(const Path& gamma, const Vec& u) const {
  if (gamma.dim() != state_->space.base_dim) throw Error(ErrorCode::DomainMismatch, "path dimension mismatch");
  require_fibre(state_->space, u);
  return state_->apply(gamma, u);
}

FibreVector ParallelTransport::apply(const Path& gamma, const FibreVector& u) const {
  if (!same_point(u.base_point, gamma.position(gamma.domain().lo)))
    throw Error(ErrorCode::DomainMismatch, "fibre vector does not lie over the path start");
  return {gamma.position(gamma.domain().hi), apply(gamma, u.components)};
}

Mat ParallelTransport::matrix(const Path& gamma) const {
  if (!state_->matrix) throw Error(ErrorCode::NotApplicable, "parallel transport has no matrix realization");
  if (gamma.dim() != state_->space.base_dim) throw Error(ErrorCode::DomainMismatch, "path dimension mismatch");
  return state_->matrix(gamma);
}

ParallelTransport parallel_from_transport(const TransportAlongPaths& transport) {
  if (transport.is_linear()) {
    return ParallelTransport::linear(transport.space(), [transport](const Path& g) {
      return transport.matrix(g, g.domain().lo, g.domain().hi);
    });
  }
  return ParallelTransport::generic(transport.space(), [transport](const Path& g, const Vec& u) {
    return transport.apply(g, g.domain().lo, g.domain().hi, u);
  });
}

namespace {

// Solves psi(x) = y by Newton iteration with a central-difference Jacobian.
Vec newton_inverse(const std::function<Vec(const Vec&)>& psi, const Vec& y) {
  const double scale = 1.0 + max_norm(y);
  Vec x = y;
  Vec f = psi(x) - y;
  for (int iter = 0; iter < 50 && max_norm(f) > 1e-14 * scale; ++iter) {
    Mat jac(y.size(), y.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double h = 1e-6 * (1.0 + std::abs(x(j)));
      Vec xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      jac.col(j) = (psi(xp) - psi(xm)) / (2.0 * h);
    }
    Eigen::FullPivLU<Mat> lu(jac);
    if (!lu.isInvertible()) throw Error(ErrorCode::InverseUnavailable, "singular Jacobian while inverting transport");
    const Vec next = x - lu.solve(f);
    if (!next.allFinite()) break;
    const Vec next_f = psi(next) - y;
    if (max_norm(next_f) >= max_norm(f) && iter > 5) break;
    x = next;
    f = next_f;
  }
  if (!(max_norm(f) <= 1e-10 * scale))
    throw Error(ErrorCode::InverseUnavailable, "Newton iteration did not converge (residual " +
                                                   std::to_string(max_norm(f)) + ")");
  return x;
}

}  // namespace

TransportAlongPaths transport_from_parallel(const ParallelTransport& parallel) {
  if (parallel.is_linear()) {
    return TransportAlongPaths::linear(parallel.space(), [parallel](const Path& b, double s, double t) -> Mat {
      const int r = parallel.space().fibre_dim;
      if (s == t) return Mat::Identity(r, r);
      if (s < t) return parallel.matrix(restrict(b, {s, t}));
      const Mat m = parallel.matrix(restrict(b, {t, s}));
      Eigen::FullPivLU<Mat> lu(m);
      if (!lu.isInvertible()) throw Error(ErrorCode::InverseUnavailable, "parallel-transport matrix is singular");
      return lu.inverse();
    });
  }
  return TransportAlongPaths::generic(parallel.space(), [parallel](const Path& b, double s, double t, const Vec& u) {
    if (s == t) return u;
    if (s < t) return parallel.apply(restrict(b, {s, t}), u);
    const Path piece = restrict(b, {t, s});
    return newton_inverse([&](const Vec& x) { return parallel.apply(piece, x); }, u);
  });
}

// ---------------------------------------------------------------------------
// Law checks

LawReport LawReport::make(std::string law_id, std::size_t samples, double max_residual, double tolerance,
                          std::uint64_t seed) {
  LawReport r;
  r.law_id = std::move(law_id);
  r.samples = samples;
  r.max_residual = max_residual;
  r.tolerance = tolerance;
  r.passed = max_residual <= tolerance;  // false for NaN
  r.seed = seed;
  return r;
}

namespace {

// A NaN residual sticks.
void track(double& worst, double value) {
  if (std::isnan(worst)) return;
  if (std::isnan(value) || value > worst) worst = value;
}

}  // namespace

LawReport check_groupoid_laws(const TransportAlongPaths& transport, const Path& gamma,
                              std::span<const LawTriple> triples, std::span<const Vec> u_samples, double tolerance,
                              std::uint64_t seed) {
  double worst = 0.0;
  std::size_t samples = 0;
  for (const auto& [r, s, t] : triples) {
    for (const Vec& u : u_samples) {
      const Vec rs = transport.apply(gamma, r, s, u);
      track(worst, residual(transport.apply(gamma, s, t, rs), transport.apply(gamma, r, t, u)));
      track(worst, residual(transport.apply(gamma, s, s, u), u));
      track(worst, residual(transport.apply(gamma, t, s, transport.apply(gamma, s, t, u)), u));
      ++samples;
    }
  }
  return LawReport::make("groupoid", samples, worst, tolerance, seed);
}

LawReport check_restriction_law(const TransportAlongPaths& transport, const Path& gamma,
                                std::span<const Interval> subintervals, std::span<const Vec> u_samples,
                                const ParametrizationLawOptions& options) {
  Rng rng(options.seed);
  double worst = 0.0;
  std::size_t samples = 0;
  for (const Interval& sub : subintervals) {
    const Path piece = restrict(gamma, sub);
    for (std::size_t k = 0; k < options.pairs_per_case; ++k) {
      const double s = rng.uniform(sub.lo, sub.hi);
      const double t = rng.uniform(sub.lo, sub.hi);
      for (const Vec& u : u_samples) {
        track(worst, residual(transport.apply(piece, s, t, u), transport.apply(gamma, s, t, u)));
        ++samples;
      }
    }
  }
  return LawReport::make("restriction", samples, worst, options.tolerance, options.seed);
}

LawReport check_reparametrization_law(const TransportAlongPaths& transport, const Path& gamma,
                                      std::span<const Reparametrization> reparams, std::span<const Vec> u_samples,
                                      const ParametrizationLawOptions& options) {
  Rng rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  double worst = 0.0;
  std::size_t samples = 0;
  for (const Reparametrization& chi : reparams) {
    const Path composed = reparametrize(gamma, chi);
    const Interval& src = chi.source();
    // The endpoints are always included: they exercise orientation reversal fully.
    std::vector<std::pair<double, double>> pairs{{src.lo, src.hi}};
    for (std::size_t k = 0; k < options.pairs_per_case; ++k)
      pairs.emplace_back(rng.uniform(src.lo, src.hi), rng.uniform(src.lo, src.hi));
    for (const auto& [s, t] : pairs) {
      for (const Vec& u : u_samples) {
        track(worst, residual(transport.apply(composed, s, t, u), transport.apply(gamma, chi(s), chi(t), u)));
        ++samples;
      }
    }
  }
  return LawReport::make("reparametrization", samples, worst, options.tolerance, options.seed);
}

LawReport check_parametrization_laws(const TransportAlongPaths& transport, const Path& gamma,
                                     std::span<const Interval> subintervals,
                                     std::span<const Reparametrization> reparams, std::span<const Vec> u_samples,
                                     const ParametrizationLawOptions& options) {
  const LawReport a = check_restriction_law(transport, gamma, subintervals, u_samples, options);
  const LawReport b = check_reparametrization_law(transport, gamma, reparams, u_samples, options);
  double worst = a.max_residual;
  track(worst, b.max_residual);
  return LawReport::make("parametrization", a.samples + b.samples, worst, options.tolerance, options.seed);
}

std::vector<LawReport> check_parallel_axioms(const ParallelTransport& parallel, const ParallelFixtures& fx,
                                             double tolerance) {
  const Interval unit{0.0, 1.0};
  for (const Path& p : fx.paths)
    if (!p.domain().approx_equal(unit))
      throw Error(ErrorCode::NonCanonicalDomain, "parallel-transport fixtures must be defined on [0, 1]");

  double w_reparam = 0.0, w_inverse = 0.0, w_product = 0.0, w_point = 0.0;
  std::size_t n_reparam = 0, n_inverse = 0, n_product = 0, n_point = 0;

  std::vector<Vec> psi;  // cached Psi^p(u) per (path, sample)
  for (const Path& p : fx.paths)
    for (const Vec& u : fx.u_samples) psi.push_back(parallel.apply(p, u));
  const auto cached = [&](std::size_t path, std::size_t sample) -> const Vec& {
    return psi[path * fx.u_samples.size() + sample];
  };

  for (std::size_t i = 0; i < fx.paths.size(); ++i) {
    const Path& p = fx.paths[i];
    for (const Reparametrization& chi : fx.reparams) {
      const Path q = reparametrize(p, chi);
      for (std::size_t k = 0; k < fx.u_samples.size(); ++k) {
        track(w_reparam, residual(parallel.apply(q, fx.u_samples[k]), cached(i, k)));
        ++n_reparam;
      }
    }
    const Path inv = invert_canonical(p);
    for (std::size_t k = 0; k < fx.u_samples.size(); ++k) {
      track(w_inverse, residual(parallel.apply(inv, cached(i, k)), fx.u_samples[k]));
      ++n_inverse;
    }
    // gamma * gamma^-1 against Psi^{gamma^-1} Psi^gamma.
    const Path loop = product_canonical(p, inv);
    for (std::size_t k = 0; k < fx.u_samples.size(); ++k) {
      const Vec expected = parallel.apply(inv, cached(i, k));
      track(w_product, residual(parallel.apply(loop, fx.u_samples[k]), expected));
      ++n_product;
    }
    for (std::size_t j = 0; j < fx.paths.size(); ++j) {
      const Path& q = fx.paths[j];
      if (!same_point(p.position(1.0), q.position(0.0))) continue;
      const Path pq = product_canonical(p, q);
      for (std::size_t k = 0; k < fx.u_samples.size(); ++k) {
        track(w_product, residual(parallel.apply(pq, fx.u_samples[k]), parallel.apply(q, cached(i, k))));
        ++n_product;
      }
    }
  }
  for (const Vec& x : fx.points) {
    const Path point = paths::point_path(fx.point_parameter, x);
    for (const Vec& u : fx.u_samples) {
      track(w_point, residual(parallel.apply(point, u), u));
      ++n_point;
    }
  }
  return {
      LawReport::make("parallel-reparametrization", n_reparam, w_reparam, tolerance, fx.seed),
      LawReport::make("parallel-inverse", n_inverse, w_inverse, tolerance, fx.seed),
      LawReport::make("parallel-product", n_product, w_product, tolerance, fx.seed),
      LawReport::make("parallel-point", n_point, w_point, tolerance, fx.seed),
  };
}

// ---------------------------------------------------------------------------
// Smoothness

Vec lift_tangent(const TransportAlongPaths& transport, const Path& gamma, double s0, const Vec& u, double h) {
  const Interval& d = gamma.domain();
  if (!(h > 0.0)) throw Error(ErrorCode::NotApplicable, "finite-difference step must be positive");
  if (d.contains(s0 - h) && d.contains(s0 + h))
    return (transport.apply(gamma, s0, s0 + h, u) - transport.apply(gamma, s0, s0 - h, u)) / (2.0 * h);
  if (d.contains(s0 + 2.0 * h))
    return (-3.0 * u + 4.0 * transport.apply(gamma, s0, s0 + h, u) - transport.apply(gamma, s0, s0 + 2.0 * h, u)) /
           (2.0 * h);
  if (d.contains(s0 - 2.0 * h))
    return (3.0 * u - 4.0 * transport.apply(gamma, s0, s0 - h, u) + transport.apply(gamma, s0, s0 - 2.0 * h, u)) /
           (2.0 * h);
  throw Error(ErrorCode::NotApplicable, "path domain too short for the finite-difference step");
}

ConvergenceStudy lift_tangent_convergence(const TransportAlongPaths& transport, const Path& gamma, double s0,
                                          const Vec& u, double h) {
  const Vec d1 = lift_tangent(transport, gamma, s0, u, h);
  const Vec d2 = lift_tangent(transport, gamma, s0, u, h / 2.0);
  const Vec d4 = lift_tangent(transport, gamma, s0, u, h / 4.0);
  ConvergenceStudy c;
  c.coarse_error = residual(d1, d2);
  c.fine_error = residual(d2, d4);
  c.ratio = c.fine_error > 0.0 ? c.coarse_error / c.fine_error : std::numeric_limits<double>::infinity();
  return c;
}

SmoothnessReport check_smoothness_conditions(const TransportAlongPaths& transport, const Path& gamma, double s0,
                                             const Vec& u, const SmoothnessOptions& opt) {
  if (!transport.differentiable())
    throw Error(ErrorCode::NotApplicable, "transport '" + transport.label() + "' has no differentiable realization");
  if (gamma.smoothness() != Smoothness::C1) throw Error(ErrorCode::NotApplicable, "smoothness checks need a C1 path");

  SmoothnessReport out;
  const Vec x0 = gamma.position(s0);
  const Vec v0 = tangent(gamma, s0);

  // (a) second-order convergence of finite-difference lift tangents.
  const ConvergenceStudy study = lift_tangent_convergence(transport, gamma, s0, u, opt.convergence_h);
  out.convergence_ratio = study.ratio;
  const double a_residual =
      study.converged(opt.min_ratio) ? study.fine_error / 3.0 : std::numeric_limits<double>::infinity();
  out.c1_lift = LawReport::make("smoothness-c1-lift", 3, a_residual, opt.tolerance, opt.seed);

  const Vec lift1 = lift_tangent(transport, gamma, s0, u, opt.h);

  // (b) equal point and velocity give equal lift tangents.
  const Path twin = opt.twin ? *opt.twin : paths::line(x0, v0, {s0 - 0.1, s0 + 0.1}, s0);
  const double twin_s = opt.twin ? opt.twin_s : s0;
  if (!same_point(twin.position(twin_s), x0) || max_norm(Vec(tangent(twin, twin_s) - v0)) > 1e-9 * (1.0 + max_norm(v0)))
    throw Error(ErrorCode::DomainMismatch, "twin path must share point and velocity with gamma at s0");
  const Vec lift_twin = lift_tangent(transport, twin, twin_s, u, opt.h);
  out.initial_uniqueness = LawReport::make("smoothness-initial-uniqueness", 1, residual(lift1, lift_twin),
                                           opt.tolerance, opt.seed);

  // (c) the lift tangent is linear in the base velocity.
  Rng rng(opt.seed);
  const Path partner = opt.partner ? *opt.partner
                                   : paths::line(x0, rng.uniform_vec(gamma.dim(), -1.0, 1.0), {-0.1, 0.1}, 0.0);
  const double partner_s = opt.partner ? opt.partner_s : 0.0;
  if (!same_point(partner.position(partner_s), x0))
    throw Error(ErrorCode::DomainMismatch, "partner path must pass through gamma(s0)");
  const Vec v2 = tangent(partner, partner_s);
  const Vec lift2 = lift_tangent(transport, partner, partner_s, u, opt.h);
  const Vec w = opt.a1 * v0 + opt.a2 * v2;
  const Path probe = max_norm(w) > 0.0 ? paths::line(x0, w, {-0.1, 0.1}, 0.0) : paths::constant(x0, {-0.1, 0.1});
  const Vec lift3 = lift_tangent(transport, probe, 0.0, u, opt.h);
  out.linearization = LawReport::make("smoothness-linearization", 1,
                                      residual(lift3, Vec(opt.a1 * lift1 + opt.a2 * lift2)), opt.tolerance, opt.seed);
  return out;
}

}  // namespace pathtrans
