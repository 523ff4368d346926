#include "pathtrans/linear_engine.hpp"

#include "pathtrans/ode.hpp"
#include "pathtrans/random.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace pathtrans {

TransportCoefficients coefficients_along_path(const BundleGeometry& g, const Path& gamma, double s, Side side) {
  if (gamma.dim() != g.base_dim()) throw Error(ErrorCode::DomainMismatch, "path dimension mismatch");
  const Vec x = gamma.position(s);
  return {g.coefficients(x).contract_velocity(tangent(gamma, s, side)), gamma.id(), s};
}

CoefficientField coefficient_field(const BundleGeometry& g, const Path& gamma) {
  if (gamma.dim() != g.base_dim()) throw Error(ErrorCode::DomainMismatch, "path dimension mismatch");
  CoefficientField f;
  f.fibre_dim = g.fibre_dim();
  f.breaks.assign(gamma.breaks().begin(), gamma.breaks().end());
  f.path_id = gamma.id();
  f.at = [&g, gamma](double tau, Side side) {
    return g.coefficients(gamma.position(tau)).contract_velocity(tangent(gamma, tau, side));
  };
  return f;
}

CoefficientField constant_coefficient_field(const Mat& a, std::string path_id) {
  CoefficientField f;
  f.fibre_dim = static_cast<int>(a.rows());
  f.path_id = std::move(path_id);
  f.at = [a](double, Side) { return a; };
  return f;
}

TransportMatrix integrate_transport_matrix(const CoefficientField& field, double s, double t,
                                           const IntegratorOptions& options) {
  const int r = field.fibre_dim;
  TransportMatrix out{Mat::Identity(r, r), field.path_id, s, t, 0.0, false};
  if (s == t) return out;
  const double step = options.resolve(s, t);
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::SingularCoefficients, "invalid integration step");

  const auto rhs = [&](double tau, Side side, const Mat& l) -> Mat {
    const Mat gam = field.at(tau, side);
    if (gam.rows() != r || gam.cols() != r || !gam.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite or mis-shaped coefficients at tau = " << tau << " on " << field.path_id;
      throw Error(ErrorCode::SingularCoefficients, msg.str());
    }
    return -gam * l;
  };
  StepPlan plan;
  out.value = rk4_along(rhs, field.breaks, s, t, out.value, step, &plan);
  out.step = plan.step;
  out.near_singular = std::abs(out.value.determinant()) < 1e-12;
  return out;
}

std::vector<LiftSample> horizontal_lift(const BundleGeometry& g, const Path& gamma, double s0, const FibreVector& u,
                                        std::span<const double> grid, const IntegratorOptions& options) {
  const Vec x0 = gamma.position(s0);
  if (max_norm(Vec(u.base_point - x0)) > 1e-9 * (1.0 + max_norm(x0)))
    throw Error(ErrorCode::DomainMismatch, "lift start vector does not lie over gamma(s0)");
  if (u.components.size() != g.fibre_dim()) throw Error(ErrorCode::DomainMismatch, "fibre dimension mismatch");
  const CoefficientField field = coefficient_field(g, gamma);
  std::vector<LiftSample> out;
  out.reserve(grid.size());
  for (double t : grid) {
    if (!gamma.domain().contains(t, 1e-9 * gamma.domain().scale()))
      throw Error(ErrorCode::IntervalOutOfRange, "lift grid point outside the path domain");
    const TransportMatrix l = integrate_transport_matrix(field, s0, t, options);
    out.push_back({t, gamma.position(t), l.value * u.components});
  }
  return out;
}

TransportAlongPaths transport_from_connection(std::shared_ptr<const BundleGeometry> g,
                                              const IntegratorOptions& options) {
  if (!g) throw Error(ErrorCode::InvalidGeometry, "null geometry");
  const BundleGeometry* raw = g.get();
  return TransportAlongPaths::linear(
      g->space(),
      [raw, keep = g, options](const Path& gamma, double s, double t) {
        return integrate_transport_matrix(coefficient_field(*raw, gamma), s, t, options).value;
      },
      TransportKind::LinearFromConnection, g);
}

TransportAlongPaths transport_from_coefficients(BundleSpace space,
                                                std::function<CoefficientField(const Path&)> field_of_path,
                                                const IntegratorOptions& options) {
  return TransportAlongPaths::linear(std::move(space), [field_of_path, options](const Path& gamma, double s, double t) {
    return integrate_transport_matrix(field_of_path(gamma), s, t, options).value;
  });
}

TransportCoefficients coefficients_from_transport(const MatrixOfParameters& l, Interval domain, double s, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::NotApplicable, "difference step must be positive");
  Mat d;
  if (domain.contains(s - h) && domain.contains(s + h)) {
    d = (l(s, s + h) - l(s, s - h)) / (2.0 * h);
  } else if (domain.contains(s + 2.0 * h)) {
    const Mat id = Mat::Identity(l(s, s).rows(), l(s, s).cols());
    d = (-3.0 * id + 4.0 * l(s, s + h) - l(s, s + 2.0 * h)) / (2.0 * h);
  } else if (domain.contains(s - 2.0 * h)) {
    const Mat id = Mat::Identity(l(s, s).rows(), l(s, s).cols());
    d = (3.0 * id - 4.0 * l(s, s - h) + l(s, s - 2.0 * h)) / (2.0 * h);
  } else {
    throw Error(ErrorCode::NotApplicable, "domain too short for the difference step");
  }
  if (!d.allFinite()) throw Error(ErrorCode::NonInvertible, "transport matrices are not finite near s");
  return {d, "", s};
}

TransportCoefficients coefficients_from_transport(const TransportAlongPaths& transport, const Path& gamma, double s,
                                                  double h) {
  // L(a, b) is the matrix of I_{b -> a}.
  const MatrixOfParameters l = [&](double a, double b) { return transport.matrix(gamma, b, a); };
  TransportCoefficients c = coefficients_from_transport(l, gamma.domain(), s, h);
  c.path_id = gamma.id();
  return c;
}

Mat probe_coefficients(const TransportAlongPaths& transport, const Vec& x, const Vec& v,
                       const FactorizationOptions& options) {
  const Path probe = paths::line(x, v, {-options.half_width, options.half_width}, 0.0);
  return coefficients_from_transport(transport, probe, 0.0, options.h).value;
}

FactorizationVerdict factorization_test(const TransportAlongPaths& transport, const Vec& x,
                                        const FactorizationOptions& options) {
  if (!transport.is_linear()) throw Error(ErrorCode::NotApplicable, "factorization needs a linear transport");
  const int n = transport.space().base_dim;
  const int r = transport.space().fibre_dim;
  transport.space().require_in_chart(x);

  std::vector<Vec> probes = options.probe_velocities;
  if (probes.empty())
    for (int mu = 0; mu < n; ++mu) probes.push_back(Vec::Unit(n, mu));
  Mat p(static_cast<Eigen::Index>(probes.size()), n);
  for (std::size_t k = 0; k < probes.size(); ++k) {
    if (probes[k].size() != n) throw Error(ErrorCode::ProbeDegenerate, "probe velocity has the wrong dimension");
    p.row(static_cast<Eigen::Index>(k)) = probes[k].transpose();
  }
  Eigen::ColPivHouseholderQR<Mat> qr(p);
  if (qr.rank() < n) throw Error(ErrorCode::ProbeDegenerate, "probe velocities do not span the tangent space");

  // Row k of `g` holds Gamma_T(x; p_k) flattened column-major.
  Mat g(p.rows(), r * r);
  for (Eigen::Index k = 0; k < p.rows(); ++k) {
    const Mat m = probe_coefficients(transport, x, probes[static_cast<std::size_t>(k)], options);
    g.row(k) = Eigen::Map<const Eigen::RowVectorXd>(m.data(), r * r);
  }
  const Mat c = qr.solve(g);  // n x r*r

  FactorizationVerdict verdict;
  verdict.point = x;
  verdict.candidate = ConnectionCoefficients(r, n);
  for (int mu = 0; mu < n; ++mu)
    verdict.candidate.slice(mu) = Eigen::Map<const Mat>(Eigen::RowVectorXd(c.row(mu)).data(), r, r);
  verdict.threshold = options.threshold;

  Rng rng(options.seed);
  std::vector<Vec> tests{Vec::Zero(n)};
  for (std::size_t k = 0; k < options.random_velocities; ++k) tests.push_back(rng.uniform_vec(n, -1.0, 1.0));
  double worst = 0.0;
  for (const Vec& v : tests) {
    const Mat actual = probe_coefficients(transport, x, v, options);
    const double res = max_norm(Mat(actual - verdict.candidate.contract_velocity(v)));
    if (std::isnan(res) || res > worst) worst = res;
    if (std::isnan(worst)) break;
  }
  verdict.residual = worst;
  verdict.factorizable = worst <= options.threshold;
  return verdict;
}

namespace {

std::string verdict_message(const FactorizationVerdict& v) {
  std::ostringstream msg;
  msg << "residual " << v.residual << " exceeds threshold " << v.threshold << " at (";
  for (Eigen::Index i = 0; i < v.point.size(); ++i) msg << (i ? ", " : "") << v.point(i);
  msg << ")";
  return msg.str();
}

}  // namespace

NotFactorizableError::NotFactorizableError(FactorizationVerdict verdict)
    : Error(ErrorCode::NotFactorizable, verdict_message(verdict)), verdict_(std::move(verdict)) {}

BundleGeometry connection_from_transport(const TransportAlongPaths& transport, std::span<const Vec> sample_points,
                                         const FactorizationOptions& options) {
  if (sample_points.empty()) throw Error(ErrorCode::InvalidGeometry, "no sample points");
  std::vector<ConnectionCoefficients> values;
  values.reserve(sample_points.size());
  for (const Vec& x : sample_points) {
    FactorizationVerdict v = factorization_test(transport, x, options);
    if (!v.factorizable) throw NotFactorizableError(std::move(v));
    values.push_back(std::move(v.candidate));
  }
  const std::string label = transport.label() + "-recovered";
  CoefficientGrid grid;
  std::vector<std::size_t> node_of_point;
  if (sample_points.size() > 1 && forms_tensor_grid(sample_points, &grid, &node_of_point)) {
    const int r = transport.space().fibre_dim, n = transport.space().base_dim;
    grid.node_values.assign(sample_points.size(), ConnectionCoefficients(r, n));
    for (std::size_t i = 0; i < sample_points.size(); ++i) grid.node_values[node_of_point[i]] = values[i];
    return grid_geometry(label, n, r, std::move(grid));
  }
  return scattered_geometry(label, {sample_points.begin(), sample_points.end()}, std::move(values));
}

LawReport check_linearity(const TransportAlongPaths& transport, const Path& gamma, double s, double t,
                          std::span<const std::pair<Vec, Vec>> sample_pairs, const LinearityOptions& options) {
  Rng rng(options.seed);
  double worst = 0.0;
  std::size_t samples = 0;
  for (const auto& [u, v] : sample_pairs) {
    const Vec tu = transport.apply(gamma, s, t, u);
    const Vec tv = transport.apply(gamma, s, t, v);
    std::vector<std::pair<double, double>> coeffs = options.coefficients;
    if (coeffs.empty())
      for (std::size_t k = 0; k < options.draws_per_pair; ++k) coeffs.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
    for (const auto& [lambda, mu] : coeffs) {
      const Vec lhs = transport.apply(gamma, s, t, Vec(lambda * u + mu * v));
      const double res = residual(lhs, Vec(lambda * tu + mu * tv));
      if (!std::isnan(worst) && (std::isnan(res) || res > worst)) worst = res;
      ++samples;
    }
  }
  return LawReport::make("linearity", samples, worst, options.tolerance, options.seed);
}

}  // namespace pathtrans
