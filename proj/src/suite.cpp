#include "pathtrans/suite.hpp"

#include <algorithm>
#include <cmath>

namespace pathtrans {

Reparametrization random_reparametrization(Interval target, Rng& rng, bool allow_reversing) {
  const double lo = rng.uniform(-1.0, 1.0);
  const Interval source{lo, lo + rng.uniform(1.0, 2.0)};
  const int kind = static_cast<int>(rng.uniform() * 3.0);
  const bool reversing = allow_reversing && rng.uniform() < 0.5;
  if (kind == 0) return Reparametrization::power(source, target, rng.uniform() < 0.5 ? 2.0 : 3.0);
  if (kind == 1)
    return Reparametrization::affine(source, target, reversing ? Orientation::Reversing : Orientation::Preserving);
  const double ws = rng.uniform(0.35, 0.65), wt = rng.uniform(0.35, 0.65);
  std::vector<double> src{source.lo, source.lo + ws * source.length(), source.hi};
  std::vector<double> tgt{target.lo, target.lo + wt * target.length(), target.hi};
  if (reversing) tgt = {target.hi, target.hi - wt * target.length(), target.lo};
  return Reparametrization::piecewise_affine(src, tgt);
}

Vec random_fibre_vector(int fibre_dim, Rng& rng) { return rng.uniform_vec(fibre_dim, -1.0, 1.0); }

Interval random_subinterval(Interval domain, Rng& rng) {
  double a = rng.uniform(domain.lo, domain.hi);
  double b = rng.uniform(domain.lo, domain.hi);
  if (a > b) std::swap(a, b);
  return {a, b};
}

LawReport merge_reports(const std::string& law_id, const std::vector<LawReport>& parts) {
  std::size_t samples = 0;
  double worst = 0.0;
  double tolerance = parts.empty() ? 0.0 : parts.front().tolerance;
  std::uint64_t seed = parts.empty() ? 0 : parts.front().seed;
  for (const LawReport& p : parts) {
    samples += p.samples;
    if (!std::isnan(worst) && (std::isnan(p.max_residual) || p.max_residual > worst)) worst = p.max_residual;
  }
  return LawReport::make(law_id, samples, worst, tolerance, seed);
}

namespace {

Path fixture_path(const GeometryCatalogEntry& entry, const SuiteOptions& options, Rng& rng) {
  return options.path ? *options.path : random_path(entry, rng);
}

}  // namespace

std::vector<LawReport> axiom_suite(const GeometryCatalogEntry& entry, const SuiteOptions& options) {
  Rng rng(options.seed);
  const int r = entry.space().fibre_dim;
  std::vector<LawReport> groupoid, restriction, reparam;
  for (std::size_t k = 0; k < options.samples; ++k) {
    const Path p = fixture_path(entry, options, rng);
    const Interval d = p.domain();
    const LawTriple triple{rng.uniform(d.lo, d.hi), rng.uniform(d.lo, d.hi), rng.uniform(d.lo, d.hi)};
    const std::vector<Vec> u{random_fibre_vector(r, rng)};
    groupoid.push_back(check_groupoid_laws(entry.transport, p, {&triple, 1}, u, options.tolerance, options.seed));

    ParametrizationLawOptions lo{1, options.tolerance, options.seed + k};
    const Interval sub = random_subinterval(d, rng);
    restriction.push_back(check_restriction_law(entry.transport, p, {&sub, 1}, u, lo));
    const Reparametrization chi = random_reparametrization(d, rng);
    reparam.push_back(check_reparametrization_law(entry.transport, p, {&chi, 1}, u, lo));
  }
  return {merge_reports("groupoid", groupoid), merge_reports("restriction", restriction),
          merge_reports("reparametrization", reparam)};
}

ParallelFixtures parallel_fixtures(const GeometryCatalogEntry& entry, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  ParallelFixtures fx;
  fx.seed = seed;
  const Interval unit{0.0, 1.0};
  for (std::size_t k = 0; k < count; ++k) {
    const Path p = random_path(entry, rng);
    switch (k % 3) {
      case 0:
        fx.paths.push_back(p);
        break;
      case 1: {
        // Consecutive halves, each rescaled to [0, 1].
        fx.paths.push_back(reparametrize(restrict(p, {0.0, 0.5}), Reparametrization::affine(unit, {0.0, 0.5})));
        fx.paths.push_back(reparametrize(restrict(p, {0.5, 1.0}), Reparametrization::affine(unit, {0.5, 1.0})));
        break;
      }
      default: {
        // A chord leaving from the end of p.
        fx.paths.push_back(p);
        fx.paths.push_back(paths::segment(p.position(1.0), random_point(entry, rng), unit));
        break;
      }
    }
  }
  fx.reparams = {Reparametrization::power(unit, unit, 2.0), Reparametrization::power(unit, unit, 3.0),
                 Reparametrization::piecewise_affine({0.0, 0.3, 1.0}, {0.0, 0.6, 1.0})};
  const int r = entry.space().fibre_dim;
  for (int k = 0; k < 3; ++k) fx.u_samples.push_back(random_fibre_vector(r, rng));
  for (int k = 0; k < 3; ++k) fx.points.push_back(random_point(entry, rng));
  fx.point_parameter = rng.uniform(-1.0, 1.0);
  return fx;
}

std::vector<LawReport> parallel_suite(const GeometryCatalogEntry& entry, const SuiteOptions& options) {
  ParallelFixtures fx = parallel_fixtures(entry, 6, options.seed);
  if (options.path && options.path->domain().approx_equal({0.0, 1.0})) fx.paths.insert(fx.paths.begin(), *options.path);
  return check_parallel_axioms(parallel_from_transport(entry.transport), fx, options.tolerance);
}

SmoothnessReport smoothness_suite(const GeometryCatalogEntry& entry, const SuiteOptions& options, double tolerance) {
  Rng rng(options.seed);
  const Path p = fixture_path(entry, options, rng);
  const double s0 = 0.5 * (p.domain().lo + p.domain().hi);
  SmoothnessOptions so;
  so.tolerance = tolerance;
  so.seed = options.seed;
  return check_smoothness_conditions(entry.transport, p, s0, random_fibre_vector(entry.space().fibre_dim, rng), so);
}

LawReport transport_roundtrip(const GeometryCatalogEntry& entry, std::size_t samples, std::uint64_t seed,
                              double tolerance) {
  Rng rng(seed);
  const TransportAlongPaths back = transport_from_parallel(parallel_from_transport(entry.transport));
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Path p = random_path(entry, rng);
    const double s = rng.uniform(0.0, 1.0), t = rng.uniform(0.0, 1.0);
    const Vec u = random_fibre_vector(entry.space().fibre_dim, rng);
    const double res = residual(back.apply(p, s, t, u), entry.transport.apply(p, s, t, u));
    if (!std::isnan(worst) && (std::isnan(res) || res > worst)) worst = res;
  }
  return LawReport::make("roundtrip-transport-parallel", samples, worst, tolerance, seed);
}

LawReport connection_roundtrip(const GeometryCatalogEntry& entry, std::size_t points, std::uint64_t seed,
                               double tolerance) {
  if (!entry.geometry) throw Error(ErrorCode::NotApplicable, "entry '" + entry.id + "' has no connection");
  Rng rng(seed);
  std::vector<Vec> xs;
  for (std::size_t k = 0; k < points; ++k) xs.push_back(random_point(entry, rng));
  FactorizationOptions fo;
  fo.seed = seed;
  const BundleGeometry recovered = connection_from_transport(entry.transport, xs, fo);
  double worst = 0.0;
  for (const Vec& x : xs) {
    const double res = (recovered.coefficients(x) - entry.geometry->coefficients(x)).max_abs();
    if (!std::isnan(worst) && (std::isnan(res) || res > worst)) worst = res;
  }
  return LawReport::make("roundtrip-connection", points, worst, tolerance, seed);
}

std::vector<FactorizationVerdict> factorization_suite(const GeometryCatalogEntry& entry, std::size_t points,
                                                      std::uint64_t seed, const FactorizationOptions& options) {
  Rng rng(seed);
  std::vector<FactorizationVerdict> out;
  for (std::size_t k = 0; k < points; ++k) {
    FactorizationOptions fo = options;
    fo.seed = seed + k;
    out.push_back(factorization_test(entry.transport, random_point(entry, rng), fo));
  }
  return out;
}

LawReport linearity_suite(const GeometryCatalogEntry& entry, std::size_t samples, std::uint64_t seed,
                          double tolerance) {
  Rng rng(seed);
  const int r = entry.space().fibre_dim;
  std::vector<LawReport> parts;
  for (std::size_t k = 0; k < samples; ++k) {
    const Path p = random_path(entry, rng);
    const double s = rng.uniform(0.0, 1.0), t = rng.uniform(0.0, 1.0);
    const std::vector<std::pair<Vec, Vec>> pairs{{random_fibre_vector(r, rng), random_fibre_vector(r, rng)}};
    LinearityOptions lo;
    lo.tolerance = tolerance;
    lo.seed = seed + k;
    parts.push_back(check_linearity(entry.transport, p, s, t, pairs, lo));
  }
  LawReport merged = merge_reports("linearity", parts);
  merged.seed = seed;
  return merged;
}

}  // namespace pathtrans
