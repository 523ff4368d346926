#pragma once

#include "pathtrans/catalog.hpp"
#include "pathtrans/linear_engine.hpp"
#include "pathtrans/transport.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pathtrans {

/// Seeded random fixtures and whole-entry law suites.
struct SuiteOptions {
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  double tolerance = kIntegratedTolerance;
  std::optional<Path> path;  // use this path instead of random ones
};

/// A random reparametrization onto `target`: a power map, an affine reversal
/// or a piecewise-affine map (either orientation).
Reparametrization random_reparametrization(Interval target, Rng& rng, bool allow_reversing = true);
Vec random_fibre_vector(int fibre_dim, Rng& rng);
Interval random_subinterval(Interval domain, Rng& rng);

/// One merged report from several of the same law.
LawReport merge_reports(const std::string& law_id, const std::vector<LawReport>& parts);

/// groupoid, restriction and reparametrization reports over `samples`
/// random (path, r, s, t, u) draws.
std::vector<LawReport> axiom_suite(const GeometryCatalogEntry& entry, const SuiteOptions& options);

/// Canonical random paths with composable pairs (consecutive halves of a
/// random path, and chords joined end to start), preserving reparametrizations
/// and random base points.
ParallelFixtures parallel_fixtures(const GeometryCatalogEntry& entry, std::size_t count, std::uint64_t seed);
std::vector<LawReport> parallel_suite(const GeometryCatalogEntry& entry, const SuiteOptions& options);

/// Conditions (a)-(c) at the middle of a random (or the given) path.
SmoothnessReport smoothness_suite(const GeometryCatalogEntry& entry, const SuiteOptions& options,
                                  double tolerance = 1e-5);

/// transport -> parallel -> transport on random (path, s, t, u).
LawReport transport_roundtrip(const GeometryCatalogEntry& entry, std::size_t samples, std::uint64_t seed,
                              double tolerance = 1e-9);
/// connection -> transport -> connection at random chart points; NotApplicable
/// when the entry carries no connection.
LawReport connection_roundtrip(const GeometryCatalogEntry& entry, std::size_t points, std::uint64_t seed,
                               double tolerance = 1e-5);

std::vector<FactorizationVerdict> factorization_suite(const GeometryCatalogEntry& entry, std::size_t points,
                                                      std::uint64_t seed, const FactorizationOptions& options = {});

/// Linearity over random (path, s, t, u, v) with unit-scale inputs.
LawReport linearity_suite(const GeometryCatalogEntry& entry, std::size_t samples, std::uint64_t seed,
                          double tolerance = kClosedFormTolerance);

}  // namespace pathtrans
