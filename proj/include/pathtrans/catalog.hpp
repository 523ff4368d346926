#pragma once

#include "pathtrans/bundle.hpp"
#include "pathtrans/linear_engine.hpp"
#include "pathtrans/random.hpp"
#include "pathtrans/transport.hpp"

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

namespace pathtrans {

struct CatalogTraits {
  bool factors_through_velocity = true;  // coefficients linear in the velocity
  bool linear = true;
  bool flat = false;
  bool reparametrization_invariant = true;
};

struct GeometryCatalogEntry {
  std::string id;
  std::string description;
  std::shared_ptr<const BundleGeometry> geometry;  // null unless built from a connection
  TransportAlongPaths transport;
  CatalogTraits traits;
  Vec sample_lo;  // box inside the chart used for random fixtures
  Vec sample_hi;

  const BundleSpace& space() const { return transport.space(); }
};

inline constexpr double kSphereCutoff = 1e-3;

GeometryCatalogEntry flat_bundle(int base_dim, int fibre_dim, const IntegratorOptions& options = {});
/// Levi-Civita connection of the round unit sphere in the chart (theta, phi),
/// theta in (kSphereCutoff, pi - kSphereCutoff), frame (d/dtheta, d/dphi).
GeometryCatalogEntry sphere_levi_civita(const IntegratorOptions& options = {});
/// Christoffel symbols of the round sphere at (theta, phi).
ConnectionCoefficients sphere_christoffel(const Vec& x);

/// i acting on C^m in interleaved (re, im) coordinates.
Mat complex_structure(int complex_dim);
/// Real 2m x 2m form of a complex m x m matrix.
Mat realify(const Eigen::MatrixXcd& h);

/// Constant coefficients Gamma = J H / hbar on every path, H in realified form.
/// The transport is L(t, s) = exp(-(t - s) J H / hbar), integrated by RK4.
GeometryCatalogEntry evolution_transport(const Mat& h_realified, double hbar = 1.0, int base_dim = 2,
                                         const IntegratorOptions& options = {});
/// H = (sigma_x + sigma_z) / sqrt(2), operator norm 1, realified.
Mat default_hamiltonian();

inline constexpr double kNonlinearAlpha = 0.1;

/// The 1-form omega = sum_mu dx^mu + (x^0 dx^1 - x^1 dx^0) / 2 (plain dx^0 for n = 1).
double nonlinear_rate(const Vec& x, const Vec& v);
/// Generic transport solving u_a' = alpha omega(gamma') u_a^2 along the path.
GeometryCatalogEntry nonlinear_fixture(int base_dim, int fibre_dim, double alpha = kNonlinearAlpha,
                                       const IntegratorOptions& options = {});

/// Ids accepted by catalog_entry: flat, sphere, evolution, nonlinear.
std::vector<std::string> catalog_ids();
GeometryCatalogEntry catalog_entry(const std::string& id, const IntegratorOptions& options = {});

/**
 * Geometry description file, one key=value per line ('#' starts a comment):
 *
 *   label=my-geometry
 *   kind=builtin | grid
 *   builtin_id=sphere            (kind=builtin)
 *   base_dim=2 fibre_dim=2       (kind=grid)
 *   grid_file=coefficients.csv   (kind=grid, relative to the description file)
 */
GeometryCatalogEntry load_geometry_file(const std::string& file, const IntegratorOptions& options = {});

/// Random C1 path on [0, 1] inside the entry's sample box: a chord plus a
/// transverse sine bump, with analytic velocity.
Path random_path(const GeometryCatalogEntry& entry, Rng& rng);
Vec random_point(const GeometryCatalogEntry& entry, Rng& rng);

}  // namespace pathtrans
