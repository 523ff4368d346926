#pragma once

#include "pathtrans/types.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pathtrans {

using ChartPredicate = std::function<bool(const Vec&)>;

/// Dimensions and chart of a vector bundle, without any connection data.
struct BundleSpace {
  std::string label;
  int base_dim = 1;
  int fibre_dim = 1;
  ChartPredicate chart;  // empty means the whole of R^n
  Vec periods;           // per-coordinate identification period, 0 for none; empty means none

  bool in_chart(const Vec& x) const { return x.size() == base_dim && x.allFinite() && (!chart || chart(x)); }
  void require_in_chart(const Vec& x) const;
  /// Equality of chart points up to the coordinate periods, max norm.
  bool same_point(const Vec& a, const Vec& b, double tol) const;
};

/// Frame-level 3-index coefficients Gamma^a_{b mu} at one base point, stored
/// as n slices of r x r matrices: slice(mu)(a, b) = Gamma^a_{b mu}.
class ConnectionCoefficients {
 public:
  ConnectionCoefficients(int fibre_dim, int base_dim);

  int fibre_dim() const { return fibre_dim_; }
  int base_dim() const { return static_cast<int>(slices_.size()); }

  double& operator()(int a, int b, int mu) { return slices_[static_cast<std::size_t>(mu)](a, b); }
  double operator()(int a, int b, int mu) const { return slices_[static_cast<std::size_t>(mu)](a, b); }

  const Mat& slice(int mu) const { return slices_[static_cast<std::size_t>(mu)]; }
  Mat& slice(int mu) { return slices_[static_cast<std::size_t>(mu)]; }
  const std::vector<Mat>& slices() const { return slices_; }

  /// Gamma^a_b = Gamma^a_{b mu} v^mu.
  Mat contract_velocity(const Vec& v) const;
  double max_abs() const;

  ConnectionCoefficients operator-(const ConnectionCoefficients& other) const;
  ConnectionCoefficients& operator+=(const ConnectionCoefficients& other);
  ConnectionCoefficients operator*(double w) const;

 private:
  int fibre_dim_;
  std::vector<Mat> slices_;
};

/// A vector bundle presented through its connection coefficient field.
class BundleGeometry {
 public:
  using CoefficientFn = std::function<ConnectionCoefficients(const Vec&)>;

  BundleGeometry(BundleSpace space, CoefficientFn coefficients);

  const BundleSpace& space() const { return space_; }
  const std::string& label() const { return space_.label; }
  int base_dim() const { return space_.base_dim; }
  int fibre_dim() const { return space_.fibre_dim; }
  bool in_chart(const Vec& x) const { return space_.in_chart(x); }

  /// Coefficients at x; throws OutOfChart outside the chart and
  /// SingularCoefficients on non-finite or mis-shaped output.
  ConnectionCoefficients coefficients(const Vec& x) const;

 private:
  BundleSpace space_;
  CoefficientFn coefficients_;
};

struct FibreVector {
  Vec base_point;
  Vec components;
};

/// 2-index coefficients Gamma^a_mu(p) = -Gamma^a_{b mu}(pi(p)) u^b(p), an r x n matrix.
Mat two_index_at(const BundleGeometry& g, const FibreVector& p);
/// The n matrices Gamma_{., ., mu}(x).
std::vector<Mat> connection_matrices_at(const BundleGeometry& g, const Vec& x);

/// Coefficients on a tensor grid, multilinearly interpolated; the chart is
/// the bounding box of the grid.
struct CoefficientGrid {
  std::vector<std::vector<double>> axes;            // sorted node coordinates per base axis
  std::vector<ConnectionCoefficients> node_values;  // row-major over axes (last axis fastest)
};

BundleGeometry grid_geometry(std::string label, int base_dim, int fibre_dim, CoefficientGrid grid);
/// CSV rows (x^1, ..., x^n, a, b, mu, value) with 0-based indices; entries
/// not listed are zero. Every node of the tensor grid spanned by the listed
/// coordinates gets a value set, missing nodes stay zero.
CoefficientGrid load_coefficient_grid(const std::string& file, int base_dim, int fibre_dim);

/// Inverse-distance-weighted interpolation of coefficients known at scattered
/// points; exact at the points themselves. The chart is the bounding box of
/// the points enlarged by `margin`.
BundleGeometry scattered_geometry(std::string label, std::vector<Vec> points,
                                  std::vector<ConnectionCoefficients> values, double margin = 0.0);

/// True when the points are exactly the nodes of a tensor grid. On success
/// `grid_out` receives the axes (node_values left empty) and `node_of_point`
/// the row-major node index of every point.
bool forms_tensor_grid(std::span<const Vec> points, CoefficientGrid* grid_out = nullptr,
                       std::vector<std::size_t>* node_of_point = nullptr);

}  // namespace pathtrans
