#include "pathtrans/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pathtrans {

void BundleSpace::require_in_chart(const Vec& x) const {
  if (!in_chart(x)) {
    std::ostringstream os;
    os << "point (" << x.transpose() << ") is outside the chart of " << label;
    throw Error(ErrorCode::OutOfChart, os.str());
  }
}

bool BundleSpace::same_point(const Vec& a, const Vec& b, double tol) const {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double d = a(i) - b(i);
    if (i < periods.size() && periods(i) > 0.0) d = std::remainder(d, periods(i));
    if (!(std::abs(d) <= tol)) return false;
  }
  return true;
}

ConnectionCoefficients::ConnectionCoefficients(int fibre_dim, int base_dim)
    : fibre_dim_(fibre_dim), slices_(static_cast<std::size_t>(base_dim), Mat::Zero(fibre_dim, fibre_dim)) {}

Mat ConnectionCoefficients::contract_velocity(const Vec& v) const {
  Mat out = Mat::Zero(fibre_dim_, fibre_dim_);
  for (std::size_t mu = 0; mu < slices_.size(); ++mu) {
    const double vm = v(static_cast<Eigen::Index>(mu));
    if (vm != 0.0) out += vm * slices_[mu];
  }
  return out;
}

double ConnectionCoefficients::max_abs() const {
  double m = 0.0;
  for (const auto& s : slices_) m = std::max(m, max_norm(s));
  return m;
}

ConnectionCoefficients ConnectionCoefficients::operator-(const ConnectionCoefficients& other) const {
  ConnectionCoefficients out = *this;
  for (std::size_t mu = 0; mu < slices_.size(); ++mu) out.slices_[mu] -= other.slices_[mu];
  return out;
}

ConnectionCoefficients& ConnectionCoefficients::operator+=(const ConnectionCoefficients& other) {
  for (std::size_t mu = 0; mu < slices_.size(); ++mu) slices_[mu] += other.slices_[mu];
  return *this;
}

ConnectionCoefficients ConnectionCoefficients::operator*(double w) const {
  ConnectionCoefficients out = *this;
  for (auto& s : out.slices_) s *= w;
  return out;
}

BundleGeometry::BundleGeometry(BundleSpace space, CoefficientFn coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients)) {
  if (space_.base_dim <= 0 || space_.fibre_dim <= 0)
    throw Error(ErrorCode::InvalidGeometry, "bundle dimensions must be positive");
  if (!coefficients_) throw Error(ErrorCode::InvalidGeometry, "coefficient evaluator is required");
}

ConnectionCoefficients BundleGeometry::coefficients(const Vec& x) const {
  space_.require_in_chart(x);
  ConnectionCoefficients c = coefficients_(x);
  if (c.base_dim() != base_dim() || c.fibre_dim() != fibre_dim())
    throw Error(ErrorCode::SingularCoefficients, "coefficient array of " + label() + " has the wrong shape");
  for (const auto& s : c.slices()) {
    if (s.rows() != fibre_dim() || s.cols() != fibre_dim() || !s.allFinite())
      throw Error(ErrorCode::SingularCoefficients, "non-finite or mis-shaped coefficients in " + label());
  }
  return c;
}

Mat two_index_at(const BundleGeometry& g, const FibreVector& p) {
  if (p.components.size() != g.fibre_dim())
    throw Error(ErrorCode::DomainMismatch, "fibre vector has the wrong number of components");
  const ConnectionCoefficients c = g.coefficients(p.base_point);
  Mat out(g.fibre_dim(), g.base_dim());
  for (int mu = 0; mu < g.base_dim(); ++mu) out.col(mu) = -(c.slice(mu) * p.components);
  return out;
}

std::vector<Mat> connection_matrices_at(const BundleGeometry& g, const Vec& x) {
  return g.coefficients(x).slices();
}

// ---------------------------------------------------------------------------
// Grid-backed geometries

namespace {

std::size_t node_count(const CoefficientGrid& grid) {
  std::size_t count = 1;
  for (const auto& axis : grid.axes) count *= axis.size();
  return count;
}

ConnectionCoefficients interpolate(const CoefficientGrid& grid, const Vec& x, int r, int n) {
  std::vector<std::size_t> cell(static_cast<std::size_t>(n));
  std::vector<double> frac(static_cast<std::size_t>(n));
  std::vector<std::size_t> stride(static_cast<std::size_t>(n));
  std::size_t st = 1;
  for (int d = n - 1; d >= 0; --d) {
    const auto ud = static_cast<std::size_t>(d);
    stride[ud] = st;
    st *= grid.axes[ud].size();
  }
  for (int d = 0; d < n; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    const auto& axis = grid.axes[ud];
    if (axis.size() == 1) {
      cell[ud] = 0;
      frac[ud] = 0.0;
      continue;
    }
    auto it = std::upper_bound(axis.begin(), axis.end(), x(d));
    std::size_t i = static_cast<std::size_t>(std::distance(axis.begin(), it));
    i = std::clamp<std::size_t>(i, 1, axis.size() - 1) - 1;
    cell[ud] = i;
    frac[ud] = std::clamp((x(d) - axis[i]) / (axis[i + 1] - axis[i]), 0.0, 1.0);
  }
  ConnectionCoefficients out(r, n);
  for (std::size_t corner = 0; corner < (std::size_t{1} << n); ++corner) {
    double w = 1.0;
    std::size_t index = 0;
    for (int d = 0; d < n; ++d) {
      const auto ud = static_cast<std::size_t>(d);
      const bool upper = (corner >> ud) & 1U;
      if (upper && grid.axes[ud].size() == 1) {
        w = 0.0;
        break;
      }
      w *= upper ? frac[ud] : 1.0 - frac[ud];
      index += (cell[ud] + (upper ? 1 : 0)) * stride[ud];
    }
    if (w != 0.0) out += grid.node_values[index] * w;
  }
  return out;
}

}  // namespace

BundleGeometry grid_geometry(std::string label, int base_dim, int fibre_dim, CoefficientGrid grid) {
  if (static_cast<int>(grid.axes.size()) != base_dim)
    throw Error(ErrorCode::InvalidGeometry, "grid has the wrong number of axes");
  for (const auto& axis : grid.axes) {
    if (axis.empty() || !std::is_sorted(axis.begin(), axis.end()))
      throw Error(ErrorCode::InvalidGeometry, "grid axes must be non-empty and sorted");
  }
  if (grid.node_values.size() != node_count(grid))
    throw Error(ErrorCode::InvalidGeometry, "grid node values do not cover the grid");
  auto shared = std::make_shared<const CoefficientGrid>(std::move(grid));
  BundleSpace space{label, base_dim, fibre_dim, [shared](const Vec& x) {
                      for (std::size_t d = 0; d < shared->axes.size(); ++d) {
                        const auto& axis = shared->axes[d];
                        const double tol = 1e-12 * (1.0 + std::abs(axis.back()) + std::abs(axis.front()));
                        const double xd = x(static_cast<Eigen::Index>(d));
                        if (xd < axis.front() - tol || xd > axis.back() + tol) return false;
                      }
                      return true;
                    },
                    {}};
  return BundleGeometry(std::move(space), [shared, fibre_dim, base_dim](const Vec& x) {
    return interpolate(*shared, x, fibre_dim, base_dim);
  });
}

bool forms_tensor_grid(std::span<const Vec> points, CoefficientGrid* grid_out,
                       std::vector<std::size_t>* node_of_point) {
  if (points.empty()) return false;
  const auto n = static_cast<std::size_t>(points.front().size());
  std::vector<std::vector<double>> axes(n);
  for (const auto& p : points) {
    for (std::size_t d = 0; d < n; ++d) axes[d].push_back(p(static_cast<Eigen::Index>(d)));
  }
  for (auto& axis : axes) {
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }
  std::size_t total = 1;
  for (const auto& axis : axes) total *= axis.size();
  if (total != points.size()) return false;

  std::vector<std::size_t> nodes;
  std::set<std::size_t> seen;
  for (const auto& p : points) {
    std::size_t index = 0;
    for (std::size_t d = 0; d < n; ++d) {
      const auto& axis = axes[d];
      const auto it = std::lower_bound(axis.begin(), axis.end(), p(static_cast<Eigen::Index>(d)));
      index = index * axis.size() + static_cast<std::size_t>(std::distance(axis.begin(), it));
    }
    if (!seen.insert(index).second) return false;
    nodes.push_back(index);
  }
  if (grid_out) {
    grid_out->axes = std::move(axes);
    grid_out->node_values.clear();
  }
  if (node_of_point) *node_of_point = std::move(nodes);
  return true;
}

CoefficientGrid load_coefficient_grid(const std::string& file, int base_dim, int fibre_dim) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::FileNotFound, file);
  struct Entry {
    std::vector<double> x;
    int a, b, mu;
    double value;
  };
  std::vector<Entry> entries;
  std::string line;
  bool header_allowed = true;
  const std::size_t columns = static_cast<std::size_t>(base_dim) + 4;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric && header_allowed) {
      header_allowed = false;
      continue;
    }
    header_allowed = false;
    if (!numeric || row.size() != columns)
      throw Error(ErrorCode::ConfigParse, "grid row must have " + std::to_string(columns) + " numeric columns: " + line);
    Entry e;
    e.x.assign(row.begin(), row.begin() + base_dim);
    e.a = static_cast<int>(row[static_cast<std::size_t>(base_dim)]);
    e.b = static_cast<int>(row[static_cast<std::size_t>(base_dim) + 1]);
    e.mu = static_cast<int>(row[static_cast<std::size_t>(base_dim) + 2]);
    e.value = row[static_cast<std::size_t>(base_dim) + 3];
    if (e.a < 0 || e.a >= fibre_dim || e.b < 0 || e.b >= fibre_dim || e.mu < 0 || e.mu >= base_dim)
      throw Error(ErrorCode::ConfigParse, "coefficient index out of range: " + line);
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw Error(ErrorCode::ConfigParse, "grid file " + file + " has no entries");

  CoefficientGrid grid;
  grid.axes.resize(static_cast<std::size_t>(base_dim));
  for (const auto& e : entries) {
    for (int d = 0; d < base_dim; ++d) grid.axes[static_cast<std::size_t>(d)].push_back(e.x[static_cast<std::size_t>(d)]);
  }
  for (auto& axis : grid.axes) {
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }
  grid.node_values.assign(node_count(grid), ConnectionCoefficients(fibre_dim, base_dim));
  for (const auto& e : entries) {
    std::size_t index = 0;
    for (int d = 0; d < base_dim; ++d) {
      const auto& axis = grid.axes[static_cast<std::size_t>(d)];
      const auto it = std::lower_bound(axis.begin(), axis.end(), e.x[static_cast<std::size_t>(d)]);
      index = index * axis.size() + static_cast<std::size_t>(std::distance(axis.begin(), it));
    }
    grid.node_values[index](e.a, e.b, e.mu) = e.value;
  }
  return grid;
}

BundleGeometry scattered_geometry(std::string label, std::vector<Vec> points,
                                  std::vector<ConnectionCoefficients> values, double margin) {
  if (points.empty() || points.size() != values.size())
    throw Error(ErrorCode::InvalidGeometry, "scattered geometry needs one coefficient set per point");
  const int n = static_cast<int>(points.front().size());
  const int r = values.front().fibre_dim();
  Vec lo = points.front();
  Vec hi = points.front();
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  lo.array() -= margin;
  hi.array() += margin;
  struct Data {
    std::vector<Vec> points;
    std::vector<ConnectionCoefficients> values;
  };
  auto data = std::make_shared<const Data>(Data{std::move(points), std::move(values)});
  BundleSpace space{std::move(label), n, r, [lo, hi](const Vec& x) {
                      return (x.array() >= lo.array() - 1e-12).all() && (x.array() <= hi.array() + 1e-12).all();
                    },
                    {}};
  return BundleGeometry(std::move(space), [data, r, n](const Vec& x) {
    ConnectionCoefficients out(r, n);
    double total = 0.0;
    for (std::size_t i = 0; i < data->points.size(); ++i) {
      const double d2 = (data->points[i] - x).squaredNorm();
      if (d2 == 0.0) return data->values[i];
      const double w = 1.0 / (d2 * d2);
      out += data->values[i] * w;
      total += w;
    }
    return out * (1.0 / total);
  });
}

}  // namespace pathtrans
