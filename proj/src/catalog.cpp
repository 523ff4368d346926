#include "pathtrans/catalog.hpp"

#include "pathtrans/ode.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace pathtrans {

namespace {

GeometryCatalogEntry connection_entry(std::string id, std::string description,
                                      std::shared_ptr<const BundleGeometry> g, CatalogTraits traits, Vec lo, Vec hi,
                                      const IntegratorOptions& options) {
  TransportAlongPaths t = transport_from_connection(g, options);
  return {std::move(id), std::move(description), std::move(g), std::move(t), traits, std::move(lo), std::move(hi)};
}

}  // namespace

GeometryCatalogEntry flat_bundle(int base_dim, int fibre_dim, const IntegratorOptions& options) {
  if (base_dim < 1 || fibre_dim < 1) throw Error(ErrorCode::InvalidGeometry, "flat bundle needs n, r >= 1");
  BundleSpace space{"flat", base_dim, fibre_dim, {}, {}};
  auto g = std::make_shared<const BundleGeometry>(
      space, [base_dim, fibre_dim](const Vec&) { return ConnectionCoefficients(fibre_dim, base_dim); });
  return connection_entry("flat", "trivial bundle R^n x R^r with zero coefficients", g, {true, true, true, true},
                          Vec::Constant(base_dim, -1.0), Vec::Constant(base_dim, 1.0), options);
}

ConnectionCoefficients sphere_christoffel(const Vec& x) {
  const double th = x(0);
  const double cot = std::cos(th) / std::sin(th);
  ConnectionCoefficients c(2, 2);
  c(1, 1, 0) = cot;                            // Gamma^phi_{phi theta}
  c(0, 1, 1) = -std::sin(th) * std::cos(th);   // Gamma^theta_{phi phi}
  c(1, 0, 1) = cot;                            // Gamma^phi_{theta phi}
  return c;
}

GeometryCatalogEntry sphere_levi_civita(const IntegratorOptions& options) {
  BundleSpace space{"sphere", 2, 2, [](const Vec& x) {
                      return x(0) > kSphereCutoff && x(0) < std::numbers::pi - kSphereCutoff;
                    },
                    Eigen::Vector2d(0.0, 2.0 * std::numbers::pi)};
  auto g = std::make_shared<const BundleGeometry>(space, sphere_christoffel);
  Vec lo(2), hi(2);
  lo << 0.3, -std::numbers::pi;
  hi << std::numbers::pi - 0.3, std::numbers::pi;
  return connection_entry("sphere", "Levi-Civita connection of the unit 2-sphere, chart (theta, phi)", g,
                          {true, true, false, true}, lo, hi, options);
}

Mat complex_structure(int complex_dim) {
  Mat j = Mat::Zero(2 * complex_dim, 2 * complex_dim);
  for (int k = 0; k < complex_dim; ++k) {
    j(2 * k, 2 * k + 1) = -1.0;
    j(2 * k + 1, 2 * k) = 1.0;
  }
  return j;
}

Mat realify(const Eigen::MatrixXcd& h) {
  const auto m = h.rows();
  Mat out(2 * m, 2 * h.cols());
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < h.cols(); ++b) {
      const double re = h(a, b).real(), im = h(a, b).imag();
      out(2 * a, 2 * b) = re;
      out(2 * a, 2 * b + 1) = -im;
      out(2 * a + 1, 2 * b) = im;
      out(2 * a + 1, 2 * b + 1) = re;
    }
  }
  return out;
}

Mat default_hamiltonian() {
  Eigen::MatrixXcd h(2, 2);
  const double c = 1.0 / std::numbers::sqrt2;
  h << c, c, c, -c;
  return realify(h);
}

GeometryCatalogEntry evolution_transport(const Mat& h, double hbar, int base_dim, const IntegratorOptions& options) {
  if (h.rows() != h.cols() || h.rows() % 2 != 0)
    throw Error(ErrorCode::InvalidGeometry, "realified Hamiltonian must be square of even size");
  if (!(hbar > 0.0)) throw Error(ErrorCode::InvalidGeometry, "hbar must be positive");
  const int r = static_cast<int>(h.rows());
  const Mat gamma = complex_structure(r / 2) * h / hbar;
  const bool zero = max_norm(gamma) == 0.0;
  BundleSpace space{"evolution", base_dim, r, {}, {}};
  TransportAlongPaths t = transport_from_coefficients(
      space, [gamma](const Path& p) { return constant_coefficient_field(gamma, p.id()); }, options);
  return {"evolution",
          "constant-generator evolution transport Gamma = J H / hbar",
          nullptr,
          std::move(t),
          {zero, true, zero, zero},
          Vec::Constant(base_dim, -1.0),
          Vec::Constant(base_dim, 1.0)};
}

double nonlinear_rate(const Vec& x, const Vec& v) {
  double w = v.sum();
  if (x.size() == 1) return v(0);
  w += 0.5 * (x(0) * v(1) - x(1) * v(0));
  return w;
}

GeometryCatalogEntry nonlinear_fixture(int base_dim, int fibre_dim, double alpha, const IntegratorOptions& options) {
  if (base_dim < 1 || fibre_dim < 1) throw Error(ErrorCode::InvalidGeometry, "nonlinear fixture needs n, r >= 1");
  BundleSpace space{"nonlinear", base_dim, fibre_dim, {}, {}};
  auto apply = [alpha, options](const Path& g, double s, double t, const Vec& u) -> Vec {
    if (s == t) return u;
    const auto rhs = [&](double tau, Side side, const Vec& y) -> Vec {
      return alpha * nonlinear_rate(g.position(tau), tangent(g, tau, side)) * y.cwiseProduct(y);
    };
    Vec out = rk4_along(rhs, g.breaks(), s, t, u, options.resolve(s, t));
    if (!out.allFinite()) throw Error(ErrorCode::SingularCoefficients, "nonlinear flow blew up along " + g.id());
    return out;
  };
  return {"nonlinear",
          "generic transport u_a' = alpha omega(gamma') u_a^2",
          nullptr,
          TransportAlongPaths::generic(space, apply, true),
          {false, false, alpha == 0.0, true},
          Vec::Constant(base_dim, -1.0),
          Vec::Constant(base_dim, 1.0)};
}

std::vector<std::string> catalog_ids() { return {"flat", "sphere", "evolution", "nonlinear"}; }

GeometryCatalogEntry catalog_entry(const std::string& id, const IntegratorOptions& options) {
  if (id == "flat") return flat_bundle(2, 2, options);
  if (id == "sphere") return sphere_levi_civita(options);
  if (id == "evolution") return evolution_transport(default_hamiltonian(), 1.0, 2, options);
  if (id == "nonlinear") return nonlinear_fixture(2, 2, kNonlinearAlpha, options);
  throw Error(ErrorCode::ConfigParse, "unknown geometry '" + id + "'");
}

GeometryCatalogEntry load_geometry_file(const std::string& file, const IntegratorOptions& options) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open geometry file '" + file + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error(ErrorCode::ConfigParse, file + ":" + std::to_string(line_no) + ": expected key=value");
      kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
  }
  const auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorCode::ConfigParse, file + ": missing key '" + key + "'");
    return it->second;
  };
  const auto get_int = [&](const std::string& key) {
    try {
      return std::stoi(get(key));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ConfigParse, file + ": '" + key + "' must be an integer");
    }
  };
  const std::string kind = kv.count("kind") ? kv["kind"] : "grid";
  if (kind == "builtin") {
    GeometryCatalogEntry e = catalog_entry(get("builtin_id"), options);
    if (kv.count("label")) e.id = kv["label"];
    return e;
  }
  if (kind != "grid") throw Error(ErrorCode::ConfigParse, file + ": unknown kind '" + kind + "'");

  const int n = get_int("base_dim");
  const int r = get_int("fibre_dim");
  if (n < 1 || r < 1) throw Error(ErrorCode::ConfigParse, file + ": dimensions must be positive");
  std::filesystem::path grid_file = get("grid_file");
  if (grid_file.is_relative()) grid_file = std::filesystem::path(file).parent_path() / grid_file;
  CoefficientGrid grid = load_coefficient_grid(grid_file.string(), n, r);

  bool flat = true;
  for (const auto& c : grid.node_values) flat = flat && c.max_abs() == 0.0;
  Vec lo(n), hi(n);
  for (int mu = 0; mu < n; ++mu) {
    lo(mu) = grid.axes[static_cast<std::size_t>(mu)].front();
    hi(mu) = grid.axes[static_cast<std::size_t>(mu)].back();
  }
  const std::string label = kv.count("label") ? kv["label"] : grid_file.stem().string();
  auto g = std::make_shared<const BundleGeometry>(grid_geometry(label, n, r, std::move(grid)));
  return connection_entry(label, "tabulated coefficients from " + grid_file.string(), g, {true, true, flat, true}, lo,
                          hi, options);
}

Path random_path(const GeometryCatalogEntry& entry, Rng& rng) {
  const Vec width = entry.sample_hi - entry.sample_lo;
  const Vec lo = entry.sample_lo + 0.2 * width;
  const Vec hi = entry.sample_hi - 0.2 * width;
  const Vec a = rng.uniform_vec(lo, hi);
  const Vec b = rng.uniform_vec(lo, hi);
  const Vec c = rng.uniform_vec(Vec(-0.15 * width), Vec(0.15 * width));
  const double pi = std::numbers::pi;
  return Path(
      static_cast<int>(a.size()), {0.0, 1.0},
      [a, b, c, pi](double s) -> Vec { return a + s * (b - a) + std::sin(pi * s) * c; },
      [a, b, c, pi](double s, Side) -> Vec { return (b - a) + pi * std::cos(pi * s) * c; }, Smoothness::C1, {},
      "random");
}

Vec random_point(const GeometryCatalogEntry& entry, Rng& rng) { return rng.uniform_vec(entry.sample_lo, entry.sample_hi); }

}  // namespace pathtrans
