#include "pathtrans/cli.hpp"

#include "pathtrans/catalog.hpp"
#include "pathtrans/holonomy.hpp"
#include "pathtrans/path_spec.hpp"
#include "pathtrans/report.hpp"
#include "pathtrans/suite.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace pathtrans {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"transport", "check-laws", "factorize",
                                          "roundtrip", "holonomy",   "list-geometries"};
  return c;
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularCoefficients:
    case ErrorCode::InverseUnavailable:
    case ErrorCode::NotFactorizable:
    case ErrorCode::NonInvertible:
    case ErrorCode::NotARotation:
      return false;
    default:
      return true;
  }
}

class Context {
 public:
  Context(const RunConfig& config, std::ostream& out) : config_(config), out_(out) {
    if (config.step < 0.0) throw Error(ErrorCode::ConfigParse, "step must be positive");
    if (config.tolerance && !(*config.tolerance > 0.0)) throw Error(ErrorCode::ConfigParse, "tolerance must be positive");
    options_.step = config.step;
    output_dir_ = config.output_dir;
    if (output_dir_.empty()) {
      const char* env = std::getenv(kOutputDirEnv);
      output_dir_ = env && *env ? env : ".";
    }
  }

  GeometryCatalogEntry entry() const {
    if (!config_.geometry_file.empty()) return load_geometry_file(config_.geometry_file, options_);
    if (config_.geometry.empty()) throw Error(ErrorCode::ConfigParse, "no --geometry or --geometry-file given");
    return catalog_entry(config_.geometry, options_);
  }

  std::optional<Path> path() const {
    if (config_.paths.empty()) return std::nullopt;
    return parse_path(config_.paths.front());
  }

  double tolerance(double fallback) const { return config_.tolerance.value_or(fallback); }
  std::size_t samples(std::size_t fallback) const { return config_.samples.value_or(fallback); }
  std::size_t points(std::size_t fallback) const { return config_.points.value_or(fallback); }
  std::uint64_t seed() const { return config_.seed; }
  const RunConfig& config() const { return config_; }
  std::ostream& out() const { return out_; }

  void write(const std::string& name, const std::string& content) const {
    std::error_code ec;
    std::filesystem::create_directories(output_dir_, ec);
    if (ec) throw Error(ErrorCode::FileNotFound, "cannot create output directory '" + output_dir_ + "'");
    write_text_file((std::filesystem::path(output_dir_) / name).string(), content);
  }

 private:
  const RunConfig& config_;
  std::ostream& out_;
  IntegratorOptions options_;
  std::string output_dir_;
};

int any_failed(const std::vector<LawReport>& reports) {
  for (const LawReport& r : reports)
    if (!r.passed) return kExitFail;
  return kExitPass;
}

int cmd_list_geometries(const Context& ctx) {
  std::ostringstream table;
  table << "id         linear  factors_through_velocity  flat   reparametrization_invariant  description\n";
  const auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  for (const std::string& id : catalog_ids()) {
    const GeometryCatalogEntry e = catalog_entry(id);
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %-7s %-25s %-6s %-28s ", e.id.c_str(), yes_no(e.traits.linear),
                  yes_no(e.traits.factors_through_velocity), yes_no(e.traits.flat),
                  yes_no(e.traits.reparametrization_invariant));
    table << line << e.description << '\n';
  }
  ctx.out() << table.str();
  return kExitPass;
}

int cmd_transport(const Context& ctx) {
  const GeometryCatalogEntry e = ctx.entry();
  const std::optional<Path> p = ctx.path();
  if (!p) throw Error(ErrorCode::ConfigParse, "transport needs --path");
  const double s = ctx.config().s.value_or(p->domain().lo);
  const double t = ctx.config().t.value_or(p->domain().hi);
  const int r = e.space().fibre_dim;
  const Vec u = ctx.config().u.empty() ? Vec(Vec::Unit(r, 0)) : parse_vector(ctx.config().u);
  if (u.size() != r) throw Error(ErrorCode::ConfigParse, "--u needs " + std::to_string(r) + " components");

  const Vec image = e.transport.apply(*p, s, t, u);
  std::ostringstream vec;
  vec << "component,value\n";
  for (Eigen::Index a = 0; a < image.size(); ++a) vec << a << ',' << format_number(image(a)) << '\n';
  ctx.write("transport_vector.csv", vec.str());
  ctx.out() << vec.str();
  if (e.transport.is_linear()) {
    TransportMatrix m{e.transport.matrix(*p, s, t), p->id(), s, t, ctx.config().step, false};
    m.near_singular = std::abs(m.value.determinant()) < 1e-12;
    ctx.write("transport.csv", matrices_csv({&m, 1}));
    if (m.near_singular) std::cerr << "warning: transport matrix is nearly singular\n";
  }
  return kExitPass;
}

int cmd_check_laws(const Context& ctx) {
  const GeometryCatalogEntry e = ctx.entry();
  SuiteOptions so;
  so.samples = ctx.samples(50);
  so.seed = ctx.seed();
  so.tolerance = ctx.tolerance(kIntegratedTolerance);
  so.path = ctx.path();

  std::vector<LawReport> reports = axiom_suite(e, so);
  for (LawReport& r : parallel_suite(e, so)) reports.push_back(std::move(r));
  if (e.transport.differentiable()) {
    const SmoothnessReport sm = smoothness_suite(e, so, ctx.tolerance(1e-5));
    for (LawReport& r : sm.reports()) reports.push_back(std::move(r));
  }
  const std::string table = law_reports_table(reports);
  ctx.write("laws.csv", law_reports_csv(reports));
  ctx.write("laws.txt", table);
  ctx.out() << "geometry " << e.id << "\n" << table;
  return any_failed(reports);
}

int cmd_factorize(const Context& ctx) {
  const GeometryCatalogEntry e = ctx.entry();
  FactorizationOptions fo;
  fo.threshold = ctx.tolerance(fo.threshold);
  const std::vector<FactorizationVerdict> verdicts = factorization_suite(e, ctx.points(10), ctx.seed(), fo);
  const std::string csv = verdicts_csv(verdicts);
  ctx.write("factorization.csv", csv);
  ctx.out() << csv;
  for (const FactorizationVerdict& v : verdicts)
    if (!v.factorizable) return kExitFail;
  return kExitPass;
}

int cmd_roundtrip(const Context& ctx) {
  const GeometryCatalogEntry e = ctx.entry();
  std::vector<LawReport> reports{transport_roundtrip(e, ctx.samples(200), ctx.seed(), ctx.tolerance(1e-9))};
  if (e.geometry) reports.push_back(connection_roundtrip(e, ctx.points(20), ctx.seed(), ctx.tolerance(1e-5)));
  const std::string table = law_reports_table(reports);
  ctx.write("roundtrip.csv", law_reports_csv(reports));
  ctx.write("roundtrip.txt", table);
  ctx.out() << "geometry " << e.id << "\n" << table;
  return any_failed(reports);
}

std::string full_precision(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_holonomy(const Context& ctx) {
  const GeometryCatalogEntry e = ctx.entry();
  std::string loop_text = ctx.config().loop;
  if (loop_text.empty() && !ctx.config().paths.empty()) loop_text = ctx.config().paths.front();
  if (loop_text.empty()) throw Error(ErrorCode::ConfigParse, "holonomy needs --loop");
  const PathSpec base = parse_path_spec(loop_text);
  const std::string key = primary_parameter(base.family);

  std::vector<double> values;
  if (!ctx.config().sweep.empty()) {
    const Vec sw = parse_vector(ctx.config().sweep);
    if (sw.size() != 3 || sw(2) < 1 || sw(2) != std::floor(sw(2)))
      throw Error(ErrorCode::ConfigParse, "--sweep must be lo,hi,count");
    const int count = static_cast<int>(sw(2));
    for (int k = 0; k < count; ++k) values.push_back(count == 1 ? sw(0) : sw(0) + (sw(1) - sw(0)) * k / (count - 1));
  }

  std::vector<HolonomyRow> rows;
  if (values.empty()) {
    const auto it = base.params.find(key);
    double param = 0.0;
    if (it != base.params.end()) {
      const Vec v = parse_vector(it->second);
      if (v.size() == 1) param = v(0);
    }
    rows.push_back({param, holonomy(e.transport, build_path(base))});
  } else {
    for (double v : values) {
      PathSpec spec = base;
      spec.params[key] = full_precision(v);
      rows.push_back({v, holonomy(e.transport, build_path(spec))});
    }
  }
  const std::string csv = holonomy_csv(rows);
  ctx.write("holonomy.csv", csv);
  ctx.out() << csv;
  return kExitPass;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Context ctx(config, out);
    if (config.command == "list-geometries") return cmd_list_geometries(ctx);
    if (config.command == "transport") return cmd_transport(ctx);
    if (config.command == "check-laws") return cmd_check_laws(ctx);
    if (config.command == "factorize") return cmd_factorize(ctx);
    if (config.command == "roundtrip") return cmd_roundtrip(ctx);
    if (config.command == "holonomy") return cmd_holonomy(ctx);
    err << "error: unknown command '" << config.command << "'\n";
    return kExitConfig;
  } catch (const NotFactorizableError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e.code()) ? kExitConfig : kExitFail;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transports along paths: law checks, factorization, round trips and holonomy", "pathtrans"};
  RunConfig cfg;
  double s = 0.0, t = 0.0, tolerance = 0.0;
  std::size_t samples = 0, points = 0;
  // Config files split unquoted comma lists into several values.
  std::vector<std::string> sweep_parts, u_parts;

  app.set_config("--config", "", "key=value configuration file; command-line values take precedence");
  app.add_option("command", cfg.command, "Command to run")->check(CLI::IsMember(commands()));
  app.add_option("--geometry", cfg.geometry, "Catalog geometry id (flat, sphere, evolution, nonlinear)");
  app.add_option("--geometry-file", cfg.geometry_file, "Geometry description file");
  app.add_option("--path", cfg.paths, "Path specification, e.g. 'segment:0.5,0:1,1'");
  app.add_option("--loop", cfg.loop, "Loop specification for holonomy, e.g. 'latitude:pi/3'");
  app.add_option("--sweep", sweep_parts, "Vary the loop's first parameter: lo,hi,count")->expected(1, 3);
  auto* s_opt = app.add_option("--s", s, "Start parameter (default: path start)");
  auto* t_opt = app.add_option("--t", t, "End parameter (default: path end)");
  app.add_option("--u", u_parts, "Fibre vector components, comma separated")->expected(1, 64);
  app.add_option("--step", cfg.step, "Largest RK4 step (default |t - s| / 1000)");
  app.add_option("--seed", cfg.seed, "Seed for random fixtures");
  auto* tol_opt = app.add_option("--tolerance", tolerance, "Tolerance override for every emitted check");
  auto* samples_opt = app.add_option("--samples", samples, "Number of random samples");
  auto* points_opt = app.add_option("--points", points, "Number of random chart points");
  app.add_option("--output-dir", cfg.output_dir, "Directory for report files")->envname(kOutputDirEnv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (cfg.command.empty()) {
    err << "error: no command given\n" << app.help();
    return kExitConfig;
  }
  const auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (const std::string& p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
  };
  cfg.sweep = join(sweep_parts);
  cfg.u = join(u_parts);
  if (s_opt->count()) cfg.s = s;
  if (t_opt->count()) cfg.t = t;
  if (tol_opt->count()) cfg.tolerance = tolerance;
  if (samples_opt->count()) cfg.samples = samples;
  if (points_opt->count()) cfg.points = points;
  if (cfg.step < 0.0 || (app.count("--step") && cfg.step == 0.0)) {
    err << "error: --step must be positive\n";
    return kExitConfig;
  }
  return run(cfg, out, err);
}

}  // namespace pathtrans
