#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pathtrans {

inline constexpr const char* kOutputDirEnv = "PATHTRANS_OUTPUT_DIR";

struct RunConfig {
  std::string command;  // transport, check-laws, factorize, roundtrip, holonomy, list-geometries
  std::string geometry;
  std::string geometry_file;
  std::vector<std::string> paths;
  std::string loop;
  std::string sweep;  // "lo,hi,count"
  std::optional<double> s;
  std::optional<double> t;
  std::string u;
  double step = 0.0;  // 0: |t - s| / 1000
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> points;
  std::string output_dir;  // empty: $PATHTRANS_OUTPUT_DIR, then "."
};

/// Exit status 0 when every emitted check passes, 1 when one fails, 2 on a
/// configuration error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line (and an optional --config key=value file whose
/// values the command line overrides), then runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pathtrans
