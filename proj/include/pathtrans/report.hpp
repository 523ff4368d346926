#pragma once

#include "pathtrans/holonomy.hpp"
#include "pathtrans/linear_engine.hpp"
#include "pathtrans/transport.hpp"

#include <span>
#include <string>
#include <vector>

namespace pathtrans {

/// %.9g; the only number format used in reports.
std::string format_number(double x);

/// Header `law_id,samples,max_residual,tolerance,passed,seed`.
std::string law_reports_csv(std::span<const LawReport> reports);
std::string law_reports_table(std::span<const LawReport> reports);

/// Rows (s, t, a, b, value), 0-based indices.
std::string matrices_csv(std::span<const TransportMatrix> matrices);
std::string coefficients_csv(std::span<const TransportCoefficients> coefficients);

/// Header `point,residual,threshold,factorizable`; point coordinates are
/// separated by ';'.
std::string verdicts_csv(std::span<const FactorizationVerdict> verdicts);

struct HolonomyRow {
  double loop_param = 0.0;
  HolonomyReport report;
};
/// Header `loop_param,angle,distance_to_identity`; empty angle when undefined.
std::string holonomy_csv(std::span<const HolonomyRow> rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pathtrans
