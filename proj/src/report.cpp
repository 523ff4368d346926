#include "pathtrans/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pathtrans {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string law_reports_csv(std::span<const LawReport> reports) {
  std::ostringstream out;
  out << "law_id,samples,max_residual,tolerance,passed,seed\n";
  for (const LawReport& r : reports)
    out << r.law_id << ',' << r.samples << ',' << format_number(r.max_residual) << ',' << format_number(r.tolerance)
        << ',' << (r.passed ? "true" : "false") << ',' << r.seed << '\n';
  return out.str();
}

std::string law_reports_table(std::span<const LawReport> reports) {
  const std::vector<std::string> head{"law", "samples", "max_residual", "tolerance", "result", "seed"};
  std::vector<std::vector<std::string>> rows{head};
  for (const LawReport& r : reports)
    rows.push_back({r.law_id, std::to_string(r.samples), format_number(r.max_residual), format_number(r.tolerance),
                    r.passed ? "PASS" : "FAIL", std::to_string(r.seed)});
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string matrices_csv(std::span<const TransportMatrix> matrices) {
  std::ostringstream out;
  out << "s,t,a,b,value\n";
  for (const TransportMatrix& m : matrices)
    for (Eigen::Index a = 0; a < m.value.rows(); ++a)
      for (Eigen::Index b = 0; b < m.value.cols(); ++b)
        out << format_number(m.s) << ',' << format_number(m.t) << ',' << a << ',' << b << ','
            << format_number(m.value(a, b)) << '\n';
  return out.str();
}

std::string coefficients_csv(std::span<const TransportCoefficients> coefficients) {
  std::ostringstream out;
  out << "s,a,b,value\n";
  for (const TransportCoefficients& c : coefficients)
    for (Eigen::Index a = 0; a < c.value.rows(); ++a)
      for (Eigen::Index b = 0; b < c.value.cols(); ++b)
        out << format_number(c.s) << ',' << a << ',' << b << ',' << format_number(c.value(a, b)) << '\n';
  return out.str();
}

std::string verdicts_csv(std::span<const FactorizationVerdict> verdicts) {
  std::ostringstream out;
  out << "point,residual,threshold,factorizable\n";
  for (const FactorizationVerdict& v : verdicts) {
    for (Eigen::Index i = 0; i < v.point.size(); ++i) out << (i ? ";" : "") << format_number(v.point(i));
    out << ',' << format_number(v.residual) << ',' << format_number(v.threshold) << ','
        << (v.factorizable ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string holonomy_csv(std::span<const HolonomyRow> rows) {
  std::ostringstream out;
  out << "loop_param,angle,distance_to_identity\n";
  for (const HolonomyRow& r : rows)
    out << format_number(r.loop_param) << ',' << (r.report.angle ? format_number(*r.report.angle) : "") << ','
        << format_number(r.report.distance_to_identity) << '\n';
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileNotFound, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::FileNotFound, "write to '" + path + "' failed");
}

}  // namespace pathtrans
