#include "pathtrans/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace pathtrans;

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(std::numbers::pi), "3.14159265");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(1e-13), "1e-13");
  EXPECT_EQ(format_number(-2.5), "-2.5");
}

TEST(LawReports, Csv) {
  const std::vector<LawReport> reports{LawReport::make("groupoid", 50, 1.5e-14, 1e-6, 3),
                                       LawReport::make("reparametrization", 50, 2.0, 1e-6, 3)};
  EXPECT_EQ(law_reports_csv(reports),
            "law_id,samples,max_residual,tolerance,passed,seed\n"
            "groupoid,50,1.5e-14,1e-06,true,3\n"
            "reparametrization,50,2,1e-06,false,3\n");
}

TEST(LawReports, TableAlignsColumns) {
  const std::vector<LawReport> reports{LawReport::make("groupoid", 50, 0.0, 1e-6, 0),
                                       LawReport::make("parallel-product", 7, 2.0, 1e-6, 0)};
  const std::string table = law_reports_table(reports);
  std::istringstream in(table);
  std::string head, row1, row2;
  std::getline(in, head);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(head.rfind("law", 0), 0u);
  EXPECT_EQ(head.find("samples"), row1.find("50"));
  EXPECT_EQ(head.find("result"), row1.find("PASS"));
  EXPECT_EQ(head.find("result"), row2.find("FAIL"));
}

TEST(Matrices, Csv) {
  TransportMatrix m{Mat::Identity(2, 2), "p", 0.0, 0.5, 1e-3, false};
  EXPECT_EQ(matrices_csv({&m, 1}), "s,t,a,b,value\n0,0.5,0,0,1\n0,0.5,0,1,0\n0,0.5,1,0,0\n0,0.5,1,1,1\n");
  TransportCoefficients c{Mat::Constant(1, 1, 0.25), "p", 0.1};
  EXPECT_EQ(coefficients_csv({&c, 1}), "s,a,b,value\n0.1,0,0,0.25\n");
}

TEST(Verdicts, Csv) {
  FactorizationVerdict v;
  v.point = Eigen::Vector2d(1.0, -0.5);
  v.residual = 0.70710678118;
  v.threshold = 1e-4;
  v.factorizable = false;
  EXPECT_EQ(verdicts_csv({&v, 1}), "point,residual,threshold,factorizable\n1;-0.5,0.707106781,0.0001,false\n");
}

TEST(Holonomy, Csv) {
  HolonomyRow a{1.0, {"loop", Mat::Identity(2, 2), std::numbers::pi, 2.0}};
  HolonomyRow b{0.5, {"loop", Mat::Identity(3, 3), std::nullopt, 0.0}};
  const std::vector<HolonomyRow> rows{a, b};
  EXPECT_EQ(holonomy_csv(rows), "loop_param,angle,distance_to_identity\n1,3.14159265,2\n0.5,,0\n");
}

TEST(WriteTextFile, WritesAndFails) {
  const auto file = std::filesystem::temp_directory_path() / "pathtrans_report_test.txt";
  write_text_file(file.string(), "abc\n");
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "abc");
  std::filesystem::remove(file);
  EXPECT_THROW(write_text_file("/nonexistent-dir/x/y.txt", "z"), Error);
}
