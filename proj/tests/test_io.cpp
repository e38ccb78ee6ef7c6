#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "pdm/io.hpp"

using namespace pdm;
using io::Json;

TEST(FormatDouble, RoundTripsAllBits) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(io::format_double(v)), v);
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
}

TEST(FormatDouble, NonFinite) {
  EXPECT_EQ(io::format_double(std::numeric_limits<double>::quiet_NaN()), "NaN");
  EXPECT_EQ(io::format_double(-std::numeric_limits<double>::infinity()), "-Infinity");
}

TEST(JsonWriter, KeepsKeyOrderAndInlinesScalarArrays) {
  Json j;
  j["zeta"] = 1.5;
  j["alpha"] = std::vector<double>{1, 0.5};
  j["nested"] = Json{{"b", true}, {"a", "x"}};
  EXPECT_EQ(io::to_string(j),
            "{\n  \"zeta\": 1.5,\n  \"alpha\": [1, 0.5],\n  \"nested\": {\n    \"b\": true,\n    \"a\": \"x\"\n  }\n}\n");
}

TEST(JsonWriter, NonFiniteBecomesString) {
  Json j{{"v", std::numeric_limits<double>::infinity()}};
  EXPECT_EQ(io::to_string(j), "{\n  \"v\": \"Infinity\"\n}\n");
}

TEST(Csv, QuotingAndLineEnds) {
  io::CsvTable t({"name", "value"});
  t.row({"plain", "a,b"});
  t.row({"say \"hi\"", "1"});
  EXPECT_EQ(t.str(), "name,value\r\nplain,\"a,b\"\r\n\"say \"\"hi\"\"\",1\r\n");
}

TEST(Hash, Fnv1aKnownVectors) {
  EXPECT_EQ(io::hex64(io::fnv1a("")), "cbf29ce484222325");
  EXPECT_EQ(io::hex64(io::fnv1a("a")), "af63dc4c8601ec8c");
}

TEST(Serialize, Spectrum) {
  SpectrumResult s;
  s.eigenvalues = {1, 3};
  s.residuals = {1e-12, 2e-12};
  s.grid = {5, 0.5, -1, 1};
  s.solver = "sturm";
  const auto j = io::to_json(s);
  EXPECT_EQ(j["solver"], "sturm");
  EXPECT_EQ(j["grid"]["n_points"], 5);
  EXPECT_EQ(j["eigenvalues"].size(), 2u);
  EXPECT_EQ(j.begin().key(), "solver");
}

TEST(Serialize, TrajectoryJsonAndCsv) {
  TrajectoryResult r;
  r.samples = {{{0.0}, {1.0}, 0.0}, {{0.5}, {1.0}, 0.5}};
  r.energies = {1, 1};
  r.dt = 0.5;
  const auto j = io::to_json(r);
  EXPECT_EQ(j["scheme"], "rk4");
  EXPECT_FALSE(j.contains("diagnostic"));
  EXPECT_EQ(j["samples"][1]["x"][0], 0.5);
  EXPECT_EQ(io::trajectory_csv(r), "t,x1,P1,E\r\n0,0,1,1\r\n0.5,0.5,1,1\r\n");
}

TEST(Serialize, OperatorCooSkipsZeros) {
  BandedMatrix<double> a(3, 1, 1);
  a.at(0, 0) = 2;
  a.at(1, 0) = -1;
  a.at(2, 2) = 0.5;
  EXPECT_EQ(io::operator_coo_csv(a), "i,j,re,im\r\n0,0,2,0\r\n1,0,-1,0\r\n2,2,0.5,0\r\n");
}
