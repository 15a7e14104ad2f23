// Copyright 2026 The entswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entswap/io.hpp"

#include <sstream>

#include "gtest/gtest.h"

#include "entswap/ensembles.hpp"

using namespace entswap;

TEST(matrix_json, round_trip_is_exact) {
  RngStream rng(1, 0);
  const auto rho = random_bures<double>(rng);
  const std::string text = matrix_to_json(rho.matrix()).dump();
  const auto back = parse_density_matrix(text);
  EXPECT_EQ(back.matrix(), rho.matrix());
}

TEST(matrix_json, rejects_malformed_input) {
  EXPECT_THROW(parse_density_matrix("{"), ParseError);
  EXPECT_THROW(parse_density_matrix("[]"), ParseError);
  EXPECT_THROW(parse_density_matrix(R"({"basis":"HH,VV","matrix":[]})"), ParseError);
  EXPECT_THROW(parse_density_matrix(R"({"basis":"HH,HV,VH,VV","matrix":[[1,0],[0,0]]})"),
               ParseError);
  EXPECT_THROW(
      parse_density_matrix(
          R"({"basis":"HH,HV,VH,VV","matrix":[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],"x"]]})"),
      ParseError);
}

TEST(matrix_json, validation_names_invariant) {
  Matrix4c<double> m = Matrix4c<double>::Zero();
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  try {
    parse_density_matrix(matrix_to_json(m).dump());
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.invariant(), "eigenvalue");
  }
}

TEST(load_density_matrix, missing_file) {
  EXPECT_THROW(load_density_matrix("/nonexistent/entswap/state.json"), ParseError);
}

TEST(format_real, round_trips) {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, -7.0}) {
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
  EXPECT_EQ(format_real(0.25), "0.25");
}

TEST(write_records_csv, header_and_row) {
  ExperimentRecord r;
  r.sample_index = 3;
  r.outcome = BellLabel::PhiPlus;
  r.c_a = 0.5;
  r.c_b = 0.25;
  r.c_f = 0.125;
  r.probability = 0.25;
  r.rank_a = 4;
  r.rank_b = 2;
  r.rank_f = 4;
  std::ostringstream out;
  write_records_csv(out, {r});
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n3,phi+,0.5,0.25,0.125,0.25,4,2,4\n");
  const auto j = records_to_json({r});
  EXPECT_EQ(j[0]["outcome"], "phi+");
  EXPECT_EQ(j[0]["rank_b"], 2);
}

TEST(report_to_json, fields) {
  BoundReport rep;
  rep.experiment = "belldiag";
  rep.samples = 10;
  rep.violations_upper = 1;
  rep.lower_bound_empirical = true;
  rep.fit_params = std::vector<double>{1.25, -0.25};
  rep.metrics["x"] = 2.0;
  rep.seed = 9;
  const auto j = report_to_json(rep);
  EXPECT_EQ(j["experiment"], "belldiag");
  EXPECT_EQ(j["violations_upper"], 1);
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["fit_params"][0], 1.25);
  EXPECT_EQ(j["metrics"]["x"], 2.0);
  EXPECT_TRUE(j["lower_bound_empirical"].get<bool>());
}
