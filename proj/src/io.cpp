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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace entswap {

using nlohmann::json;

json matrix_to_json(const Matrix4c<double>& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"basis", kBasisTag}, {"matrix", std::move(rows)}};
}

Matrix4c<double> matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object with \"basis\" and \"matrix\"");
  if (!j.contains("basis") || !j["basis"].is_string() ||
      j["basis"].get<std::string>() != kBasisTag) {
    throw ParseError(std::string("\"basis\" must be \"") + kBasisTag + "\"");
  }
  if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].size() != 4) {
    throw ParseError("\"matrix\" must be an array of 4 rows");
  }
  Matrix4c<double> m;
  for (int i = 0; i < 4; ++i) {
    const json& row = j["matrix"][i];
    if (!row.is_array() || row.size() != 4) {
      throw ParseError("row " + std::to_string(i) + " must have 4 entries");
    }
    for (int k = 0; k < 4; ++k) {
      const json& entry = row[k];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(k) +
                         ") must be [re, im]");
      }
      m(i, k) = {entry[0].get<double>(), entry[1].get<double>()};
    }
  }
  return m;
}

DensityMatrix<double> parse_density_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return DensityMatrix<double>(matrix_from_json(j));
}

DensityMatrix<double> load_density_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_density_matrix(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.sample_index << ',' << to_string(r.outcome) << ',' << format_real(r.c_a) << ','
        << format_real(r.c_b) << ',' << format_real(r.c_f) << ',' << format_real(r.probability)
        << ',' << r.rank_a << ',' << r.rank_b << ',' << r.rank_f << '\n';
  }
}

json records_to_json(const std::vector<ExperimentRecord>& records) {
  json out = json::array();
  for (const auto& r : records) {
    out.push_back({{"sample", r.sample_index},
                   {"outcome", to_string(r.outcome)},
                   {"c_a", r.c_a},
                   {"c_b", r.c_b},
                   {"c_f", r.c_f},
                   {"prob", r.probability},
                   {"rank_a", r.rank_a},
                   {"rank_b", r.rank_b},
                   {"rank_f", r.rank_f}});
  }
  return out;
}

json report_to_json(const BoundReport& report) {
  json j = {{"experiment", report.experiment},
            {"samples", report.samples},
            {"violations_upper", report.violations_upper},
            {"violations_lower", report.violations_lower},
            {"max_upper_excess", report.max_upper_excess},
            {"max_lower_deficit", report.max_lower_deficit},
            {"runtime_ms", report.runtime_ms},
            {"seed", report.seed},
            {"skipped_outcomes", report.skipped_outcomes},
            {"lower_bound_empirical", report.lower_bound_empirical}};
  if (report.fit_params) j["fit_params"] = *report.fit_params;
  if (!report.metrics.empty()) {
    json metrics = json::object();
    for (const auto& [key, value] : report.metrics) {
      if (std::isfinite(value)) metrics[key] = value;
    }
    j["metrics"] = std::move(metrics);
  }
  return j;
}

}  // namespace entswap
