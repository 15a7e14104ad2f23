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

/// \file
/// File formats.
///
/// Matrix JSON:  {"basis":"HH,HV,VH,VV","matrix":[[[re,im] x4] x4]}
/// Records CSV:  sample,outcome,c_a,c_b,c_f,prob,rank_a,rank_b,rank_f
///               (reals with 17 significant digits)
/// Summary JSON: {samples, violations_upper, violations_lower,
///               max_upper_excess, max_lower_deficit, runtime_ms, seed, ...}

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "entswap/experiments.hpp"
#include "entswap/qstate.hpp"

namespace entswap {

inline constexpr const char* kBasisTag = "HH,HV,VH,VV";
inline constexpr const char* kCsvHeader = "sample,outcome,c_a,c_b,c_f,prob,rank_a,rank_b,rank_f";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json matrix_to_json(const Matrix4c<double>& m);

/// Reads the matrix JSON format. Throws ParseError on malformed input; the
/// result is not validated as a density matrix.
Matrix4c<double> matrix_from_json(const nlohmann::json& j);

/// Parses text, then validates. Throws ParseError or ValidationError.
DensityMatrix<double> parse_density_matrix(const std::string& text);
DensityMatrix<double> load_density_matrix(const std::string& path);

/// printf "%.17g".
std::string format_real(double value);

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
nlohmann::json records_to_json(const std::vector<ExperimentRecord>& records);
nlohmann::json report_to_json(const BoundReport& report);

}  // namespace entswap
