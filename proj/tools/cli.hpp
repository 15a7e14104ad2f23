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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entswap/qstate.hpp"

namespace entswap::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  BellLabel outcome = BellLabel::PsiMinus;
  double eta = 0.5;
  std::string ensemble = "bures";
  double rank_tol = 1e-10;
  std::string output_path;
  Format format = Format::Csv;
  unsigned workers = 1;
  bool strict = false;
};

/// Seed default: ENTSWAP_SEED when set to an unsigned integer, else 42.
std::uint64_t default_seed();

/// Runs the command line (args excludes the program name). Returns the exit
/// code; all output goes to out/err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entswap::cli
