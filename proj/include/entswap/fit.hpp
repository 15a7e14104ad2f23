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

#include <span>
#include <vector>

namespace entswap {

struct EnvelopePoint {
  double x;
  double y;
};

/// Minimum of y in each of `bins` equal-width bins of x over [0, 1]. Empty
/// bins are dropped; points are returned at bin centres.
std::vector<EnvelopePoint> lower_envelope(std::span<const double> x, std::span<const double> y,
                                          int bins);

/// Least-squares y = slope * x + intercept. Returns {slope, intercept}.
std::vector<double> fit_line(std::span<const EnvelopePoint> points);

/// Least-squares y = a + b exp(c x), c scanned over [c_min, c_max] with a, b
/// solved linearly at each c. Returns {a, b, c}.
std::vector<double> fit_exponential(std::span<const EnvelopePoint> points, double c_min = 0.05,
                                    double c_max = 5.0, double c_step = 1e-3);

}  // namespace entswap
