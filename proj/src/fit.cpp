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

#include "entswap/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace entswap {

std::vector<EnvelopePoint> lower_envelope(std::span<const double> x, std::span<const double> y,
                                          int bins) {
  if (x.size() != y.size()) throw std::invalid_argument("lower_envelope: size mismatch");
  if (bins < 1) throw std::invalid_argument("lower_envelope: bins must be positive");
  std::vector<double> lo(bins, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int b = static_cast<int>(std::floor(x[i] * bins));
    b = std::clamp(b, 0, bins - 1);
    lo[b] = std::min(lo[b], y[i]);
  }
  std::vector<EnvelopePoint> out;
  for (int b = 0; b < bins; ++b) {
    if (std::isfinite(lo[b])) out.push_back({(b + 0.5) / bins, lo[b]});
  }
  return out;
}

std::vector<double> fit_line(std::span<const EnvelopePoint> points) {
  if (points.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
  Eigen::MatrixXd a(points.size(), 2);
  Eigen::VectorXd rhs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    a(i, 0) = points[i].x;
    a(i, 1) = 1.0;
    rhs(i) = points[i].y;
  }
  Eigen::Vector2d sol = a.colPivHouseholderQr().solve(rhs);
  return {sol(0), sol(1)};
}

std::vector<double> fit_exponential(std::span<const EnvelopePoint> points, double c_min,
                                    double c_max, double c_step) {
  if (points.size() < 3) throw std::invalid_argument("fit_exponential: need at least three points");
  Eigen::VectorXd rhs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) rhs(i) = points[i].y;

  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<double> best{0.0, 0.0, 0.0};
  Eigen::MatrixXd a(points.size(), 2);
  for (double c = c_min; c <= c_max + 0.5 * c_step; c += c_step) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = std::exp(c * points[i].x);
    }
    Eigen::Vector2d sol = a.colPivHouseholderQr().solve(rhs);
    const double residual = (a * sol - rhs).squaredNorm();
    if (residual < best_residual) {
      best_residual = residual;
      best = {sol(0), sol(1), c};
    }
  }
  return best;
}

}  // namespace entswap
