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
/// Entanglement swapping of two arbitrary two-qubit states.
///
/// rho_a lives on modes 1,2 and rho_b on modes 3,4. A Bell state measurement
/// on modes 2,3 leaves modes 1,4 in the returned state. Outcome probability
/// is half the normalization of the unnormalized output.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "entswap/qstate.hpp"

namespace entswap {

/// Normalizations at or below this are treated as an impossible outcome.
inline constexpr double kImpossibleOutcomeThreshold = 1e-12;

class ImpossibleOutcome : public std::runtime_error {
 public:
  ImpossibleOutcome(BellLabel outcome, double normalization)
      : std::runtime_error("Bell measurement outcome " + std::string(to_string(outcome)) +
                           " has zero probability (normalization " +
                           std::to_string(normalization) + ")"),
        outcome_(outcome) {}
  BellLabel outcome() const noexcept { return outcome_; }

 private:
  BellLabel outcome_;
};

template <typename Real = double>
struct SwapResult {
  DensityMatrix<Real> state;  // modes 1,4
  Real probability;
  BellLabel outcome;
};

/// One entry of swap_all_outcomes; state is empty when the outcome cannot occur.
template <typename Real = double>
struct OutcomeBranch {
  BellLabel outcome;
  Real probability;
  std::optional<DensityMatrix<Real>> state;
};

namespace detail {

// Row/column index I of the output splits into (mode-1 bit r, mode-4 bit s).
// Each output entry is a four-term bilinear form in the input entries; the
// pair tables give the zero-based input indices entering it.
//   psi: a rows (2,1) for r = 0, (4,3) for r = 1; b rows (1,3) / (2,4).
//   phi: a rows (1,2) for r = 0, (3,4) for r = 1; b rows as psi.
inline constexpr int kPsiA[2][2] = {{1, 0}, {3, 2}};
inline constexpr int kPhiA[2][2] = {{0, 1}, {2, 3}};
inline constexpr int kB[2][2] = {{0, 2}, {1, 3}};

template <typename Real>
Matrix4c<Real> unnormalized_swap(const Matrix4c<Real>& a, const Matrix4c<Real>& b,
                                 BellLabel outcome) {
  const auto& pa = is_psi(outcome) ? kPsiA : kPhiA;
  const Real sign = is_plus(outcome) ? Real(1) : Real(-1);
  Matrix4c<Real> out;
  for (int row = 0; row < 4; ++row) {
    const int* ar = pa[row >> 1];
    const int* br = kB[row & 1];
    for (int col = 0; col < 4; ++col) {
      const int* ac = pa[col >> 1];
      const int* bc = kB[col & 1];
      out(row, col) = a(ar[0], ac[0]) * b(br[0], bc[0]) +
                      sign * a(ar[0], ac[1]) * b(br[0], bc[1]) +
                      sign * a(ar[1], ac[0]) * b(br[1], bc[0]) +
                      a(ar[1], ac[1]) * b(br[1], bc[1]);
    }
  }
  return out;
}

}  // namespace detail

/// N+ (psi) or M+ (phi) normalization written out term by term; equals the
/// trace of the unnormalized output.
template <typename Real>
Real swap_normalization(const Matrix4c<Real>& a, const Matrix4c<Real>& b, BellLabel outcome) {
  // One-based accessors keep the terms readable.
  auto A = [&](int i, int j) { return a(i - 1, j - 1); };
  auto B = [&](int i, int j) { return b(i - 1, j - 1); };
  const Real s = is_plus(outcome) ? Real(1) : Real(-1);
  Complex<Real> n;
  if (is_psi(outcome)) {
    n = A(2, 2) * B(1, 1) + A(4, 4) * B(1, 1) + s * A(2, 1) * B(1, 3) + s * A(4, 3) * B(1, 3) +
        A(2, 2) * B(2, 2) + A(4, 4) * B(2, 2) + s * A(2, 1) * B(2, 4) + s * A(4, 3) * B(2, 4) +
        s * A(1, 2) * B(3, 1) + s * A(3, 4) * B(3, 1) + A(1, 1) * B(3, 3) + A(3, 3) * B(3, 3) +
        s * A(1, 2) * B(4, 2) + s * A(3, 4) * B(4, 2) + A(1, 1) * B(4, 4) + A(3, 3) * B(4, 4);
  } else {
    n = A(1, 1) * B(1, 1) + A(3, 3) * B(1, 1) + s * A(1, 2) * B(1, 3) + s * A(3, 4) * B(1, 3) +
        A(1, 1) * B(2, 2) + A(3, 3) * B(2, 2) + s * A(1, 2) * B(2, 4) + s * A(3, 4) * B(2, 4) +
        s * A(2, 1) * B(3, 1) + s * A(4, 3) * B(3, 1) + A(2, 2) * B(3, 3) + A(4, 4) * B(3, 3) +
        s * A(2, 1) * B(4, 2) + s * A(4, 3) * B(4, 2) + A(2, 2) * B(4, 4) + A(4, 4) * B(4, 4);
  }
  return n.real();
}

/// Swaps rho_a (modes 1,2) with rho_b (modes 3,4) for one Bell outcome on
/// modes 2,3. Throws ImpossibleOutcome if the outcome has (numerically) zero
/// probability and ValidationError if the output fails validation.
template <typename Real>
SwapResult<Real> swap_general(const DensityMatrix<Real>& rho_a, const DensityMatrix<Real>& rho_b,
                              BellLabel outcome) {
  const Real norm = swap_normalization(rho_a.matrix(), rho_b.matrix(), outcome);
  if (!(norm > Real(kImpossibleOutcomeThreshold))) throw ImpossibleOutcome(outcome, norm);
  Matrix4c<Real> out = detail::unnormalized_swap(rho_a.matrix(), rho_b.matrix(), outcome) / norm;
  return {DensityMatrix<Real>(out), norm / Real(2), outcome};
}

/// All four outcomes. Impossible outcomes carry their (tiny) probability and
/// no state.
template <typename Real>
std::array<OutcomeBranch<Real>, 4> swap_all_outcomes(const DensityMatrix<Real>& rho_a,
                                                     const DensityMatrix<Real>& rho_b) {
  std::array<OutcomeBranch<Real>, 4> out{};
  for (std::size_t k = 0; k < kAllBellLabels.size(); ++k) {
    const BellLabel label = kAllBellLabels[k];
    const Real norm = swap_normalization(rho_a.matrix(), rho_b.matrix(), label);
    out[k].outcome = label;
    out[k].probability = std::max(norm, Real(0)) / Real(2);
    if (norm > Real(kImpossibleOutcomeThreshold)) {
      Matrix4c<Real> m = detail::unnormalized_swap(rho_a.matrix(), rho_b.matrix(), label) / norm;
      out[k].state.emplace(m);
    }
  }
  return out;
}

/// X-state closed form: the output of swapping two X-states is again an
/// X-state. Returns the output parameters and the normalization.
template <typename Real>
std::pair<XState<Real>, Real> swap_x_params(const XState<Real>& c, const XState<Real>& d,
                                            BellLabel outcome) {
  const Real s = is_plus(outcome) ? Real(1) : Real(-1);
  const Complex<Real> d41 = std::conj(d.c14), d32 = std::conj(d.c23);
  XState<Real> x;
  Real norm;
  if (is_psi(outcome)) {
    norm = c.c22 * d.c11 + c.c44 * d.c11 + c.c22 * d.c22 + c.c44 * d.c22 + c.c11 * d.c33 +
           c.c33 * d.c33 + c.c11 * d.c44 + c.c33 * d.c44;
    x.c11 = c.c22 * d.c11 + c.c11 * d.c33;
    x.c22 = c.c22 * d.c22 + c.c11 * d.c44;
    x.c33 = c.c44 * d.c11 + c.c33 * d.c33;
    x.c44 = c.c44 * d.c22 + c.c33 * d.c44;
    x.c14 = s * (c.c23 * d.c14 + c.c14 * d32);
    x.c23 = s * (c.c23 * d.c23 + c.c14 * d41);
  } else {
    norm = c.c11 * d.c11 + c.c33 * d.c11 + c.c11 * d.c22 + c.c33 * d.c22 + c.c22 * d.c33 +
           c.c44 * d.c33 + c.c22 * d.c44 + c.c44 * d.c44;
    x.c11 = c.c11 * d.c11 + c.c22 * d.c33;
    x.c22 = c.c11 * d.c22 + c.c22 * d.c44;
    x.c33 = c.c33 * d.c11 + c.c44 * d.c33;
    x.c44 = c.c33 * d.c22 + c.c44 * d.c44;
    x.c14 = s * (c.c14 * d.c14 + c.c23 * d32);
    x.c23 = s * (c.c14 * d.c23 + c.c23 * d41);
  }
  if (norm > Real(0)) {
    x.c11 /= norm;
    x.c22 /= norm;
    x.c33 /= norm;
    x.c44 /= norm;
    x.c14 /= norm;
    x.c23 /= norm;
  }
  return {x, norm};
}

/// Fast path for X-state inputs; same contract as swap_general.
template <typename Real>
SwapResult<Real> swap_x(const XState<Real>& chi_a, const XState<Real>& chi_b, BellLabel outcome) {
  chi_a.validate();
  chi_b.validate();
  auto [x, norm] = swap_x_params(chi_a, chi_b, outcome);
  if (!(norm > Real(kImpossibleOutcomeThreshold))) throw ImpossibleOutcome(outcome, norm);
  return {DensityMatrix<Real>(x.matrix()), norm / Real(2), outcome};
}

/// Projector onto a Bell state of modes 2,3 in the four-qubit space.
template <typename Real>
Matrix16c<Real> bell_projector_23(BellLabel outcome) {
  const Vector4c<Real>& v = bell_vector<Real>(outcome).amplitudes();
  Matrix4c<Real> pi23 = v * v.adjoint();
  Eigen::Matrix<Complex<Real>, 2, 2> id2 = Eigen::Matrix<Complex<Real>, 2, 2>::Identity();
  return tensor(tensor(id2, pi23), id2);
}

/// Literal project-and-trace route through the 16x16 four-qubit state.
/// Independent of the closed-form entries; used as a cross-check.
template <typename Real>
SwapResult<Real> swap_oracle_16(const DensityMatrix<Real>& rho_a, const DensityMatrix<Real>& rho_b,
                                BellLabel outcome) {
  Matrix16c<Real> rho1234 = tensor(rho_a.matrix(), rho_b.matrix());
  Matrix16c<Real> pi = bell_projector_23<Real>(outcome);
  Matrix16c<Real> projected = pi * rho1234 * pi;
  const Real probability = projected.trace().real();
  // Probability is half the normalization.
  if (!(Real(2) * probability > Real(kImpossibleOutcomeThreshold))) {
    throw ImpossibleOutcome(outcome, Real(2) * probability);
  }
  Matrix4c<Real> out = partial_trace_23(projected) / probability;
  return {DensityMatrix<Real>(out), probability, outcome};
}

}  // namespace entswap
