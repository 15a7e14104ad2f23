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
/// Linear-optics Bell measurement: modes 2 and 3 enter the two input ports
/// a, b of a beamsplitter and a coincidence (one photon per output port)
/// heralds the measurement.
///
/// Two-photon mode space (dimension 10), fixed order:
///   0 aH aH   1 aV aV   2 aH aV   3 bH bH   4 bV bV   5 bH bV   (bunched)
///   6 aH bH   7 aH bV   8 aV bH   9 aV bV                       (coincidence)
/// Doubly occupied states carry the bosonic 1/sqrt(2), e.g.
/// |aH aH> = (a_H^dagger)^2 / sqrt(2) |0>.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "entswap/qstate.hpp"
#include "entswap/swap.hpp"

namespace entswap {

inline constexpr int kModeSpaceDim = 10;
inline constexpr int kBunchedDim = 6;
inline constexpr int kCoincidenceOffset = 6;

template <typename Real>
using ModeOperator = Eigen::Matrix<Complex<Real>, kModeSpaceDim, kModeSpaceDim>;

template <typename Real>
using Isometry = Eigen::Matrix<Complex<Real>, kModeSpaceDim, 4>;

class NoCoincidence : public std::runtime_error {
 public:
  explicit NoCoincidence(double probability)
      : std::runtime_error("coincidence probability " + std::to_string(probability) +
                           " is zero; no heralded output") {}
};

namespace detail {

// Single-photon modes: 0 aH, 1 aV, 2 bH, 3 bV.
inline constexpr std::array<std::pair<int, int>, kModeSpaceDim> kModePairs = {
    std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}, std::pair{2, 2}, std::pair{3, 3},
    std::pair{2, 3}, std::pair{0, 2}, std::pair{0, 3}, std::pair{1, 2}, std::pair{1, 3}};

inline int mode_index(int p, int q) {
  if (p > q) std::swap(p, q);
  for (int k = 0; k < kModeSpaceDim; ++k) {
    if (kModePairs[k] == std::pair{p, q}) return k;
  }
  return -1;
}

}  // namespace detail

/// Beamsplitter of reflectivity eta on the two-photon space:
///   a_i^dagger -> i sqrt(eta) a_i^dagger + sqrt(1 - eta) b_i^dagger
///   b_j^dagger -> sqrt(1 - eta) a_j^dagger + i sqrt(eta) b_j^dagger
/// Polarization is untouched.
template <typename Real = double>
ModeOperator<Real> beamsplitter_unitary(Real eta) {
  if (!(eta > Real(0) && eta < Real(1))) {
    throw std::invalid_argument("beamsplitter reflectivity must lie in (0,1), got " +
                                std::to_string(eta));
  }
  using C = Complex<Real>;
  const C r{Real(0), std::sqrt(eta)};
  const C t{std::sqrt(Real(1) - eta), Real(0)};
  // one(p, m): amplitude of single-photon mode p in the image of mode m.
  Eigen::Matrix<C, 4, 4> one = Eigen::Matrix<C, 4, 4>::Zero();
  for (int pol = 0; pol < 2; ++pol) {
    const int a = pol, b = 2 + pol;
    one(a, a) = r;
    one(b, a) = t;
    one(a, b) = t;
    one(b, b) = r;
  }
  const Real root2 = std::sqrt(Real(2));
  ModeOperator<Real> u = ModeOperator<Real>::Zero();
  for (int col = 0; col < kModeSpaceDim; ++col) {
    auto [m, n] = detail::kModePairs[col];
    const Real in_norm = (m == n) ? Real(1) / root2 : Real(1);
    // c_m^dagger c_n^dagger -> sum_pq one(p,m) one(q,n) c_p^dagger c_q^dagger
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        const C amp = one(p, m) * one(q, n);
        if (amp == C(0)) continue;
        const Real out_norm = (p == q) ? root2 : Real(1);
        u(detail::mode_index(p, q), col) += in_norm * out_norm * amp;
      }
    }
  }
  return u;
}

/// K: H_2 (x) H_3 -> coincidence block. |i>_2 |j>_3 -> a_i^dagger b_j^dagger |0>.
template <typename Real = double>
Isometry<Real> coincidence_isometry() {
  Isometry<Real> k = Isometry<Real>::Zero();
  for (int i = 0; i < 4; ++i) k(kCoincidenceOffset + i, i) = Real(1);
  return k;
}

/// Pi = K K^dagger.
template <typename Real = double>
ModeOperator<Real> coincidence_projector() {
  const Isometry<Real> k = coincidence_isometry<Real>();
  return k * k.adjoint();
}

/// Precomputed beamsplitter and embedding for one reflectivity. Immutable
/// after construction and shareable between threads.
template <typename Real = double>
class BeamsplitterBsm {
 public:
  explicit BeamsplitterBsm(Real eta = Real(0.5))
      : eta_(eta),
        u_(beamsplitter_unitary(eta)),
        k_(coincidence_isometry<Real>()),
        pi_(coincidence_projector<Real>()) {
    using Big = ComplexMatrix<Real>;
    const Big id14 = Big::Identity(4, 4);
    w_ = tensor(Big(k_), id14);
    u_full_ = tensor(Big(u_), id14);
    pi_full_ = tensor(Big(pi_), id14);
  }

  Real eta() const noexcept { return eta_; }
  const ModeOperator<Real>& unitary() const noexcept { return u_; }
  const Isometry<Real>& isometry() const noexcept { return k_; }
  const ModeOperator<Real>& projector() const noexcept { return pi_; }

  /// Heralded output on modes 1,4. The outcome label is psi- because that is
  /// the Bell state a balanced beamsplitter selects on coincidence.
  SwapResult<Real> swap(const DensityMatrix<Real>& rho_a, const DensityMatrix<Real>& rho_b) const {
    using Big = ComplexMatrix<Real>;
    const Big rho1234 = tensor(rho_a.matrix(), rho_b.matrix());

    // Reorder (1,2,3,4) -> (2,3),(1,4): index 4*(2 q2 + q3) + (2 q1 + q4).
    Big reordered(16, 16);
    auto reorder = [](int idx) {
      const int q1 = (idx >> 3) & 1, q2 = (idx >> 2) & 1, q3 = (idx >> 1) & 1, q4 = idx & 1;
      return 4 * (2 * q2 + q3) + (2 * q1 + q4);
    };
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 16; ++c) reordered(reorder(r), reorder(c)) = rho1234(r, c);
    }

    const Big rho_i = w_ * reordered * w_.adjoint();
    const Big rho_ii = u_full_ * rho_i * u_full_.adjoint();
    const Big heralded = pi_full_ * rho_ii * pi_full_;
    const Real coincidence = heralded.trace().real();
    if (!(coincidence > Real(kImpossibleOutcomeThreshold))) throw NoCoincidence(coincidence);
    const Big rho_iv = w_.adjoint() * (heralded / coincidence) * w_;

    Matrix4c<Real> out = Matrix4c<Real>::Zero();
    for (int i = 0; i < 4; ++i) out += rho_iv.block(4 * i, 4 * i, 4, 4);
    return {DensityMatrix<Real>(out), coincidence, BellLabel::PsiMinus};
  }

 private:
  Real eta_;
  ModeOperator<Real> u_;
  Isometry<Real> k_;
  ModeOperator<Real> pi_;
  ComplexMatrix<Real> w_, u_full_, pi_full_;
};

template <typename Real>
SwapResult<Real> swap_via_beamsplitter(const DensityMatrix<Real>& rho_a,
                                       const DensityMatrix<Real>& rho_b, Real eta = Real(0.5)) {
  return BeamsplitterBsm<Real>(eta).swap(rho_a, rho_b);
}

}  // namespace entswap
