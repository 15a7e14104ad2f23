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

#include "entswap/optics.hpp"

#include "gtest/gtest.h"

#include "entswap/ensembles.hpp"

using namespace entswap;

namespace {

using V10 = Eigen::Matrix<std::complex<double>, 10, 1>;
using M4 = Matrix4c<double>;

}  // namespace

TEST(beamsplitter_unitary, unitary_for_any_reflectivity) {
  for (double eta : {0.01, 0.2, 0.5, 0.73, 0.99}) {
    const auto u = beamsplitter_unitary(eta);
    EXPECT_LT((u.adjoint() * u - ModeOperator<double>::Identity()).cwiseAbs().maxCoeff(), 1e-12)
        << "eta = " << eta;
  }
}

TEST(beamsplitter_unitary, rejects_reflectivity_outside_open_interval) {
  EXPECT_THROW(beamsplitter_unitary(0.0), std::invalid_argument);
  EXPECT_THROW(beamsplitter_unitary(1.0), std::invalid_argument);
  EXPECT_THROW(beamsplitter_unitary(-0.3), std::invalid_argument);
}

// Hand expansion of a_i^dagger b_j^dagger at eta = 1/2:
//   (i/2) a_i a_j + (1/2) a_j b_i - (1/2) a_i b_j + (i/2) b_i b_j.
TEST(beamsplitter_unitary, matches_hand_expansion_of_one_coincidence_input) {
  const auto u = beamsplitter_unitary(0.5);
  // Input aH bV (index 7). Output: (i/2)|aH aV> + (1/2)|aV bH> - (1/2)|aH bV> + (i/2)|bH bV>.
  V10 in = V10::Zero();
  in(7) = 1;
  const V10 out = u * in;
  V10 expected = V10::Zero();
  expected(2) = {0, 0.5};
  expected(8) = 0.5;
  expected(7) = -0.5;
  expected(5) = {0, 0.5};
  EXPECT_LT((out - expected).cwiseAbs().maxCoeff(), 1e-15);
  // Input aH bH (index 6): identical photons, a_H^2 and b_H^2 carry sqrt(2).
  in.setZero();
  in(6) = 1;
  const V10 out_hh = u * in;
  EXPECT_NEAR(std::abs(out_hh(6)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out_hh(0)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(out_hh(3)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(coincidence_isometry, isometry_and_projector) {
  const auto k = coincidence_isometry<double>();
  const auto pi = coincidence_projector<double>();
  EXPECT_LT((k.adjoint() * k - M4::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((pi * pi - pi).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((k * k.adjoint() - pi).cwiseAbs().maxCoeff(), 1e-15);
  // Pi annihilates the bunched block.
  EXPECT_LT(pi.topLeftCorner(kBunchedDim, kBunchedDim).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(pi.trace().real(), 4.0, 1e-15);
}

TEST(beamsplitter_unitary, balanced_splitter_selects_singlet) {
  const auto u = beamsplitter_unitary(0.5);
  const auto k = coincidence_isometry<double>();
  const M4 reduced = k.adjoint() * u * k;
  const auto psi_m = bell_vector(BellLabel::PsiMinus).amplitudes();
  // |<psi-| K^dagger U K |psi->| = 1, sign is a convention.
  EXPECT_NEAR(std::abs(psi_m.dot(reduced * psi_m)), 1.0, 1e-12);
  EXPECT_NEAR(psi_m.dot(reduced * psi_m).real(), -1.0, 1e-12);
  for (BellLabel other : {BellLabel::PsiPlus, BellLabel::PhiPlus, BellLabel::PhiMinus}) {
    const auto v = bell_vector(other).amplitudes();
    EXPECT_LT((reduced * v).norm(), 1e-12) << to_string(other);
    // Coincidence component of U K |v> is zero: photons bunch.
    const V10 out = u * (k * v);
    EXPECT_LT(out.tail(4).norm(), 1e-12);
  }
}

TEST(swap_via_beamsplitter, phi_plus_pair_heralds_singlet) {
  const auto phi = bell_state(BellLabel::PhiPlus);
  const auto r = swap_via_beamsplitter(phi, phi, 0.5);
  EXPECT_LT(trace_distance(r.state, bell_state(BellLabel::PsiMinus)), 1e-12);
  EXPECT_NEAR(r.probability, 0.25, 1e-14);
  EXPECT_EQ(r.outcome, BellLabel::PsiMinus);
}

TEST(swap_via_beamsplitter, identical_photons_never_coincide) {
  M4 hh = M4::Zero();
  hh(0, 0) = 1;
  const DensityMatrix<double> rho(hh);
  EXPECT_THROW(swap_via_beamsplitter(rho, rho, 0.5), NoCoincidence);
}

TEST(swap_via_beamsplitter, equals_closed_form_psi_minus) {
  const BeamsplitterBsm<double> bsm(0.5);
  RngStream rng(31, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_bures<double>(rng), b = random_bures<double>(rng);
    const auto optical = bsm.swap(a, b);
    const auto analytic = swap_general(a, b, BellLabel::PsiMinus);
    ASSERT_LT(trace_distance(optical.state, analytic.state), 1e-10);
    ASSERT_NEAR(optical.probability, analytic.probability, 1e-10);
  }
}

TEST(swap_via_beamsplitter, unbalanced_splitter_still_gives_valid_state) {
  RngStream rng(32, 0);
  const auto a = random_bures<double>(rng), b = random_bures<double>(rng);
  const auto r = swap_via_beamsplitter(a, b, 0.3);
  EXPECT_GT(r.probability, 0.0);
  EXPECT_LE(r.probability, 1.0);
}
