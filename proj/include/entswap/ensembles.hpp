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
/// Random states and matrices: Ginibre, induced (Hilbert-Schmidt for k = n),
/// Bures, Haar unitaries, Haar pure states and uniform Bell-diagonal states.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/QR>

#include "entswap/qstate.hpp"

namespace entswap {

/// Seedable 64-bit generator. Equal (seed, stream) pairs give equal
/// sequences; different streams are seeded independently through seed_seq.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  double normal() { return normal_(engine_); }
  double exponential() { return exponential_(engine_); }
  double uniform() { return uniform_(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// n x k matrix of i.i.d. entries whose real and imaginary parts are each
/// standard normal, so E|g|^2 = 2.
template <typename Real = double>
ComplexMatrix<Real> ginibre(RngStream& rng, int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("ginibre: dimensions must be positive");
  ComplexMatrix<Real> g(n, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      const Real re = static_cast<Real>(rng.normal());
      const Real im = static_cast<Real>(rng.normal());
      g(i, j) = Complex<Real>(re, im);
    }
  }
  return g;
}

/// Haar unitary via QR of a Ginibre matrix with the phases of diag(R)
/// moved into Q.
template <typename Real = double>
ComplexMatrix<Real> haar_unitary(RngStream& rng, int n) {
  const ComplexMatrix<Real> g = ginibre<Real>(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(g);
  ComplexMatrix<Real> q = qr.householderQ();
  const ComplexMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Real mag = std::abs(r(j, j));
    const Complex<Real> phase = mag > Real(0) ? r(j, j) / mag : Complex<Real>(1);
    q.col(j) *= phase;
  }
  return q;
}

namespace detail {

inline void require_qubit_pair(int n) {
  if (n != 4) {
    throw std::invalid_argument("only two-qubit states (n = 4) are supported, got n = " +
                                std::to_string(n));
  }
}

template <typename Real>
DensityMatrix<Real> normalized_density(const Matrix4c<Real>& m) {
  Matrix4c<Real> h = hermitize(m);
  h /= h.trace().real();
  return DensityMatrix<Real>(h);
}

}  // namespace detail

/// G G^dagger / tr(G G^dagger) with G an n x k Ginibre matrix. Rank is
/// min(n, k) almost surely.
template <typename Real = double>
DensityMatrix<Real> random_induced(RngStream& rng, int n, int k) {
  detail::require_qubit_pair(n);
  if (k < 1 || k > 4) throw std::invalid_argument("random_induced: k must be in 1..4");
  const ComplexMatrix<Real> g = ginibre<Real>(rng, n, k);
  return detail::normalized_density<Real>(g * g.adjoint());
}

/// (1 + U) G G^dagger (1 + U^dagger), normalized; U Haar, G square Ginibre.
template <typename Real = double>
DensityMatrix<Real> random_bures(RngStream& rng, int n = 4) {
  detail::require_qubit_pair(n);
  const ComplexMatrix<Real> u = haar_unitary<Real>(rng, n);
  const ComplexMatrix<Real> g = ginibre<Real>(rng, n, n);
  const ComplexMatrix<Real> a = (ComplexMatrix<Real>::Identity(n, n) + u) * g;
  return detail::normalized_density<Real>(a * a.adjoint());
}

/// First column of a Haar unitary.
template <typename Real = double>
PureState<Real> random_pure(RngStream& rng) {
  const ComplexMatrix<Real> u = haar_unitary<Real>(rng, 4);
  Vector4c<Real> v = u.col(0);
  v.normalize();
  return PureState<Real>(v);
}

/// Weights of alpha |psi+> + beta |psi-> + gamma |phi+> + delta |phi->.
template <typename Real = double>
struct BellDiagonalParams {
  Real alpha{}, beta{}, gamma{}, delta{};

  XState<Real> x_state() const {
    XState<Real> x;
    x.c11 = x.c44 = (gamma + delta) / Real(2);
    x.c22 = x.c33 = (alpha + beta) / Real(2);
    x.c14 = (gamma - delta) / Real(2);
    x.c23 = (alpha - beta) / Real(2);
    return x;
  }

  DensityMatrix<Real> density() const {
    if (std::min({alpha, beta, gamma, delta}) < Real(0) ||
        std::abs(alpha + beta + gamma + delta - Real(1)) > Real(1e-12)) {
      throw ValidationError("trace", "Bell-diagonal weights must be nonnegative and sum to 1");
    }
    return DensityMatrix<Real>(x_state().matrix());
  }
};

/// Uniform point of the 3-simplex (Dirichlet(1,1,1,1) via normalized
/// exponentials).
template <typename Real = double>
BellDiagonalParams<Real> random_bell_diagonal(RngStream& rng) {
  double e[4];
  double total = 0.0;
  for (double& v : e) {
    v = rng.exponential();
    total += v;
  }
  BellDiagonalParams<Real> p;
  p.alpha = static_cast<Real>(e[0] / total);
  p.beta = static_cast<Real>(e[1] / total);
  p.gamma = static_cast<Real>(e[2] / total);
  // Close the sum exactly.
  p.delta = Real(1) - p.alpha - p.beta - p.gamma;
  if (p.delta < Real(0)) p.delta = Real(0);
  return p;
}

/// Random X-state: Dirichlet populations, coherences uniform in modulus up
/// to the block bound and uniform in phase.
template <typename Real = double>
XState<Real> random_x_state(RngStream& rng) {
  double e[4];
  double total = 0.0;
  for (double& v : e) {
    v = rng.exponential();
    total += v;
  }
  XState<Real> x;
  x.c11 = static_cast<Real>(e[0] / total);
  x.c22 = static_cast<Real>(e[1] / total);
  x.c33 = static_cast<Real>(e[2] / total);
  x.c44 = Real(1) - x.c11 - x.c22 - x.c33;
  if (x.c44 < Real(0)) x.c44 = Real(0);
  constexpr double two_pi = 6.283185307179586476925286766559;
  const Real r14 = static_cast<Real>(rng.uniform()) * std::sqrt(x.c11 * x.c44);
  const Real r23 = static_cast<Real>(rng.uniform()) * std::sqrt(x.c22 * x.c33);
  x.c14 = std::polar(r14, static_cast<Real>(two_pi * rng.uniform()));
  x.c23 = std::polar(r23, static_cast<Real>(two_pi * rng.uniform()));
  return x;
}

}  // namespace entswap
