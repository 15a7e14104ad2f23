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

// Test-only reference routines. None of these call into the library's
// swap/measure code paths, so they can check them.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace entswap::oracle {

using cd = std::complex<double>;
using M4 = Eigen::Matrix<cd, 4, 4>;
using V4 = Eigen::Matrix<cd, 4, 1>;
using MX = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic>;

/// Kronecker product by the index formula.
inline MX kron(const MX& a, const MX& b) {
  MX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Bell vectors written out by hand, order psi+, psi-, phi+, phi-.
inline V4 bell(int which) {
  const double s = 1.0 / std::sqrt(2.0);
  V4 v = V4::Zero();
  switch (which) {
    case 0: v << 0, s, s, 0; break;
    case 1: v << 0, s, -s, 0; break;
    case 2: v << s, 0, 0, s; break;
    default: v << s, 0, 0, -s; break;
  }
  return v;
}

/// Amplitude contraction of the four-qubit product state:
///   out[(q1,q4),(p1,p4)] = sum conj(v[q2 q3]) A[q1 q2, p1 p2] B[q3 q4, p3 p4] v[p2 p3]
/// Returns the unnormalized reduced operator; its trace is the probability.
inline M4 project_and_trace(const M4& a, const M4& b, const V4& v) {
  M4 out = M4::Zero();
  for (int q1 = 0; q1 < 2; ++q1)
    for (int q4 = 0; q4 < 2; ++q4)
      for (int p1 = 0; p1 < 2; ++p1)
        for (int p4 = 0; p4 < 2; ++p4) {
          cd sum = 0;
          for (int q2 = 0; q2 < 2; ++q2)
            for (int q3 = 0; q3 < 2; ++q3)
              for (int p2 = 0; p2 < 2; ++p2)
                for (int p3 = 0; p3 < 2; ++p3)
                  sum += std::conj(v(2 * q2 + q3)) * a(2 * q1 + q2, 2 * p1 + p2) *
                         b(2 * q3 + q4, 2 * p3 + p4) * v(2 * p2 + p3);
          out(2 * q1 + q4, 2 * p1 + p4) = sum;
        }
  return out;
}

/// Partial trace of qubits 2,3 by sandwiching with basis vectors.
inline M4 trace_out_middle(const MX& rho) {
  M4 out = M4::Zero();
  for (int q2 = 0; q2 < 2; ++q2)
    for (int q3 = 0; q3 < 2; ++q3) {
      MX e2 = MX::Zero(2, 1), e3 = MX::Zero(2, 1);
      e2(q2, 0) = 1;
      e3(q3, 0) = 1;
      const MX id = MX::Identity(2, 2);
      const MX op = kron(kron(kron(id, e2.adjoint()), e3.adjoint()), id);  // 4 x 16
      out += op * rho * op.adjoint();
    }
  return out;
}

/// Wootters concurrence through the non-Hermitian eigenvalues of rho * rho~.
/// Accurate to ~1e-7 only on rank-deficient inputs; use it for full rank.
inline double concurrence_eigen_route(const M4& rho) {
  M4 y = M4::Zero();
  y(0, 3) = -1;
  y(1, 2) = 1;
  y(2, 1) = 1;
  y(3, 0) = -1;
  const M4 r = rho * (y * rho.conjugate() * y);
  Eigen::ComplexEigenSolver<M4> solver(r, false);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

/// Random unnormalized full-rank PSD matrix with trace one, independent of
/// the library ensembles.
inline M4 random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  M4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cd(n(rng), n(rng));
  M4 r = g * g.adjoint();
  r /= r.trace().real();
  return (r + r.adjoint()) / 2.0;
}

/// Random unitary via Gram-Schmidt of a Gaussian matrix.
inline M4 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  M4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cd(n(rng), n(rng));
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < j; ++k) g.col(j) -= g.col(k).dot(g.col(j)) * g.col(k);
    g.col(j).normalize();
  }
  return g;
}

}  // namespace entswap::oracle
