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
/// Two-qubit states and the measures defined on them.
///
/// Every two-qubit operator is written in the ordered basis
/// |HH>, |HV>, |VH>, |VV> (index 2*q_first + q_second, H = 0, V = 1).
/// Four-qubit operators on modes 1,2,3,4 use index
/// 8*q1 + 4*q2 + 2*q3 + q4, i.e. (q1 (x) q2) (x) (q3 (x) q4) with mode 1
/// the most significant bit.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace entswap {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Matrix4c = Eigen::Matrix<Complex<Real>, 4, 4>;

template <typename Real>
using Vector4c = Eigen::Matrix<Complex<Real>, 4, 1>;

template <typename Real>
using Matrix16c = Eigen::Matrix<Complex<Real>, 16, 16>;

/// Numerical slack used by the validity checks.
template <typename Real = double>
struct Tolerance {
  static constexpr Real hermitian = Real(1e-10);
  static constexpr Real trace = Real(1e-10);
  static constexpr Real eigenvalue = Real(1e-10);
  static constexpr Real x_entry = Real(1e-10);
  static constexpr Real pure_norm = Real(1e-12);
  static constexpr Real rank = Real(1e-10);
};

template <>
struct Tolerance<float> {
  static constexpr float hermitian = 1e-5f;
  static constexpr float trace = 1e-5f;
  static constexpr float eigenvalue = 1e-5f;
  static constexpr float x_entry = 1e-5f;
  static constexpr float pure_norm = 1e-5f;
  static constexpr float rank = 1e-5f;
};

/// Raised when a matrix violates a density-matrix invariant. The message
/// always names the failed invariant ("hermiticity", "trace", "eigenvalue",
/// "finite", "norm").
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + " invariant violated: " + detail),
        invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

enum class BellLabel { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {
    BellLabel::PsiPlus, BellLabel::PsiMinus, BellLabel::PhiPlus, BellLabel::PhiMinus};

inline std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PsiMinus: return "psi-";
    case BellLabel::PhiPlus: return "phi+";
    case BellLabel::PhiMinus: return "phi-";
  }
  return "?";
}

inline std::optional<BellLabel> parse_bell_label(std::string_view text) {
  for (BellLabel label : kAllBellLabels) {
    if (to_string(label) == text) return label;
  }
  return std::nullopt;
}

inline bool is_psi(BellLabel label) {
  return label == BellLabel::PsiPlus || label == BellLabel::PsiMinus;
}

inline bool is_plus(BellLabel label) {
  return label == BellLabel::PsiPlus || label == BellLabel::PhiPlus;
}

/// Kronecker product; entry (rows(b)*i + k, cols(b)*j + l) = a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Reduces a four-qubit operator on modes 1,2,3,4 to modes 1,4 by tracing
/// out modes 2 and 3. No renormalization is applied.
template <typename Derived>
Matrix4c<typename Derived::Scalar::value_type> partial_trace_23(
    const Eigen::MatrixBase<Derived>& rho1234) {
  using Real = typename Derived::Scalar::value_type;
  if (rho1234.rows() != 16 || rho1234.cols() != 16) {
    throw std::invalid_argument("partial_trace_23: expected a 16x16 matrix, got " +
                                std::to_string(rho1234.rows()) + "x" +
                                std::to_string(rho1234.cols()));
  }
  Matrix4c<Real> out = Matrix4c<Real>::Zero();
  for (int r1 = 0; r1 < 2; ++r1) {
    for (int r4 = 0; r4 < 2; ++r4) {
      for (int c1 = 0; c1 < 2; ++c1) {
        for (int c4 = 0; c4 < 2; ++c4) {
          Complex<Real> sum{0};
          for (int q2 = 0; q2 < 2; ++q2) {
            for (int q3 = 0; q3 < 2; ++q3) {
              sum += rho1234(8 * r1 + 4 * q2 + 2 * q3 + r4, 8 * c1 + 4 * q2 + 2 * q3 + c4);
            }
          }
          out(2 * r1 + r4, 2 * c1 + c4) = sum;
        }
      }
    }
  }
  return out;
}

/// Hermitian part (m + m^dagger) / 2.
template <typename Derived>
auto hermitize(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Plain h = (m + m.adjoint()) / typename Derived::Scalar::value_type(2);
  return h;
}

/// A validated 4x4 density matrix. Construction checks Hermiticity, unit
/// trace and positivity; the spectrum found during that check is kept so the
/// rank query is free.
template <typename Real = double>
class DensityMatrix {
 public:
  using Matrix = Matrix4c<Real>;
  using Spectrum = Eigen::Matrix<Real, 4, 1>;

  explicit DensityMatrix(const Matrix& m) : mat_(m) { validate(); }

  const Matrix& matrix() const noexcept { return mat_; }
  const Complex<Real>& operator()(int i, int j) const { return mat_(i, j); }

  /// Ascending eigenvalues of the Hermitized matrix.
  const Spectrum& eigenvalues() const noexcept { return eigenvalues_; }

  Real purity() const { return (mat_ * mat_).trace().real(); }

 private:
  void validate() {
    if (!mat_.allFinite()) throw ValidationError("finite", "matrix has NaN or Inf entries");
    Real herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > Tolerance<Real>::hermitian) {
      throw ValidationError("hermiticity", "max |m_ij - conj(m_ji)| = " + std::to_string(herm));
    }
    Real tr_err = std::abs(mat_.trace() - Complex<Real>(1));
    if (tr_err > Tolerance<Real>::trace) {
      throw ValidationError("trace", "|trace - 1| = " + std::to_string(tr_err));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(mat_), Eigen::EigenvaluesOnly);
    eigenvalues_ = solver.eigenvalues();
    if (eigenvalues_(0) < -Tolerance<Real>::eigenvalue) {
      throw ValidationError("eigenvalue",
                            "smallest eigenvalue = " + std::to_string(eigenvalues_(0)));
    }
  }

  Matrix mat_;
  Spectrum eigenvalues_;
};

/// Unit-norm two-qubit state vector.
template <typename Real = double>
class PureState {
 public:
  explicit PureState(const Vector4c<Real>& amplitudes) : amp_(amplitudes) {
    Real err = std::abs(amp_.squaredNorm() - Real(1));
    if (!amp_.allFinite() || err > Tolerance<Real>::pure_norm) {
      throw ValidationError("norm", "|<psi|psi> - 1| = " + std::to_string(err));
    }
  }

  const Vector4c<Real>& amplitudes() const noexcept { return amp_; }
  const Complex<Real>& operator[](int i) const { return amp_(i); }

  DensityMatrix<Real> density() const { return DensityMatrix<Real>(amp_ * amp_.adjoint()); }

 private:
  Vector4c<Real> amp_;
};

/// Parameters of an X-state: nonzero entries only on the diagonal and the
/// anti-diagonal. c41 = conj(c14) and c32 = conj(c23) are implied.
template <typename Real = double>
struct XState {
  Real c11{}, c22{}, c33{}, c44{};
  Complex<Real> c14{}, c23{};

  Matrix4c<Real> matrix() const {
    Matrix4c<Real> m = Matrix4c<Real>::Zero();
    m(0, 0) = c11;
    m(1, 1) = c22;
    m(2, 2) = c33;
    m(3, 3) = c44;
    m(0, 3) = c14;
    m(3, 0) = std::conj(c14);
    m(1, 2) = c23;
    m(2, 1) = std::conj(c23);
    return m;
  }

  /// Throws ValidationError unless the parameters describe a density matrix.
  void validate() const {
    constexpr Real tol = Tolerance<Real>::trace;
    if (std::abs(c11 + c22 + c33 + c44 - Real(1)) > tol) {
      throw ValidationError("trace", "X-state diagonal does not sum to 1");
    }
    if (std::min({c11, c22, c33, c44}) < -Tolerance<Real>::eigenvalue) {
      throw ValidationError("eigenvalue", "negative X-state population");
    }
    if (std::norm(c14) > c11 * c44 + Tolerance<Real>::eigenvalue ||
        std::norm(c23) > c22 * c33 + Tolerance<Real>::eigenvalue) {
      throw ValidationError("eigenvalue", "X-state coherence exceeds its block bound");
    }
  }

  DensityMatrix<Real> density() const {
    validate();
    return DensityMatrix<Real>(matrix());
  }
};

/// Entries of a 4x4 matrix that are zero in an X-state, as (row, col).
inline constexpr std::array<std::pair<int, int>, 8> kNonXEntries = {
    std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 0}, std::pair{1, 3},
    std::pair{2, 0}, std::pair{2, 3}, std::pair{3, 1}, std::pair{3, 2}};

template <typename Derived>
typename Derived::Scalar::value_type max_non_x_entry(const Eigen::MatrixBase<Derived>& m) {
  typename Derived::Scalar::value_type worst{0};
  for (auto [i, j] : kNonXEntries) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

/// Extracts X-state parameters; std::nullopt when any non-X entry has
/// modulus >= 1e-10.
template <typename Real>
std::optional<XState<Real>> as_x_state(const DensityMatrix<Real>& rho) {
  const auto& m = rho.matrix();
  if (max_non_x_entry(m) >= Tolerance<Real>::x_entry) return std::nullopt;
  XState<Real> x;
  x.c11 = m(0, 0).real();
  x.c22 = m(1, 1).real();
  x.c33 = m(2, 2).real();
  x.c44 = m(3, 3).real();
  // Average the mirrored entries so residual asymmetry does not bias |c14|.
  x.c14 = (m(0, 3) + std::conj(m(3, 0))) / Real(2);
  x.c23 = (m(1, 2) + std::conj(m(2, 1))) / Real(2);
  return x;
}

template <typename Real = double>
PureState<Real> bell_vector(BellLabel label) {
  const Real s = Real(1) / std::sqrt(Real(2));
  Vector4c<Real> v = Vector4c<Real>::Zero();
  switch (label) {
    case BellLabel::PhiPlus: v(0) = s; v(3) = s; break;
    case BellLabel::PhiMinus: v(0) = s; v(3) = -s; break;
    case BellLabel::PsiPlus: v(1) = s; v(2) = s; break;
    case BellLabel::PsiMinus: v(1) = s; v(2) = -s; break;
  }
  return PureState<Real>(v);
}

template <typename Real = double>
DensityMatrix<Real> bell_state(BellLabel label) {
  return bell_vector<Real>(label).density();
}

/// p |phi+><phi+| + (1 - p) I/4.
template <typename Real = double>
DensityMatrix<Real> werner_state(Real p) {
  Matrix4c<Real> m = p * bell_state<Real>(BellLabel::PhiPlus).matrix() +
                     (Real(1) - p) / Real(4) * Matrix4c<Real>::Identity();
  return DensityMatrix<Real>(m);
}

/// sigma_y (x) sigma_y in the computational basis.
template <typename Real = double>
Matrix4c<Real> spin_flip_operator() {
  Matrix4c<Real> y = Matrix4c<Real>::Zero();
  y(0, 3) = Real(-1);
  y(1, 2) = Real(1);
  y(2, 1) = Real(1);
  y(3, 0) = Real(-1);
  return y;
}

/// 2 max[0, |c14| - sqrt(c22 c33), |c23| - sqrt(c11 c44)].
template <typename Real>
Real x_state_concurrence(const XState<Real>& x) {
  using std::sqrt;
  Real a = std::abs(x.c14) - sqrt(std::max(Real(0), x.c22 * x.c33));
  Real b = std::abs(x.c23) - sqrt(std::max(Real(0), x.c11 * x.c44));
  return std::clamp(Real(2) * std::max({Real(0), a, b}), Real(0), Real(1));
}

/// Wootters concurrence for an arbitrary two-qubit state.
///
/// With rho = W W^dagger (W = eigenvectors scaled by sqrt(eigenvalues)), the
/// square roots of the eigenvalues of rho * (Y rho^* Y) are the singular
/// values of tau = W^T Y W. Taking singular values of tau avoids the
/// square-root amplification of round-off that the direct eigenvalue route
/// suffers on rank-deficient states.
template <typename Real>
Real wootters_concurrence(const DensityMatrix<Real>& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c<Real>> solver(hermitize(rho.matrix()));
  Eigen::Matrix<Real, 4, 1> weights = solver.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
  Matrix4c<Real> w = solver.eigenvectors() * weights.template cast<Complex<Real>>().asDiagonal();
  Matrix4c<Real> tau = w.transpose() * spin_flip_operator<Real>() * w;
  Eigen::JacobiSVD<Matrix4c<Real>> svd(tau);
  const auto& s = svd.singularValues();  // descending
  return std::clamp(s(0) - s(1) - s(2) - s(3), Real(0), Real(1));
}

/// Concurrence of a pure state, 2 |a_HH a_VV - a_HV a_VH|.
template <typename Real>
Real concurrence(const PureState<Real>& psi) {
  return std::clamp(Real(2) * std::abs(psi[0] * psi[3] - psi[1] * psi[2]), Real(0), Real(1));
}

/// Concurrence in [0,1]. X-states take the closed form; everything else goes
/// through wootters_concurrence.
template <typename Real>
Real concurrence(const DensityMatrix<Real>& rho) {
  if (auto x = as_x_state(rho)) return x_state_concurrence(*x);
  return wootters_concurrence(rho);
}

/// Number of eigenvalues greater than tol * (largest eigenvalue).
template <typename Real>
int numerical_rank(const DensityMatrix<Real>& rho, Real tol = Tolerance<Real>::rank) {
  const auto& ev = rho.eigenvalues();
  const Real cutoff = tol * ev(3);
  return static_cast<int>((ev.array() > cutoff).count());
}

/// Half the trace norm of a - b.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar::value_type trace_distance(const Eigen::MatrixBase<DerivedA>& a,
                                                     const Eigen::MatrixBase<DerivedB>& b) {
  using Plain = typename DerivedA::PlainObject;
  Plain diff = hermitize(a - b);
  Eigen::SelfAdjointEigenSolver<Plain> solver(diff, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum() / 2;
}

template <typename Real>
Real trace_distance(const DensityMatrix<Real>& a, const DensityMatrix<Real>& b) {
  return trace_distance(a.matrix(), b.matrix());
}

}  // namespace entswap
