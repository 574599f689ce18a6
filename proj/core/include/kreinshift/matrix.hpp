#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "kreinshift/errors.hpp"

namespace kreinshift {

using Complex = std::complex<double>;
using EigenMatrix = Eigen::MatrixXcd;

/// Slack accepted on the contraction bound ||T|| <= 1.
inline constexpr double kNormSlack = 1e-10;
/// Margin below 1 required of the spectral radius on strict code paths.
inline constexpr double kRadiusMargin = 1e-8;
/// Smallest singular value treated as invertible.
inline constexpr double kSingularFloor = 1e-12;

/// Dense square complex matrix. Construction validates shape and finiteness;
/// everything numeric is delegated to Eigen.
class ComplexMatrix {
public:
  explicit ComplexMatrix(EigenMatrix m);
  ComplexMatrix(int dim, const std::vector<std::vector<Complex>>& rows);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim);
  static ComplexMatrix diagonal(const std::vector<Complex>& entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  const EigenMatrix& mat() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint()); }
  Complex trace() const { return m_.trace(); }

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix operator*(Complex s) const { return ComplexMatrix(m_ * s); }

private:
  EigenMatrix m_;
};

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);
double spectral_norm(const EigenMatrix& m);

/// Sum of singular values (trace norm).
double nuclear_norm(const ComplexMatrix& m);
double nuclear_norm(const EigenMatrix& m);

/// Largest eigenvalue modulus.
double spectral_radius(const ComplexMatrix& m);
double spectral_radius(const EigenMatrix& m);

/// Eigenvalues in Schur order.
std::vector<Complex> eigenvalues(const ComplexMatrix& m);

/// Inverse; throws SingularMatrix when the smallest singular value is
/// below kSingularFloor.
ComplexMatrix inverse(const ComplexMatrix& m);

/// trace(m^k) for k = 1..max_power, via eigenvalue power sums.
std::vector<Complex> power_traces(const ComplexMatrix& m, int max_power);

/// Square matrix with ||T|| <= 1 (+ kNormSlack). A norm within the slack of 1
/// is accepted and the matrix rescaled onto the closed unit ball; a larger
/// norm throws InvariantViolation. Spectral norm, spectral radius and the
/// unitary defect are computed once and cached.
class Contraction {
public:
  explicit Contraction(ComplexMatrix m);
  explicit Contraction(EigenMatrix m) : Contraction(ComplexMatrix(std::move(m))) {}

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const EigenMatrix& mat() const { return m_.mat(); }

  double norm() const { return norm_; }
  double radius() const { return radius_; }
  /// ||T* T - I||, zero (up to kNormSlack) iff T is unitary.
  double unitary_defect() const { return unitary_defect_; }
  bool is_unitary() const { return unitary_defect_ <= kNormSlack; }
  /// Radius strictly inside the disc by kRadiusMargin.
  bool is_strict() const { return radius_ < 1.0 - kRadiusMargin; }

private:
  ComplexMatrix m_;
  double norm_;
  double radius_;
  double unitary_defect_;
};

} // namespace kreinshift
