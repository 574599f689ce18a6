#pragma once

#include <vector>

#include "kreinshift/matrix.hpp"

namespace kreinshift {

/// j-th node of the uniform M-point grid on the unit circle.
Complex circle_point(int j, int grid_size);

/// True iff m is a power of two and >= 16.
bool valid_grid_size(int m);

/// Matrix-valued density of the semi-spectral measure of a strict
/// contraction, sampled on the uniform circle grid. density(j) is Hermitian
/// PSD; (1/M) sum_j density(j) is the identity up to the grid tail.
class SemiSpectralDensity {
public:
  SemiSpectralDensity(std::vector<EigenMatrix> densities, double source_radius);

  int grid_size() const { return static_cast<int>(densities_.size()); }
  int dim() const { return static_cast<int>(densities_.front().rows()); }
  double source_radius() const { return source_radius_; }
  Complex point(int j) const { return circle_point(j, grid_size()); }
  const EigenMatrix& density(int j) const { return densities_[static_cast<std::size_t>(j)]; }

  /// Checks Hermitianity, positive semidefiniteness (eigenvalues above
  /// -slack) and unit mass of every stored density; throws
  /// InvariantViolation on the first failure.
  void validate(double slack = 1e-8) const;

private:
  std::vector<EigenMatrix> densities_;
  double source_radius_;
};

/// Operator Poisson density P(zeta, T) = (I - zeta T*)^{-1} (I - T* T)
/// (I - conj(zeta) T)^{-1} at a point of the unit circle.
ComplexMatrix poisson_density(const Contraction& t, Complex zeta);

/// P(zeta_j, T) on the uniform M-point grid (M a power of two, >= 16).
/// Requires spectral radius < 1 - kRadiusMargin.
SemiSpectralDensity density_grid(const Contraction& t, int grid_size);

/// n-th trigonometric moment (1/M) sum_j zeta_j^n density(j). For
/// 0 <= n < M this approximates T^n with error at most
/// moment_tolerance(d, n).
ComplexMatrix moment(const SemiSpectralDensity& d, int n);

/// Grid-tail bound 10 * r^(M - n) * dim + 1e-10 for the n-th moment.
double moment_tolerance(const SemiSpectralDensity& d, int n);

/// rT for r in (0, 1]: pulls a unitary or norm-1 contraction strictly
/// inside the disc.
Contraction regularize(const Contraction& t, double r);

} // namespace kreinshift
