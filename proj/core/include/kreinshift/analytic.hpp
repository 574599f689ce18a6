#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "kreinshift/matrix.hpp"

namespace kreinshift {

/// Radius value meaning "entire function" (in practice: polynomial).
inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();
/// Below this separation the divided difference switches to its confluent form.
inline constexpr double kConfluentThreshold = 1e-6;

/// Analytic function on a disc of radius > 1, stored as a truncated Taylor
/// series f(z) = sum_{k=0}^{d} a_k z^k together with the declared radius of
/// convergence of the underlying series.
class AnalyticFunction {
public:
  explicit AnalyticFunction(std::vector<Complex> coeffs, double radius = kInfiniteRadius);

  static AnalyticFunction constant(Complex c);
  /// a * z^k.
  static AnalyticFunction monomial(int k, Complex a = 1.0);
  /// Partial sum of exp: sum_{k<=degree} z^k / k!.
  static AnalyticFunction exp_partial_sum(int degree);
  /// sum_{k<=degree} q^k z^k, declared radius 1/q (needs 0 < q < 1).
  static AnalyticFunction truncated_geometric(double q, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  double radius() const { return radius_; }

  /// sum_k k |a_k|: an upper bound for the operator Lipschitz constant
  /// that the sampler ol_lower_bound brackets from below.
  double ol_certificate() const;

  Complex eval(Complex z) const;
  Complex eval_deriv(Complex z) const;

  /// (f(zeta) - f(tau)) / (zeta - tau), evaluated in confluent form
  /// sum_k a_k sum_{j<k} zeta^j tau^{k-1-j} when |zeta - tau| is below
  /// kConfluentThreshold.
  Complex divided_difference(Complex zeta, Complex tau) const;

  AnalyticFunction derivative() const;
  AnalyticFunction operator+(const AnalyticFunction& o) const;
  AnalyticFunction operator*(const AnalyticFunction& o) const;

private:
  std::vector<Complex> coeffs_;
  double radius_;
};

/// f(T) by Horner evaluation of the stored coefficients. For a finite
/// declared radius the neglected tail of the series is bounded through the
/// spectral radius and the Schur nilpotent part of T; if that bound cannot be
/// pushed below 1e-12 within 1e5 terms (in particular when
/// spectral_radius(T) >= radius) a ConvergenceError is thrown.
ComplexMatrix matfun(const AnalyticFunction& f, const Contraction& t);

/// Randomized lower bound for the operator Lipschitz constant of f on the
/// closed unit ball: max over sampled contraction pairs of
/// ||f(A) - f(B)|| / ||A - B||.
double ol_lower_bound(const AnalyticFunction& f, int dim, int trials, std::uint64_t seed);

} // namespace kreinshift
