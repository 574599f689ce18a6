#pragma once

#include <functional>

#include "kreinshift/analytic.hpp"
#include "kreinshift/dilation.hpp"
#include "kreinshift/matrix.hpp"

namespace kreinshift {

/// Straight segment t -> T0 + t (T1 - T0) between two contractions of the
/// same dimension. Convexity keeps every point a contraction.
class ContractionPath {
public:
  ContractionPath(Contraction t0, Contraction t1);

  const Contraction& t0() const { return t0_; }
  const Contraction& t1() const { return t1_; }
  int dim() const { return t0_.dim(); }

  const ComplexMatrix& delta() const { return delta_; }
  double delta_nuclear() const { return delta_nuclear_; }

  Contraction at(double t) const;

private:
  Contraction t0_;
  Contraction t1_;
  ComplexMatrix delta_;
  double delta_nuclear_;
};

/// Pointwise symbol phi(zeta, tau) on the torus.
using Symbol = std::function<Complex(Complex, Complex)>;
/// Symbol given by grid indices (j, k); lets callers precompute samples.
using IndexedSymbol = std::function<Complex(int, int)>;

/// Discrete double operator integral
///   (1/M^2) sum_{j,k} phi(zeta_j, tau_k) K1_j Q K2_k
/// over two semi-spectral density grids of equal size and dimension.
ComplexMatrix doi(const Symbol& phi, const SemiSpectralDensity& d1, const ComplexMatrix& q,
                  const SemiSpectralDensity& d2);
ComplexMatrix doi_indexed(const IndexedSymbol& phi, const SemiSpectralDensity& d1,
                          const ComplexMatrix& q, const SemiSpectralDensity& d2);

/// d/dt f(T_t) along the path, realized as the DOI of the divided difference
/// of f against delta at the point T_t (one measure on both sides).
ComplexMatrix path_derivative(const AnalyticFunction& f, const ContractionPath& p, double t,
                              int grid_size);

/// f(T1) - f(T0) as the two-measure DOI of the divided difference: the
/// densities of T1 on the left, of T0 on the right, delta in the middle.
ComplexMatrix increment(const AnalyticFunction& f, const ContractionPath& p, int grid_size);

/// || integral_0^1 path_derivative dt - (f(T1) - f(T0)) || (spectral norm),
/// with a t_nodes-point Gauss-Legendre rule in t and matfun supplying the
/// right-hand side. Requires strict endpoints.
double bochner_check(const AnalyticFunction& f, const ContractionPath& p, int grid_size,
                     int t_nodes);

} // namespace kreinshift
