#pragma once

#include <complex>
#include <vector>

namespace kreinshift {

/// Nodes and weights of a quadrature rule on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes, mapped to [0, 1]. Exact for
/// polynomials of degree <= 2n - 1; weights sum to 1.
QuadratureRule gauss_legendre(int n);

/// Trapezoid rule on a non-uniform grid x (strictly increasing).
double trapezoid(const std::vector<double>& x, const std::vector<double>& f);
std::complex<double> trapezoid(const std::vector<double>& x,
                               const std::vector<std::complex<double>>& f);

/// Neville polynomial extrapolation of samples (h_i, v_i) to h = 0.
/// The h_i must be distinct.
std::complex<double> extrapolate_to_zero(const std::vector<double>& h,
                                         const std::vector<std::complex<double>>& v);

} // namespace kreinshift
