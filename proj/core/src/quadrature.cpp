#include "kreinshift/quadrature.hpp"

#include <cmath>
#include <cstddef>

#include "kreinshift/errors.hpp"

namespace kreinshift {

namespace {

// Legendre P_n(x) and P_n'(x) on [-1, 1] via the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

} // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvariantViolation("gauss_legendre: need n >= 1");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th positive root.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre(n, x);
      dp = d;
      double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    auto [p, d] = legendre(n, x);
    (void)p;
    dp = d;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);

    // Map [-1, 1] -> [0, 1]; mirror node fills the other half.
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
  }
  return rule;
}

namespace {

template <class T>
T trapezoid_impl(const std::vector<double>& x, const std::vector<T>& f) {
  if (x.size() != f.size() || x.size() < 2)
    throw InvariantViolation("trapezoid: need matching grids with >= 2 points");
  T acc{};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double h = x[i + 1] - x[i];
    if (h <= 0.0) throw InvariantViolation("trapezoid: grid must be strictly increasing");
    acc += (f[i] + f[i + 1]) * (0.5 * h);
  }
  return acc;
}

} // namespace

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  return trapezoid_impl(x, f);
}

std::complex<double> trapezoid(const std::vector<double>& x,
                               const std::vector<std::complex<double>>& f) {
  return trapezoid_impl(x, f);
}

std::complex<double> extrapolate_to_zero(const std::vector<double>& h,
                                         const std::vector<std::complex<double>>& v) {
  if (h.size() != v.size() || h.empty())
    throw InvariantViolation("extrapolate_to_zero: need matching non-empty samples");
  std::vector<std::complex<double>> t = v;
  const std::size_t n = h.size();
  // Neville tableau evaluated at 0:
  // p_{i..j}(0) = (h_i * p_{i+1..j}(0) - h_j * p_{i..j-1}(0)) / (h_i - h_j).
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      double denom = h[i] - h[i + level];
      if (denom == 0.0) throw InvariantViolation("extrapolate_to_zero: repeated abscissa");
      t[i] = (h[i] * t[i + 1] - h[i + level] * t[i]) / denom;
    }
  }
  return t[0];
}

} // namespace kreinshift
