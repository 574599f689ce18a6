#pragma once

#include <string_view>
#include <vector>

#include "kreinshift/analytic.hpp"
#include "kreinshift/doi.hpp"
#include "kreinshift/matrix.hpp"

namespace kreinshift {

/// Scalar samples on the uniform circle grid with arc-length-normalized
/// summaries: mass() = (1/M) sum samples, total_variation() = (1/M) sum
/// |samples|.
class ScalarDensity {
public:
  explicit ScalarDensity(std::vector<Complex> samples);

  int grid_size() const { return static_cast<int>(samples_.size()); }
  const std::vector<Complex>& samples() const { return samples_; }
  Complex sample(int j) const { return samples_[static_cast<std::size_t>(j)]; }
  Complex point(int j) const;

  Complex mass() const;
  double total_variation() const;

private:
  std::vector<Complex> samples_;
};

/// Spectral shift function of a contraction pair in its canonical
/// anti-analytic normalization
///   xi(zeta) = sum_{k=1}^{K} c_k conj(zeta)^k,
/// i.e. only negative Fourier modes; the class stores the coefficients c_k
/// and a sampled representative on a circle grid. Any two densities
/// satisfying the trace identity differ by an analytic (H^1) term, which
/// this normalization quotients away.
class SpectralShiftFunction {
public:
  SpectralShiftFunction(std::vector<Complex> coeffs, int grid_size);

  static constexpr std::string_view kNormalization = "anti-analytic";

  int truncation() const { return static_cast<int>(coeffs_.size()); }
  int grid_size() const { return grid_size_; }
  /// c_k for 1 <= k <= truncation().
  Complex coefficient(int k) const;
  const std::vector<Complex>& coefficients() const { return coeffs_; }

  /// xi at an arbitrary point of the closed unit circle.
  Complex eval(Complex zeta) const;
  /// Samples on the stored grid, xi(zeta_j).
  const std::vector<Complex>& samples() const { return samples_; }

private:
  std::vector<Complex> coeffs_;
  int grid_size_;
  std::vector<Complex> samples_;
};

/// Density of the weighted trace measure at path parameter t:
/// n_t(zeta_j) = trace(delta P(zeta_j, T_t)). Strict path endpoints required.
ScalarDensity nu_t_density(const ContractionPath& p, double t, int grid_size);

/// t-averaged density with a t_nodes-point Gauss-Legendre rule.
ScalarDensity nu_density(const ContractionPath& p, int grid_size, int t_nodes);

/// Two sides of a verified trace identity.
struct TraceCheck {
  Complex lhs;
  Complex rhs;
  double residual;
};

/// trace(f(T1) - f(T0)) against the grid functional
/// (1/M) sum_j f'(zeta_j) n(zeta_j) of the averaged density.
TraceCheck trace_formula_nu(const AnalyticFunction& f, const ContractionPath& p, int grid_size,
                            int t_nodes);

/// Same identity with a precomputed averaged density.
TraceCheck trace_formula_nu(const AnalyticFunction& f, const ContractionPath& p,
                            const ScalarDensity& nu);

/// Anti-analytic coefficients from power traces:
/// c_k = trace(T1^k - T0^k) / (2 pi i k), k = 1..truncation.
/// Works for any contraction pair (unitary endpoints included).
/// grid_size = 0 picks the smallest valid grid resolving truncation.
SpectralShiftFunction xi_fourier(const ContractionPath& p, int truncation, int grid_size = 0);

/// Same coefficients extrapolated from a regularization ladder
/// r -> (r T0, r T1): each c_k(r) = r^k c_k is polynomial in r, so Neville
/// extrapolation in h = 1 - r recovers the unitary-endpoint limit.
SpectralShiftFunction xi_fourier_extrapolated(const Contraction& t0, const Contraction& t1,
                                              int truncation,
                                              const std::vector<double>& r_ladder,
                                              int grid_size = 0);

/// Anti-analytic projection of nu: c_k = (1/(2 pi i)) (1/M) sum_j n_j
/// zeta_j^{k-1}. Throws GridTooCoarse when truncation > M / 8.
SpectralShiftFunction xi_from_nu(const ScalarDensity& nu, int truncation = 50);

/// trace(f(T1) - f(T0)) against sum_k 2 pi i k a_k c_k. Throws
/// DegreeExceedsTruncation when deg f > xi.truncation().
TraceCheck verify_trace_formula_xi(const AnalyticFunction& f, const ContractionPath& p,
                                   const SpectralShiftFunction& xi);

/// Sign statistics of Im xi on the stored grid (diagnostic for pairs with a
/// unitary endpoint).
struct ImSignStats {
  double frac_positive;
  double frac_negative;
  double max_abs_im;
};
ImSignStats im_sign_stats(const SpectralShiftFunction& xi);

} // namespace kreinshift
