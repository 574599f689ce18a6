#pragma once

#include <vector>

#include "kreinshift/analytic.hpp"
#include "kreinshift/matrix.hpp"
#include "kreinshift/shift.hpp"

namespace kreinshift {

/// Square matrix L with positive semidefinite imaginary part
/// Im L = (L - L*) / (2i) (up to a small slack). Self-adjoint matrices are
/// the boundary case Im L = 0.
class DissipativeOperator {
public:
  explicit DissipativeOperator(ComplexMatrix l);
  explicit DissipativeOperator(EigenMatrix l) : DissipativeOperator(ComplexMatrix(std::move(l))) {}

  int dim() const { return l_.dim(); }
  const ComplexMatrix& matrix() const { return l_; }
  const EigenMatrix& mat() const { return l_.mat(); }

  /// Smallest eigenvalue of Im L (>= -1e-10 by construction).
  double im_floor() const { return im_floor_; }
  /// ||Im L||; zero within slack iff self-adjoint.
  double im_norm() const { return im_norm_; }
  bool is_selfadjoint() const { return im_norm_ <= 1e-10; }

private:
  ComplexMatrix l_;
  double im_floor_;
  double im_norm_;
};

/// Cayley image of the real point t.
Complex cayley_point(double t);

/// T = (iI - L)(iI + L)^{-1}; maps dissipative matrices to contractions,
/// self-adjoint ones to unitaries.
Contraction cayley(const DissipativeOperator& l);

/// L = i (I - T)(I + T)^{-1}; throws CayleySingular when -1 is numerically
/// in the spectrum of T (smallest singular value of I + T below 1e-10).
DissipativeOperator inverse_cayley(const Contraction& t);

/// Symmetric grid on [-t_max, t_max]: geometric spacing from +-t_min to
/// +-t_max in each half (points/2 per side), endpoints included.
std::vector<double> symmetric_geometric_grid(double t_min, double t_max, int points);

/// Spectral shift transplanted to the real line: omega(t) = xi(zeta(t)),
/// sampled on a real grid, with the Poisson-type weight integral
/// int |omega(t)| / (1 + t^2) dt kept as a summary.
class OmegaFunction {
public:
  OmegaFunction(std::vector<double> t_grid, std::vector<Complex> samples);

  const std::vector<double>& t_grid() const { return t_grid_; }
  const std::vector<Complex>& samples() const { return samples_; }
  double weight_integral() const { return weight_integral_; }

private:
  std::vector<double> t_grid_;
  std::vector<Complex> samples_;
  double weight_integral_;
};

/// omega from a circle-side shift function: omega(t) = xi((i - t)/(i + t)).
OmegaFunction omega_from_xi(const SpectralShiftFunction& xi, const std::vector<double>& t_grid);

/// Shift function of a dissipative pair through the Cayley images. Strict
/// image pairs use the direct Fourier route; pairs with a unitary image
/// (self-adjoint L) go through the regularization ladder.
SpectralShiftFunction xi_for_pair(const DissipativeOperator& l0, const DissipativeOperator& l1,
                                  int truncation, const std::vector<double>& r_ladder,
                                  int grid_size = 0);

/// trace((L1 - lambda)^{-1} - (L0 - lambda)^{-1}) against
/// -int omega(t) (t - lambda)^{-2} dt with one-term tail corrections.
/// Requires Im lambda <= -0.1 (throws LambdaTooCloseToAxis).
TraceCheck resolvent_trace_check(const DissipativeOperator& l0, const DissipativeOperator& l1,
                                 Complex lambda, const OmegaFunction& omega);

/// trace(g(cayley L1) - g(cayley L0)) against
/// int g'(zeta(t)) zeta'(t) omega(t) dt with tail corrections pinned at
/// zeta(+-infinity) = -1.
TraceCheck halfplane_trace_check(const AnalyticFunction& g, const DissipativeOperator& l0,
                                 const DissipativeOperator& l1, const OmegaFunction& omega);

} // namespace kreinshift
