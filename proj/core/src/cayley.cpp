#include "kreinshift/cayley.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "kreinshift/quadrature.hpp"

namespace kreinshift {

namespace {

const Complex kI{0.0, 1.0};

} // namespace

DissipativeOperator::DissipativeOperator(ComplexMatrix l) : l_(std::move(l)), im_floor_(0), im_norm_(0) {
  const int n = l_.dim();
  const EigenMatrix im = (l_.mat() - l_.mat().adjoint()) / Complex(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<EigenMatrix> es(im, Eigen::EigenvaluesOnly);
  im_floor_ = es.eigenvalues()(0);
  im_norm_ = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(n - 1)));
  if (im_floor_ < -1e-10) {
    std::ostringstream os;
    os << "DissipativeOperator: Im part has eigenvalue " << im_floor_;
    throw InvariantViolation(os.str());
  }
  // i + L is invertible for any dissipative L; assert it numerically so the
  // Cayley transform downstream cannot divide by (near) zero.
  Eigen::JacobiSVD<EigenMatrix> svd(EigenMatrix(l_.mat() + kI * EigenMatrix::Identity(n, n)));
  if (svd.singularValues()(n - 1) <= kSingularFloor)
    throw InvariantViolation("DissipativeOperator: i + L numerically singular");
}

Complex cayley_point(double t) { return (kI - t) / (kI + t); }

Contraction cayley(const DissipativeOperator& l) {
  const int n = l.dim();
  const EigenMatrix id = EigenMatrix::Identity(n, n);
  // (iI - L) and (iI + L)^{-1} commute, so the one-sided solve suffices.
  Eigen::PartialPivLU<EigenMatrix> lu(EigenMatrix(kI * id + l.mat()));
  return Contraction(EigenMatrix(lu.solve(EigenMatrix(kI * id - l.mat()))));
}

DissipativeOperator inverse_cayley(const Contraction& t) {
  const int n = t.dim();
  const EigenMatrix id = EigenMatrix::Identity(n, n);
  const EigenMatrix s = id + t.mat();
  Eigen::JacobiSVD<EigenMatrix> svd(s);
  if (svd.singularValues()(n - 1) <= 1e-10) {
    std::ostringstream os;
    os << "inverse_cayley: -1 in the numerical spectrum (sigma_min(I + T) = "
       << svd.singularValues()(n - 1) << ")";
    throw CayleySingular(os.str());
  }
  Eigen::PartialPivLU<EigenMatrix> lu(s);
  return DissipativeOperator(EigenMatrix(kI * lu.solve(EigenMatrix(id - t.mat()))));
}

std::vector<double> symmetric_geometric_grid(double t_min, double t_max, int points) {
  if (!(t_min > 0.0) || !(t_max > t_min))
    throw InvariantViolation("symmetric_geometric_grid: need 0 < t_min < t_max");
  if (points < 4 || points % 2 != 0)
    throw InvariantViolation("symmetric_geometric_grid: need an even point count >= 4");
  const int half = points / 2;
  std::vector<double> right(static_cast<std::size_t>(half));
  const double ratio = std::log(t_max / t_min) / static_cast<double>(half - 1);
  for (int i = 0; i < half; ++i) right[static_cast<std::size_t>(i)] = t_min * std::exp(ratio * i);
  right.back() = t_max;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int i = half - 1; i >= 0; --i) grid.push_back(-right[static_cast<std::size_t>(i)]);
  for (int i = 0; i < half; ++i) grid.push_back(right[static_cast<std::size_t>(i)]);
  return grid;
}

OmegaFunction::OmegaFunction(std::vector<double> t_grid, std::vector<Complex> samples)
    : t_grid_(std::move(t_grid)), samples_(std::move(samples)), weight_integral_(0.0) {
  if (t_grid_.size() != samples_.size() || t_grid_.size() < 2)
    throw InvariantViolation("OmegaFunction: need matching grids with >= 2 points");
  for (std::size_t i = 0; i + 1 < t_grid_.size(); ++i)
    if (!(t_grid_[i] < t_grid_[i + 1]))
      throw InvariantViolation("OmegaFunction: t grid must be strictly increasing");
  std::vector<double> w(t_grid_.size());
  for (std::size_t i = 0; i < t_grid_.size(); ++i)
    w[i] = std::abs(samples_[i]) / (1.0 + t_grid_[i] * t_grid_[i]);
  weight_integral_ = trapezoid(t_grid_, w);
  // One-term tail estimates on both sides.
  const double tr = t_grid_.back();
  const double tl = -t_grid_.front();
  weight_integral_ += std::abs(samples_.back()) * (M_PI / 2.0 - std::atan(tr));
  weight_integral_ += std::abs(samples_.front()) * (M_PI / 2.0 - std::atan(tl));
}

OmegaFunction omega_from_xi(const SpectralShiftFunction& xi, const std::vector<double>& t_grid) {
  std::vector<Complex> samples(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) samples[i] = xi.eval(cayley_point(t_grid[i]));
  return OmegaFunction(t_grid, std::move(samples));
}

SpectralShiftFunction xi_for_pair(const DissipativeOperator& l0, const DissipativeOperator& l1,
                                  int truncation, const std::vector<double>& r_ladder,
                                  int grid_size) {
  const Contraction t0 = cayley(l0);
  const Contraction t1 = cayley(l1);
  if (t0.is_strict() && t1.is_strict())
    return xi_fourier(ContractionPath(t0, t1), truncation, grid_size);
  return xi_fourier_extrapolated(t0, t1, truncation, r_ladder, grid_size);
}

TraceCheck resolvent_trace_check(const DissipativeOperator& l0, const DissipativeOperator& l1,
                                 Complex lambda, const OmegaFunction& omega) {
  if (!(lambda.imag() <= -0.1)) {
    std::ostringstream os;
    os << "resolvent_trace_check: Im lambda = " << lambda.imag() << " must be <= -0.1";
    throw LambdaTooCloseToAxis(os.str());
  }
  if (l0.dim() != l1.dim()) throw GridMismatch("resolvent_trace_check: dimensions differ");
  const int n = l0.dim();
  const EigenMatrix id = EigenMatrix::Identity(n, n);
  const Complex lhs = inverse(ComplexMatrix(EigenMatrix(l1.mat() - lambda * id))).trace() -
                      inverse(ComplexMatrix(EigenMatrix(l0.mat() - lambda * id))).trace();

  const auto& t = omega.t_grid();
  const auto& w = omega.samples();
  std::vector<Complex> integrand(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Complex d = t[i] - lambda;
    integrand[i] = w[i] / (d * d);
  }
  Complex rhs = -trapezoid(t, integrand);
  // Tails: omega is frozen at its boundary values, the kernel integrates
  // exactly to the boundary resolvent factor.
  rhs -= w.back() / (t.back() - lambda);
  rhs -= w.front() / (-t.front() + lambda);
  // note: -t.front() = |left endpoint|; the left tail is
  // -omega(-T) (T + lambda)^{-1} written through the stored sign.
  return {lhs, rhs, std::abs(lhs - rhs)};
}

TraceCheck halfplane_trace_check(const AnalyticFunction& g, const DissipativeOperator& l0,
                                 const DissipativeOperator& l1, const OmegaFunction& omega) {
  if (l0.dim() != l1.dim()) throw GridMismatch("halfplane_trace_check: dimensions differ");
  const Complex lhs = (matfun(g, cayley(l1)) - matfun(g, cayley(l0))).trace();

  const auto& t = omega.t_grid();
  const auto& w = omega.samples();
  std::vector<Complex> integrand(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Complex it = kI + t[i];
    const Complex dzeta = Complex(0.0, -2.0) / (it * it);
    integrand[i] = g.eval_deriv(cayley_point(t[i])) * dzeta * w[i];
  }
  Complex rhs = trapezoid(t, integrand);
  const Complex g_minus_one = g.eval(Complex(-1.0, 0.0));
  rhs += w.back() * (g_minus_one - g.eval(cayley_point(t.back())));
  rhs += w.front() * (g.eval(cayley_point(t.front())) - g_minus_one);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

} // namespace kreinshift
