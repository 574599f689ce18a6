#include "kreinshift/dilation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "kreinshift/parallel.hpp"

namespace kreinshift {

Complex circle_point(int j, int grid_size) {
  return std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid_size));
}

bool valid_grid_size(int m) {
  return m >= 16 && (m & (m - 1)) == 0;
}

SemiSpectralDensity::SemiSpectralDensity(std::vector<EigenMatrix> densities, double source_radius)
    : densities_(std::move(densities)), source_radius_(source_radius) {
  if (!valid_grid_size(static_cast<int>(densities_.size())))
    throw InvariantViolation("SemiSpectralDensity: grid size must be a power of two >= 16");
  const Eigen::Index n = densities_.front().rows();
  for (const auto& k : densities_)
    if (k.rows() != n || k.cols() != n)
      throw GridMismatch("SemiSpectralDensity: inconsistent density dimensions");
  if (!(source_radius_ >= 0.0 && source_radius_ < 1.0))
    throw InvariantViolation("SemiSpectralDensity: source radius must lie in [0, 1)");
}

void SemiSpectralDensity::validate(double slack) const {
  const int n = dim();
  EigenMatrix mass = EigenMatrix::Zero(n, n);
  for (int j = 0; j < grid_size(); ++j) {
    const EigenMatrix& k = density(j);
    const double herm = (k - k.adjoint()).norm();
    if (herm > slack) {
      std::ostringstream os;
      os << "density " << j << " not Hermitian: defect " << herm;
      throw InvariantViolation(os.str());
    }
    Eigen::SelfAdjointEigenSolver<EigenMatrix> es(k, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -slack) {
      std::ostringstream os;
      os << "density " << j << " not PSD: min eigenvalue " << es.eigenvalues()(0);
      throw InvariantViolation(os.str());
    }
    mass += k;
  }
  mass /= static_cast<double>(grid_size());
  const double defect = (mass - EigenMatrix::Identity(n, n)).norm();
  const double tol = moment_tolerance(*this, 0) + slack;
  if (defect > tol) {
    std::ostringstream os;
    os << "density mass defect " << defect << " exceeds " << tol;
    throw InvariantViolation(os.str());
  }
}

namespace {

void require_strict(const Contraction& t, const char* who) {
  if (!t.is_strict()) {
    std::ostringstream os;
    os << who << ": spectral radius " << t.radius() << " not below 1 - " << kRadiusMargin;
    throw SpectralRadiusError(os.str());
  }
}

// One factored evaluation point: with B = I - zeta T*,
// P = B^{-1} G B^{-*} where G = I - T* T. The second solve reuses the LU of
// B through P = (B^{-1} X^H)^H with X = B^{-1} G.
EigenMatrix poisson_at(const EigenMatrix& tadj, const EigenMatrix& g, Complex zeta) {
  const Eigen::Index n = tadj.rows();
  EigenMatrix b = EigenMatrix::Identity(n, n) - zeta * tadj;
  Eigen::PartialPivLU<EigenMatrix> lu(b);
  EigenMatrix x = lu.solve(g);
  EigenMatrix p = lu.solve(x.adjoint()).adjoint();
  // Symmetrize away solver roundoff; P is Hermitian by construction.
  return 0.5 * (p + p.adjoint());
}

} // namespace

ComplexMatrix poisson_density(const Contraction& t, Complex zeta) {
  require_strict(t, "poisson_density");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw DomainError("poisson_density: zeta must lie on the unit circle");
  const EigenMatrix tadj = t.mat().adjoint();
  const EigenMatrix g = EigenMatrix::Identity(t.dim(), t.dim()) - tadj * t.mat();
  return ComplexMatrix(poisson_at(tadj, g, zeta));
}

SemiSpectralDensity density_grid(const Contraction& t, int grid_size) {
  require_strict(t, "density_grid");
  if (!valid_grid_size(grid_size))
    throw InvariantViolation("density_grid: grid size must be a power of two >= 16");
  const EigenMatrix tadj = t.mat().adjoint();
  const EigenMatrix g = EigenMatrix::Identity(t.dim(), t.dim()) - tadj * t.mat();
  std::vector<EigenMatrix> ks(static_cast<std::size_t>(grid_size));
  parallel_chunks(static_cast<std::size_t>(grid_size), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t j = b; j < e; ++j)
      ks[j] = poisson_at(tadj, g, circle_point(static_cast<int>(j), grid_size));
  });
  return SemiSpectralDensity(std::move(ks), t.radius());
}

ComplexMatrix moment(const SemiSpectralDensity& d, int n) {
  if (n < 0 || n >= d.grid_size())
    throw InvariantViolation("moment: order must satisfy 0 <= n < grid size");
  const int m = d.grid_size();
  EigenMatrix acc = EigenMatrix::Zero(d.dim(), d.dim());
  // zeta_j^n = exp(2 pi i (j n mod M) / M), computed from the reduced index
  // so that no power drift accumulates along the grid.
  for (int j = 0; j < m; ++j) {
    const long idx = (static_cast<long>(j) * n) % m;
    acc += circle_point(static_cast<int>(idx), m) * d.density(j);
  }
  return ComplexMatrix(EigenMatrix(acc / static_cast<double>(m)));
}

double moment_tolerance(const SemiSpectralDensity& d, int n) {
  return 10.0 * std::pow(d.source_radius(), static_cast<double>(d.grid_size() - n)) *
             static_cast<double>(d.dim()) +
         1e-10;
}

Contraction regularize(const Contraction& t, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw InvariantViolation("regularize: need r in (0, 1]");
  return Contraction(EigenMatrix(r * t.mat()));
}

} // namespace kreinshift
