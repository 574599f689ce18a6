#include "kreinshift/rng.hpp"

#include <cmath>

namespace kreinshift {

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  have_cached_ = true;
  return r * std::cos(a);
}

Complex Rng::complex_normal() {
  const double s = std::sqrt(0.5);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

EigenMatrix ginibre(Rng& rng, int dim) {
  EigenMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rng.complex_normal();
  return m;
}

EigenMatrix random_unitary(Rng& rng, int dim) {
  EigenMatrix g = ginibre(rng, dim);
  Eigen::HouseholderQR<EigenMatrix> qr(g);
  EigenMatrix q = qr.householderQ();
  EigenMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the result depends only on g.
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a == 0.0) ? Complex(1.0, 0.0) : d / a;
  }
  return q;
}

Contraction random_contraction(Rng& rng, int dim, double target_norm) {
  if (!(target_norm > 0.0) || target_norm > 1.0)
    throw InvariantViolation("random_contraction: target_norm must lie in (0, 1]");
  EigenMatrix g = ginibre(rng, dim);
  const double nrm = spectral_norm(g);
  return Contraction(EigenMatrix(g * (target_norm / nrm)));
}

std::pair<Contraction, Contraction> random_contraction_pair(Rng& rng, int dim,
                                                            double target_norm) {
  Contraction a = random_contraction(rng, dim, target_norm);
  Contraction b = random_contraction(rng, dim, target_norm);
  return {std::move(a), std::move(b)};
}

ComplexMatrix random_dissipative(Rng& rng, int dim, double margin) {
  if (!(margin > 0.0)) throw InvariantViolation("random_dissipative: margin must be positive");
  EigenMatrix h = ginibre(rng, dim);
  h = EigenMatrix(0.5 * (h + h.adjoint()));
  EigenMatrix g = ginibre(rng, dim);
  EigenMatrix pos = EigenMatrix(g.adjoint() * g) / static_cast<double>(dim)
      + margin * EigenMatrix::Identity(dim, dim);
  return ComplexMatrix(EigenMatrix(h + Complex(0.0, 1.0) * pos));
}

} // namespace kreinshift
