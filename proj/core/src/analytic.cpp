#include "kreinshift/analytic.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "kreinshift/rng.hpp"

namespace kreinshift {

namespace {

constexpr double kEvalSlack = 1e-9;

void check_disc(Complex z, const char* who) {
  if (std::abs(z) > 1.0 + kEvalSlack) {
    std::ostringstream os;
    os << who << ": |z| = " << std::abs(z) << " lies outside the closed unit disc";
    throw DomainError(os.str());
  }
}

} // namespace

AnalyticFunction::AnalyticFunction(std::vector<Complex> coeffs, double radius)
    : coeffs_(std::move(coeffs)), radius_(radius) {
  if (coeffs_.empty()) throw InvariantViolation("AnalyticFunction: empty coefficient list");
  for (const Complex& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvariantViolation("AnalyticFunction: non-finite coefficient");
  if (!(radius_ > 1.0))
    throw InvariantViolation("AnalyticFunction: radius of convergence must exceed 1");
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

AnalyticFunction AnalyticFunction::constant(Complex c) { return AnalyticFunction({c}); }

AnalyticFunction AnalyticFunction::monomial(int k, Complex a) {
  if (k < 0) throw InvariantViolation("monomial: need k >= 0");
  std::vector<Complex> c(static_cast<std::size_t>(k) + 1, Complex(0.0));
  c.back() = a;
  return AnalyticFunction(std::move(c));
}

AnalyticFunction AnalyticFunction::exp_partial_sum(int degree) {
  if (degree < 0) throw InvariantViolation("exp_partial_sum: need degree >= 0");
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  double fact = 1.0;
  c[0] = 1.0;
  for (int k = 1; k <= degree; ++k) {
    fact *= k;
    c[static_cast<std::size_t>(k)] = 1.0 / fact;
  }
  return AnalyticFunction(std::move(c));
}

AnalyticFunction AnalyticFunction::truncated_geometric(double q, int degree) {
  if (!(q > 0.0 && q < 1.0)) throw InvariantViolation("truncated_geometric: need 0 < q < 1");
  if (degree < 0) throw InvariantViolation("truncated_geometric: need degree >= 0");
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  double p = 1.0;
  for (int k = 0; k <= degree; ++k) {
    c[static_cast<std::size_t>(k)] = p;
    p *= q;
  }
  return AnalyticFunction(std::move(c), 1.0 / q);
}

double AnalyticFunction::ol_certificate() const {
  double s = 0.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) s += static_cast<double>(k) * std::abs(coeffs_[k]);
  return s;
}

Complex AnalyticFunction::eval(Complex z) const {
  check_disc(z, "eval");
  Complex acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

Complex AnalyticFunction::eval_deriv(Complex z) const {
  check_disc(z, "eval_deriv");
  const int d = degree();
  if (d == 0) return 0.0;
  Complex acc = static_cast<double>(d) * coeffs_.back();
  for (int k = d - 1; k >= 1; --k)
    acc = acc * z + static_cast<double>(k) * coeffs_[static_cast<std::size_t>(k)];
  return acc;
}

Complex AnalyticFunction::divided_difference(Complex zeta, Complex tau) const {
  check_disc(zeta, "divided_difference");
  check_disc(tau, "divided_difference");
  if (std::abs(zeta - tau) >= kConfluentThreshold)
    return (eval(zeta) - eval(tau)) / (zeta - tau);
  // Confluent form: sum_k a_k s_k with s_k = sum_{j<k} zeta^j tau^{k-1-j},
  // s_{k+1} = tau s_k + zeta^k. Continuous across the switch and exact at
  // zeta == tau where it equals f'(zeta).
  Complex acc = 0.0;
  Complex s = 0.0;
  Complex zpow = 1.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    s = tau * s + zpow;
    zpow *= zeta;
    acc += coeffs_[k] * s;
  }
  return acc;
}

AnalyticFunction AnalyticFunction::derivative() const {
  if (degree() == 0) return AnalyticFunction({Complex(0.0)}, radius_ == kInfiniteRadius ? kInfiniteRadius : radius_);
  std::vector<Complex> c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    c[k - 1] = static_cast<double>(k) * coeffs_[k];
  return AnalyticFunction(std::move(c), radius_);
}

AnalyticFunction AnalyticFunction::operator+(const AnalyticFunction& o) const {
  std::vector<Complex> c(std::max(coeffs_.size(), o.coeffs_.size()), Complex(0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return AnalyticFunction(std::move(c), std::min(radius_, o.radius_));
}

AnalyticFunction AnalyticFunction::operator*(const AnalyticFunction& o) const {
  std::vector<Complex> c(coeffs_.size() + o.coeffs_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return AnalyticFunction(std::move(c), std::min(radius_, o.radius_));
}

namespace {

// Bound on the neglected series tail sum_{k > d} |a_k| ||T^k|| under the
// coefficient model |a_k| <= A rho_f^{-k}, using
// ||T^k|| <= sum_{j < n} C(k, j) rho_T^{k-j} ||N||^j with N the strictly
// upper part of the Schur form. Throws when the bound cannot be certified
// below 1e-12 within the term cap.
void check_tail(const AnalyticFunction& f, const Contraction& t) {
  constexpr double kTailTol = 1e-12;
  constexpr long kTermCap = 100000;

  Eigen::ComplexSchur<EigenMatrix> schur(t.mat(), false);
  const EigenMatrix& s = schur.matrixT();
  const int n = t.dim();
  double rho = 0.0;
  for (int i = 0; i < n; ++i) rho = std::max(rho, std::abs(s(i, i)));
  EigenMatrix nil = s;
  for (int i = 0; i < n; ++i) nil(i, i) = 0.0;
  const double nn = nil.norm();

  const double rho_f = f.radius();
  if (rho >= rho_f * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "matfun: spectral radius " << rho << " reaches the declared radius " << rho_f;
    throw ConvergenceError(os.str());
  }

  double scale = 0.0;
  const auto& a = f.coeffs();
  for (std::size_t k = 0; k < a.size(); ++k)
    scale = std::max(scale, std::abs(a[k]) * std::pow(rho_f, static_cast<double>(k)));

  const int d = f.degree();
  double tail = 0.0;
  for (long k = d + 1; k <= kTermCap; ++k) {
    double binom = 1.0;
    double bound = 0.0;
    for (int j = 0; j <= std::min<long>(k, n - 1); ++j) {
      if (j > 0) binom *= static_cast<double>(k - j + 1) / static_cast<double>(j);
      bound += binom * std::pow(rho, static_cast<double>(k - j)) * std::pow(nn, j);
    }
    const double term = scale * std::pow(rho_f, -static_cast<double>(k)) * bound;
    tail += term;
    if (term < 1e-22 && k > d + n) break;
    if (k == kTermCap && tail > kTailTol) {
      std::ostringstream os;
      os << "matfun: series tail bound " << tail << " not certified below " << kTailTol;
      throw ConvergenceError(os.str());
    }
  }
  if (tail > kTailTol) {
    std::ostringstream os;
    os << "matfun: series tail bound " << tail << " exceeds " << kTailTol;
    throw ConvergenceError(os.str());
  }
}

} // namespace

ComplexMatrix matfun(const AnalyticFunction& f, const Contraction& t) {
  if (f.radius() != kInfiniteRadius) check_tail(f, t);
  const auto& a = f.coeffs();
  const int n = t.dim();
  const EigenMatrix id = EigenMatrix::Identity(n, n);
  EigenMatrix acc = a.back() * id;
  for (std::size_t k = a.size() - 1; k-- > 0;) acc = EigenMatrix(acc * t.mat()) + a[k] * id;
  return ComplexMatrix(std::move(acc));
}

double ol_lower_bound(const AnalyticFunction& f, int dim, int trials, std::uint64_t seed) {
  if (dim < 1 || trials < 1) throw InvariantViolation("ol_lower_bound: need dim, trials >= 1");
  Rng rng(seed);
  double best = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    EigenMatrix a, b;
    switch (trial % 3) {
      case 0: {
        // Nearby scalar pair on the circle; the ratio approaches |f'|.
        const double theta = 2.0 * M_PI * rng.uniform();
        const double eps = 1e-4;
        const Complex z = std::polar(1.0, theta);
        const Complex w = std::polar(1.0, theta + eps);
        a = z * EigenMatrix::Identity(dim, dim);
        b = w * EigenMatrix::Identity(dim, dim);
        break;
      }
      case 1: {
        // Small generic perturbation of a random contraction.
        Contraction base = random_contraction(rng, dim, 0.95);
        EigenMatrix g = ginibre(rng, dim);
        a = base.mat();
        b = a + (1e-5 / spectral_norm(g)) * g;
        break;
      }
      default: {
        // Radial pair.
        Contraction base = random_contraction(rng, dim, 1.0);
        a = base.mat();
        b = 0.999 * a;
        break;
      }
    }
    const double sep = spectral_norm(EigenMatrix(a - b));
    if (sep == 0.0) continue;
    Contraction ca{a}, cb{b};
    const double num = spectral_norm((matfun(f, ca) - matfun(f, cb)).mat());
    best = std::max(best, num / sep);
  }
  return best;
}

} // namespace kreinshift
