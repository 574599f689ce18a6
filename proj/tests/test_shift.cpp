#include <doctest.h>

#include <cmath>
#include <vector>

#include "kreinshift/rng.hpp"
#include "kreinshift/shift.hpp"
#include "test_util.hpp"

using namespace kreinshift;
using test_util::kI;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

ContractionPath random_path(Rng& rng, int dim, double norm = 0.9) {
  auto [t0, t1] = random_contraction_pair(rng, dim, norm);
  return {t0, t1};
}

Complex scalar_coeff(Complex a1, Complex a0, int k) {
  return (std::pow(a1, k) - std::pow(a0, k)) / (kTwoPi * kI * static_cast<double>(k));
}

} // namespace

TEST_CASE("scalar density summaries") {
  std::vector<Complex> s(16, Complex(0.5, -0.5));
  const ScalarDensity d(s);
  CHECK(std::abs(d.mass() - Complex(0.5, -0.5)) <= 1e-14);
  CHECK(d.total_variation() == doctest::Approx(std::abs(Complex(0.5, -0.5))).epsilon(1e-13));
  CHECK_THROWS_AS(ScalarDensity(std::vector<Complex>(10, 0.0)), InvariantViolation);
}

TEST_CASE("nu_t density against the scalar Poisson oracle") {
  const double a = 0.6;
  const ContractionPath p{Contraction(ComplexMatrix::zero(1)),
                          Contraction(ComplexMatrix::diagonal({a}))};
  for (double t : {0.0, 0.3, 0.8}) {
    const ScalarDensity n = nu_t_density(p, t, 128);
    for (int j = 0; j < 128; j += 11) {
      const Complex zeta = n.point(j);
      const double ta = t * a;
      const Complex want = a * (1.0 - ta * ta) / std::norm(1.0 - std::conj(zeta) * ta);
      CHECK(std::abs(n.sample(j) - want) <= 1e-12);
    }
  }
}

TEST_CASE("nu_t of an equal pair vanishes identically") {
  Rng rng(61);
  const Contraction t = random_contraction(rng, 3, 0.8);
  const ContractionPath p{t, t};
  const ScalarDensity n = nu_t_density(p, 0.5, 64);
  for (int j = 0; j < 64; ++j) CHECK(n.sample(j) == Complex(0.0));
}

TEST_CASE("nu mass equals the trace of the difference") {
  Rng rng(62);
  const ContractionPath p = random_path(rng, 4);
  const Complex want = p.delta().trace();

  const ScalarDensity nt = nu_t_density(p, 0.4, 512);
  CHECK(std::abs(nt.mass() - want) <= 1e-10);

  const ScalarDensity n = nu_density(p, 512, 16);
  CHECK(std::abs(n.mass() - want) <= 1e-10);

  // Mass bound from trace(delta E(T)).
  CHECK(std::abs(n.mass()) <= p.delta_nuclear() * (1.0 + 1e-6));
}

TEST_CASE("measure-form trace identity on pinned pairs") {
  // Diagonal power oracle: (0.6^3 - 0.5^3) + (0.1^3 - 0.2^3) = 0.084.
  const ContractionPath diag{Contraction(ComplexMatrix::diagonal({0.5, 0.2})),
                             Contraction(ComplexMatrix::diagonal({0.6, 0.1}))};
  const TraceCheck c3 = trace_formula_nu(AnalyticFunction::monomial(3), diag, 512, 32);
  CHECK(std::abs(c3.lhs - Complex(0.084)) <= 1e-12);
  CHECK(c3.residual <= 1e-8);

  // f constant: both sides vanish.
  const TraceCheck c0 = trace_formula_nu(AnalyticFunction::constant(3.0), diag, 64, 8);
  CHECK(std::abs(c0.lhs) <= 1e-14);
  CHECK(std::abs(c0.rhs) <= 1e-14);

  // f = z: mass identity.
  Rng rng(63);
  const ContractionPath p = random_path(rng, 3);
  const TraceCheck c1 = trace_formula_nu(AnalyticFunction::monomial(1), p, 512, 32);
  CHECK(std::abs(c1.lhs - p.delta().trace()) <= 1e-12);
  CHECK(c1.residual <= 1e-10);

  // Scalar cross-check for f = z^2: rhs equals trace(T1^2 - T0^2) = 1/4.
  const ContractionPath s{Contraction(ComplexMatrix::zero(1)),
                          Contraction(ComplexMatrix::diagonal({0.5}))};
  const TraceCheck c2 = trace_formula_nu(AnalyticFunction::monomial(2), s, 256, 32);
  CHECK(std::abs(c2.rhs - Complex(0.25)) <= 1e-10);
}

TEST_CASE("shift function construction and sampling identities") {
  Rng rng(64);
  const ContractionPath p = random_path(rng, 4);
  const int truncation = 32, m = 256;
  const SpectralShiftFunction xi = xi_fourier(p, truncation, m);
  CHECK(xi.truncation() == truncation);
  CHECK(xi.grid_size() == m);
  CHECK(SpectralShiftFunction::kNormalization == "anti-analytic");

  // Grid projection reproduces the coefficients: (1/M) sum xi(zeta_j) zeta_j^k.
  for (int k = 1; k <= truncation; ++k) {
    Complex proj = 0.0;
    for (int j = 0; j < m; ++j) {
      const Complex zeta = std::polar(1.0, kTwoPi * j / m);
      proj += xi.samples()[static_cast<std::size_t>(j)] * std::pow(zeta, k);
    }
    proj /= static_cast<double>(m);
    CHECK(std::abs(proj - xi.coefficient(k)) <= 1e-10);
  }

  CHECK_THROWS_AS(SpectralShiftFunction(std::vector<Complex>(100, 0.0), 256), GridTooCoarse);
  CHECK_THROWS_AS(xi.coefficient(0), InvariantViolation);
  CHECK_THROWS_AS(xi.coefficient(truncation + 1), InvariantViolation);
  CHECK_THROWS_AS(xi.eval(Complex(1.5, 0.0)), DomainError);
}

TEST_CASE("fourier route against the scalar power oracle") {
  const ContractionPath p{Contraction(ComplexMatrix::zero(1)),
                          Contraction(ComplexMatrix::diagonal({0.5}))};
  const SpectralShiftFunction xi = xi_fourier(p, 20, 256);
  for (int k = 1; k <= 20; ++k) {
    const Complex want = std::pow(0.5, k) / (kTwoPi * kI * static_cast<double>(k));
    CHECK(std::abs(xi.coefficient(k) - want) <= 1e-14);
  }

  // Equal pair: canonical xi is identically zero.
  Rng rng(65);
  const Contraction t = random_contraction(rng, 3, 0.9);
  const SpectralShiftFunction z = xi_fourier({t, t}, 10, 64);
  for (int k = 1; k <= 10; ++k) CHECK(z.coefficient(k) == Complex(0.0));
}

TEST_CASE("unitary pair coefficients are arc-indicator Fourier data") {
  // (e^{i pi/2}, 1) through the regularization ladder; the exact
  // coefficients are (e^{ik pi/2} - 1)/(2 pi i k).
  const Contraction u1(ComplexMatrix::diagonal({std::polar(1.0, M_PI / 2.0)}));
  const Contraction u0(ComplexMatrix::diagonal({1.0}));
  const SpectralShiftFunction xi =
      xi_fourier_extrapolated(u0, u1, 10, {0.9, 0.99, 0.999}, 256);
  for (int k = 1; k <= 10; ++k) {
    const Complex want = scalar_coeff(std::polar(1.0, M_PI / 2.0), 1.0, k);
    CHECK(std::abs(xi.coefficient(k) - want) <= 1e-3);
  }
  // k = 1 pinned value (i - 1)/(2 pi i).
  CHECK(std::abs(xi.coefficient(1) - (kI - 1.0) / (kTwoPi * kI)) <= 1e-3);
}

TEST_CASE("extrapolated route agrees with the direct route on strict pairs") {
  Rng rng(66);
  const ContractionPath p = random_path(rng, 4);
  const SpectralShiftFunction direct = xi_fourier(p, 16, 256);
  const SpectralShiftFunction ladder =
      xi_fourier_extrapolated(p.t0(), p.t1(), 16, {0.9, 0.99, 0.999}, 256);
  for (int k = 1; k <= 16; ++k)
    CHECK(std::abs(direct.coefficient(k) - ladder.coefficient(k)) <= 1e-6);
}

TEST_CASE("density route coefficients match the fourier route") {
  // Scalar pinned pair first.
  const ContractionPath s{Contraction(ComplexMatrix::zero(1)),
                          Contraction(ComplexMatrix::diagonal({0.5}))};
  const SpectralShiftFunction from_nu = xi_from_nu(nu_density(s, 512, 32), 20);
  for (int k = 1; k <= 20; ++k) {
    const Complex want = std::pow(0.5, k) / (kTwoPi * kI * static_cast<double>(k));
    CHECK(std::abs(from_nu.coefficient(k) - want) <= 1e-10);
  }

  // Random pair, dual-construction consistency.
  Rng rng(67);
  const ContractionPath p = random_path(rng, 4);
  const SpectralShiftFunction nu_route = xi_from_nu(nu_density(p, 512, 32), 50);
  const SpectralShiftFunction fourier_route = xi_fourier(p, 50, 512);
  for (int k = 1; k <= 50; ++k)
    CHECK(std::abs(nu_route.coefficient(k) - fourier_route.coefficient(k)) <= 1e-6);

  CHECK_THROWS_AS(xi_from_nu(nu_density(s, 64, 8), 20), GridTooCoarse);
}

TEST_CASE("coefficient decay and perturbation bounds") {
  Rng rng(68);
  for (int rep = 0; rep < 5; ++rep) {
    const ContractionPath p = random_path(rng, 5);
    const SpectralShiftFunction xi = xi_fourier(p, 40, 256);
    const double gamma = std::max(p.t0().norm(), p.t1().norm());
    for (int k = 1; k <= 40; ++k) {
      const double ck = std::abs(xi.coefficient(k));
      CHECK(ck <= p.delta_nuclear() / kTwoPi + 1e-12);
      CHECK(ck <= std::pow(gamma, k - 1) * p.delta_nuclear() / kTwoPi + 1e-12);
    }
  }
}

TEST_CASE("adding analytic polynomials does not move the projection") {
  Rng rng(69);
  const ContractionPath p = random_path(rng, 3);
  const int m = 256;
  const SpectralShiftFunction xi = xi_fourier(p, 20, m);

  // Perturb the samples by an analytic polynomial of degree 5 and reproject
  // on the grid; the anti-analytic coefficients are untouched.
  std::vector<Complex> perturbed = xi.samples();
  for (int j = 0; j < m; ++j) {
    const Complex zeta = std::polar(1.0, kTwoPi * j / m);
    Complex poly = 0.0;
    for (int d = 0; d <= 5; ++d)
      poly += Complex(0.3 + d, -0.1 * d) * std::pow(zeta, d);
    perturbed[static_cast<std::size_t>(j)] += poly;
  }
  for (int k = 1; k <= 20; ++k) {
    Complex proj = 0.0;
    for (int j = 0; j < m; ++j)
      proj += perturbed[static_cast<std::size_t>(j)] * std::pow(std::polar(1.0, kTwoPi * j / m), k);
    proj /= static_cast<double>(m);
    CHECK(std::abs(proj - xi.coefficient(k)) <= 1e-10);
  }
}

TEST_CASE("coefficient-form trace identity") {
  // Pinned diagonal pair, f = sum_{k<=5} z^k / k.
  const ContractionPath diag{Contraction(ComplexMatrix::diagonal({0.5, 0.2})),
                             Contraction(ComplexMatrix::diagonal({0.6, 0.1}))};
  std::vector<Complex> c(6, 0.0);
  for (int k = 1; k <= 5; ++k) c[static_cast<std::size_t>(k)] = 1.0 / k;
  const AnalyticFunction f(c);
  const SpectralShiftFunction xi = xi_fourier(diag, 10, 64);
  const TraceCheck chk = verify_trace_formula_xi(f, diag, xi);
  CHECK(chk.residual <= 1e-10);

  // f = z^2 unwinds to 4 pi i c_2.
  const TraceCheck c2 = verify_trace_formula_xi(AnalyticFunction::monomial(2), diag, xi);
  CHECK(std::abs(c2.rhs - 2.0 * kTwoPi * kI * xi.coefficient(2)) <= 1e-14);
  CHECK(std::abs(c2.lhs - (0.36 + 0.01 - 0.25 - 0.04)) <= 1e-14);

  // Constant: zero on both sides.
  const TraceCheck c0 = verify_trace_formula_xi(AnalyticFunction::constant(5.0), diag, xi);
  CHECK(std::abs(c0.lhs) + std::abs(c0.rhs) <= 1e-14);

  // Degree above the truncation is rejected.
  CHECK_THROWS_AS(verify_trace_formula_xi(AnalyticFunction::monomial(11), diag, xi),
                  DegreeExceedsTruncation);

  // Random strict pairs: residual at power-trace roundoff scale.
  Rng rng(70);
  for (int rep = 0; rep < 5; ++rep) {
    const ContractionPath p = random_path(rng, 5);
    const SpectralShiftFunction x = xi_fourier(p, 12, 64);
    const TraceCheck chk2 = verify_trace_formula_xi(AnalyticFunction::monomial(8), p, x);
    CHECK(chk2.residual <= 1e-8);
  }
}

TEST_CASE("imaginary sign statistics are reported") {
  const ContractionPath p{Contraction(ComplexMatrix::diagonal({0.5})),
                          Contraction(ComplexMatrix::diagonal({std::polar(1.0, 1.0)}))};
  const SpectralShiftFunction xi = xi_fourier(p, 16, 128);
  const ImSignStats st = im_sign_stats(xi);
  CHECK(st.frac_positive >= 0.0);
  CHECK(st.frac_negative >= 0.0);
  CHECK(st.frac_positive + st.frac_negative <= 1.0 + 1e-12);
  CHECK(st.max_abs_im >= 0.0);
}
