#include <doctest.h>

#include <cmath>
#include <vector>

#include "kreinshift/analytic.hpp"
#include "kreinshift/rng.hpp"
#include "test_util.hpp"

using namespace kreinshift;
using test_util::kI;
using test_util::m2;
using test_util::mat_err;

TEST_CASE("polynomial evaluation and derivative") {
  const AnalyticFunction z2 = AnalyticFunction::monomial(2);
  CHECK(std::abs(z2.eval(kI) - Complex(-1.0)) <= 1e-15);

  const AnalyticFunction z3 = AnalyticFunction::monomial(3);
  CHECK(std::abs(z3.eval_deriv(1.0) - Complex(3.0)) <= 1e-15);

  // Geometric sum: sum_{k<=10} (z/2)^k at z = 1 equals 2 - 2^{-10}.
  std::vector<Complex> g(11);
  for (int k = 0; k <= 10; ++k) g[static_cast<std::size_t>(k)] = std::pow(0.5, k);
  const AnalyticFunction f(g);
  CHECK(std::abs(f.eval(1.0) - (2.0 - std::pow(2.0, -10))) <= 1e-14);

  CHECK_THROWS_AS(z2.eval(Complex(1.5, 0.0)), DomainError);
  CHECK_THROWS_AS(z2.eval_deriv(Complex(0.0, 1.2)), DomainError);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(AnalyticFunction(std::vector<Complex>{}), InvariantViolation);
  CHECK_THROWS_AS(AnalyticFunction({1.0}, 0.5), InvariantViolation);
  CHECK_THROWS_AS(AnalyticFunction::truncated_geometric(1.5, 4), InvariantViolation);
  // Trailing zeros are trimmed, degree reflects the true leading term.
  const AnalyticFunction t({1.0, 2.0, 0.0, 0.0});
  CHECK(t.degree() == 1);
}

TEST_CASE("divided difference, separated and confluent") {
  const AnalyticFunction z2 = AnalyticFunction::monomial(2);
  CHECK(std::abs(z2.divided_difference(1.0, kI) - (Complex(1.0) + kI)) <= 1e-14);

  const AnalyticFunction z3 = AnalyticFunction::monomial(3);
  CHECK(std::abs(z3.divided_difference(1.0, -1.0) - Complex(1.0)) <= 1e-14);

  // Confluent limit equals the derivative.
  std::vector<Complex> c{0.3, -0.2, 1.0, 0.5};
  const AnalyticFunction f(c);
  CHECK(std::abs(f.divided_difference(1.0, 1.0) - f.eval_deriv(1.0)) <= 1e-13);

  // Both branches stay accurate at the confluent switch: compare against the
  // explicit sum a_k sum_{j<k} zeta^j tau^{k-1-j} on either side.
  const Complex zeta = std::polar(1.0, 0.7);
  const auto reference = [&](Complex tau) {
    Complex acc = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k)
      for (std::size_t j = 0; j < k; ++j)
        acc += c[k] * std::pow(zeta, j) * std::pow(tau, k - 1 - j);
    return acc;
  };
  const Complex near = zeta * std::polar(1.0, 0.9e-6);
  const Complex far = zeta * std::polar(1.0, 1.1e-6);
  CHECK(std::abs(f.divided_difference(zeta, near) - reference(near)) <= 1e-9);
  CHECK(std::abs(f.divided_difference(zeta, far) - reference(far)) <= 1e-9);

  // Symmetry is exact in both branches.
  CHECK(f.divided_difference(0.5, -0.25) == f.divided_difference(-0.25, 0.5));
  CHECK(f.divided_difference(zeta, near) == f.divided_difference(near, zeta));

  CHECK_THROWS_AS(f.divided_difference(Complex(2.0, 0.0), 0.0), DomainError);
}

TEST_CASE("matfun on pinned matrices") {
  const AnalyticFunction z2 = AnalyticFunction::monomial(2);
  const Contraction nil(ComplexMatrix(m2(0, 1, 0, 0)));
  CHECK(spectral_norm(matfun(z2, nil)) <= 1e-15);

  const AnalyticFunction one = AnalyticFunction::constant(1.0);
  Rng rng(31);
  const Contraction t = random_contraction(rng, 4, 0.8);
  CHECK(mat_err(matfun(one, t).mat(), EigenMatrix::Identity(4, 4)) <= 1e-15);

  const AnalyticFunction z3 = AnalyticFunction::monomial(3);
  const Contraction d(ComplexMatrix::diagonal({0.5, kI / 3.0}));
  const ComplexMatrix v = matfun(z3, d);
  CHECK(std::abs(v(0, 0) - Complex(0.125)) <= 1e-15);
  CHECK(std::abs(v(1, 1) - (-kI / 27.0)) <= 1e-15);
}

TEST_CASE("matfun certifies the neglected series tail") {
  const Contraction t(ComplexMatrix::diagonal({0.9, 0.5, 0.3, 0.1}));

  // Long truncation: certified tail below 1e-12, value close to the summed
  // geometric series on the spectrum.
  const AnalyticFunction good = AnalyticFunction::truncated_geometric(0.8, 120);
  const ComplexMatrix v = matfun(good, t);
  CHECK(std::abs(v(0, 0) - 1.0 / (1.0 - 0.8 * 0.9)) <= 1e-10);

  // Short truncation of the same series: the declared radius forces a tail
  // bound around (0.8 * 0.9)^21, far above certification.
  const AnalyticFunction bad = AnalyticFunction::truncated_geometric(0.8, 20);
  CHECK_THROWS_AS(matfun(bad, t), ConvergenceError);

  // Polynomials (infinite declared radius) never tail-check.
  const AnalyticFunction poly({0.0, 1.0, 2.0});
  CHECK_NOTHROW(matfun(poly, Contraction(ComplexMatrix::diagonal({1.0}))));
}

TEST_CASE("matfun is multiplicative on polynomials") {
  Rng rng(33);
  for (int rep = 0; rep < 5; ++rep) {
    const Contraction t = random_contraction(rng, 5, 0.9);
    std::vector<Complex> ca{0.2, rng.complex_normal(), rng.complex_normal()};
    std::vector<Complex> cb{rng.complex_normal(), 0.5, rng.complex_normal()};
    const AnalyticFunction a(ca), b(cb);
    const ComplexMatrix lhs = matfun(a * b, t);
    const ComplexMatrix rhs = matfun(a, t) * matfun(b, t);
    const double scale = 1.0 + spectral_norm(lhs);
    CHECK(mat_err(lhs.mat(), rhs.mat()) <= 1e-10 * scale);
  }
}

TEST_CASE("von Neumann bound on a circle grid") {
  Rng rng(34);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<Complex> c(6);
    for (auto& x : c) x = rng.complex_normal();
    const AnalyticFunction f(c);
    const Contraction t = random_contraction(rng, 5, 1.0);
    double sup = 0.0;
    for (int j = 0; j < 4096; ++j)
      sup = std::max(sup, std::abs(f.eval(std::polar(1.0, 2.0 * M_PI * j / 4096.0))));
    CHECK(spectral_norm(matfun(f, t)) <= sup + 1e-8);
  }
}

TEST_CASE("operator Lipschitz certificate and sampler") {
  const AnalyticFunction id = AnalyticFunction::monomial(1);
  CHECK(ol_lower_bound(id, 3, 50, 5) == doctest::Approx(1.0).epsilon(1e-9));

  const AnalyticFunction c = AnalyticFunction::constant(2.0);
  CHECK(ol_lower_bound(c, 3, 50, 5) == doctest::Approx(0.0).epsilon(1e-12));

  // sup ratio of z^2 over the ball is 2; sampling approaches from below.
  const AnalyticFunction z2 = AnalyticFunction::monomial(2);
  const double lb = ol_lower_bound(z2, 2, 10000, 17);
  CHECK(lb >= 1.9);
  CHECK(lb <= 2.0 + 1e-8);

  // Monotone in trials for a fixed seed, never above the certificate.
  Rng rng(35);
  std::vector<Complex> coeffs(7);
  for (auto& x : coeffs) x = rng.complex_normal();
  const AnalyticFunction f(coeffs);
  double prev = 0.0;
  for (int trials : {10, 100, 1000}) {
    const double v = ol_lower_bound(f, 3, trials, 23);
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
  CHECK(prev <= f.ol_certificate() + 1e-8);
  double cert = 0.0;
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    cert += static_cast<double>(k) * std::abs(f.coeffs()[k]);
  CHECK(f.ol_certificate() == doctest::Approx(cert).epsilon(1e-12));
}

TEST_CASE("derivative and arithmetic of coefficient lists") {
  const AnalyticFunction f({1.0, 2.0, 3.0});
  const AnalyticFunction df = f.derivative();
  CHECK(df.degree() == 1);
  CHECK(std::abs(df.eval(0.5) - (2.0 + 6.0 * 0.5)) <= 1e-14);

  const AnalyticFunction g({0.0, 1.0});
  const AnalyticFunction s = f + g;
  CHECK(std::abs(s.eval(0.5) - (f.eval(0.5) + g.eval(0.5))) <= 1e-14);
  const AnalyticFunction p = f * g;
  CHECK(std::abs(p.eval(0.5) - f.eval(0.5) * g.eval(0.5)) <= 1e-14);
}
