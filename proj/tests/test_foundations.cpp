#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "kreinshift/matrix.hpp"
#include "kreinshift/parallel.hpp"
#include "kreinshift/quadrature.hpp"
#include "kreinshift/rng.hpp"
#include "test_util.hpp"

using namespace kreinshift;
using test_util::kI;
using test_util::m2;
using test_util::mat_err;

TEST_CASE("spectral norm on pinned matrices") {
  CHECK(spectral_norm(ComplexMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_norm(ComplexMatrix::zero(4)) == doctest::Approx(0.0).epsilon(1e-12));
  // Frozen against sqrt of the max eigenvalue of M*M from the characteristic
  // polynomial: M*M = diag(0, 4).
  CHECK(spectral_norm(ComplexMatrix(m2(0, 2, 0, 0))) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("nuclear norm on pinned matrices") {
  CHECK(nuclear_norm(ComplexMatrix::identity(3)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(nuclear_norm(ComplexMatrix::zero(2)) == doctest::Approx(0.0).epsilon(1e-12));
  // Normal matrix: sum of absolute eigenvalues, 1/2 + 1/3 = 5/6.
  CHECK(nuclear_norm(ComplexMatrix::diagonal({0.5, -1.0 / 3.0})) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("inverse on pinned matrices and singular rejection") {
  const ComplexMatrix d = inverse(ComplexMatrix::diagonal({2.0, 4.0}));
  CHECK(std::abs(d(0, 0) - 0.25 * 2.0) <= 1e-14);
  CHECK(std::abs(d(1, 1) - 0.25) <= 1e-14);

  // Adjugate/determinant oracle for the unipotent matrix.
  const ComplexMatrix u = inverse(ComplexMatrix(m2(1, 1, 0, 1)));
  CHECK(mat_err(u.mat(), m2(1, -1, 0, 1)) <= 1e-14);

  CHECK_THROWS_AS(inverse(ComplexMatrix::zero(3)), SingularMatrix);
}

TEST_CASE("trace commutes under products") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const EigenMatrix a = ginibre(rng, 6);
    const EigenMatrix b = ginibre(rng, 6);
    const Complex tab = EigenMatrix(a * b).trace();
    const Complex tba = EigenMatrix(b * a).trace();
    CHECK(std::abs(tab - tba) <= 1e-12 * spectral_norm(a) * spectral_norm(b) * 6.0);
  }
}

TEST_CASE("nuclear norm is subadditive") {
  Rng rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const EigenMatrix a = ginibre(rng, 5);
    const EigenMatrix b = ginibre(rng, 5);
    CHECK(nuclear_norm(EigenMatrix(a + b)) <= nuclear_norm(a) + nuclear_norm(b) + 1e-10);
  }
}

TEST_CASE("power traces match direct multiplication") {
  Rng rng(13);
  const Contraction t = random_contraction(rng, 5, 0.9);
  const std::vector<Complex> tr = power_traces(t.matrix(), 6);
  EigenMatrix p = t.mat();
  for (int k = 1; k <= 6; ++k) {
    CHECK(std::abs(tr[static_cast<std::size_t>(k - 1)] - p.trace()) <= 1e-10);
    p = EigenMatrix(p * t.mat());
  }
}

TEST_CASE("eigenvalues of a diagonal matrix") {
  const std::vector<Complex> eigs = eigenvalues(ComplexMatrix::diagonal({0.5, kI * 0.25, -0.1}));
  double best = 1e300;
  // Schur order is not pinned; match as a multiset.
  std::array<Complex, 3> want{Complex(0.5), kI * 0.25, Complex(-0.1)};
  for (const Complex w : want) {
    best = 1e300;
    for (const Complex e : eigs) best = std::min(best, std::abs(e - w));
    CHECK(best <= 1e-12);
  }
}

TEST_CASE("contraction validation and cached summaries") {
  CHECK_THROWS_AS(Contraction(ComplexMatrix::diagonal({1.1})), InvariantViolation);

  // Norm within the acceptance slack of 1 is rescaled onto the ball.
  const Contraction snug(ComplexMatrix::diagonal({1.0 + 5e-11}));
  CHECK(snug.norm() <= 1.0);

  const Contraction strict(ComplexMatrix::diagonal({0.9}));
  CHECK(strict.is_strict());
  CHECK_FALSE(strict.is_unitary());

  const Contraction boundary(ComplexMatrix::diagonal({1.0}));
  CHECK(boundary.is_unitary());
  CHECK_FALSE(boundary.is_strict());

  Rng rng(14);
  const EigenMatrix u = random_unitary(rng, 4);
  const Contraction uc{u};
  CHECK(uc.is_unitary());
  CHECK(uc.unitary_defect() <= 1e-10);

  // Radius never exceeds the norm.
  for (int rep = 0; rep < 10; ++rep) {
    const Contraction t = random_contraction(rng, 6, 0.95);
    CHECK(t.radius() <= t.norm() + 1e-12);
  }
}

TEST_CASE("unit ball is convex under path interpolation") {
  Rng rng(15);
  auto [t0, t1] = random_contraction_pair(rng, 5, 1.0);
  for (int i = 0; i <= 16; ++i) {
    const double t = static_cast<double>(i) / 16.0;
    const EigenMatrix mix = (1.0 - t) * t0.mat() + t * t1.mat();
    CHECK_NOTHROW((void)Contraction(mix));
  }
}

TEST_CASE("rng streams are reproducible and correctly scaled") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  // Fixed-seed sample moments of the normal map, loose sanity bounds.
  Rng d(8);
  double mean = 0.0, var = 0.0;
  const int n = 10000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = d.normal();
    mean += xs[static_cast<std::size_t>(i)];
  }
  mean /= n;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= n - 1;
  CHECK(std::abs(mean) <= 0.05);
  CHECK(std::abs(var - 1.0) <= 0.1);
}

TEST_CASE("random matrix factories") {
  Rng rng(21);
  const Contraction t = random_contraction(rng, 6, 0.9);
  CHECK(t.norm() == doctest::Approx(0.9).epsilon(1e-12));
  CHECK_THROWS_AS(random_contraction(rng, 3, 1.5), InvariantViolation);

  const EigenMatrix u = random_unitary(rng, 5);
  CHECK(mat_err(EigenMatrix(u.adjoint() * u), EigenMatrix::Identity(5, 5)) <= 1e-12);

  Rng r1(99), r2(99);
  CHECK(mat_err(random_unitary(r1, 4), random_unitary(r2, 4)) == 0.0);

  const ComplexMatrix l = random_dissipative(rng, 4, 0.1);
  const EigenMatrix im = (l.mat() - l.mat().adjoint()) / Complex(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<EigenMatrix> es(im);
  CHECK(es.eigenvalues().minCoeff() >= 0.1 - 1e-9);
}

TEST_CASE("parallel chunks cover the range exactly once") {
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{17}, std::size_t{1000}}) {
    std::vector<int> hits(n, 0);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> spans(kChunkCount);
    parallel_chunks(n, [&](std::size_t b, std::size_t e, std::size_t chunk) {
      spans[chunk].push_back({b, e});
      for (std::size_t i = b; i < e; ++i) hits[i] += 1;
    });
    for (std::size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
    for (const auto& s : spans) CHECK(s.size() <= 1);
  }
  CHECK(thread_cap() >= 1);
}

TEST_CASE("gauss-legendre nodes and exactness") {
  const QuadratureRule r1 = gauss_legendre(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.5).epsilon(1e-15));

  for (int n : {2, 3, 8, 32}) {
    const QuadratureRule r = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  }

  // GL3 is exact through degree 5: int_0^1 t^5 dt = 1/6.
  const QuadratureRule r3 = gauss_legendre(3);
  double v = 0.0;
  for (std::size_t i = 0; i < r3.nodes.size(); ++i)
    v += r3.weights[i] * std::pow(r3.nodes[i], 5);
  CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_legendre(0), InvariantViolation);
}

TEST_CASE("trapezoid rule on nonuniform grids") {
  const std::vector<double> x{0.0, 0.1, 0.35, 0.7, 1.0};
  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) f[i] = 3.0 * x[i] - 1.0;
  // Exact for linear integrands: int_0^1 (3t - 1) dt = 1/2.
  CHECK(trapezoid(x, f) == doctest::Approx(0.5).epsilon(1e-14));

  std::vector<Complex> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = Complex(x[i], -x[i]);
  const Complex gi = trapezoid(x, g);
  CHECK(std::abs(gi - Complex(0.5, -0.5)) <= 1e-14);

  CHECK_THROWS_AS(trapezoid(std::vector<double>{0.0, 0.0, 1.0}, std::vector<double>{1, 1, 1}),
                  InvariantViolation);
}

TEST_CASE("neville extrapolation recovers polynomial limits") {
  const std::vector<double> h{0.1, 0.01, 0.001};
  std::vector<Complex> v(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    v[i] = Complex(3.0 + 2.0 * h[i] + h[i] * h[i], -1.0 + h[i]);
  const Complex lim = extrapolate_to_zero(h, v);
  CHECK(std::abs(lim - Complex(3.0, -1.0)) <= 1e-12);

  CHECK_THROWS_AS(extrapolate_to_zero(std::vector<double>{0.1, 0.1},
                                      std::vector<Complex>{1.0, 2.0}),
                  InvariantViolation);
}
