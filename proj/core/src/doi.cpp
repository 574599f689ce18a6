#include "kreinshift/doi.hpp"

#include <vector>

#include "kreinshift/parallel.hpp"
#include "kreinshift/quadrature.hpp"

namespace kreinshift {

ContractionPath::ContractionPath(Contraction t0, Contraction t1)
    : t0_(std::move(t0)), t1_(std::move(t1)),
      delta_(t1_.matrix() - t0_.matrix()),
      delta_nuclear_(nuclear_norm(delta_)) {
  if (t0_.dim() != t1_.dim()) throw GridMismatch("ContractionPath: endpoint dimensions differ");
}

Contraction ContractionPath::at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("ContractionPath::at: t must lie in [0, 1]");
  return Contraction(EigenMatrix(t0_.mat() + t * delta_.mat()));
}

namespace {

void check_doi_shapes(const SemiSpectralDensity& d1, const ComplexMatrix& q,
                      const SemiSpectralDensity& d2) {
  if (d1.grid_size() != d2.grid_size()) throw GridMismatch("doi: grid sizes differ");
  if (d1.dim() != d2.dim() || q.dim() != d1.dim())
    throw GridMismatch("doi: operator dimensions differ");
}

} // namespace

ComplexMatrix doi_indexed(const IndexedSymbol& phi, const SemiSpectralDensity& d1,
                          const ComplexMatrix& q, const SemiSpectralDensity& d2) {
  check_doi_shapes(d1, q, d2);
  const int m = d1.grid_size();
  const int n = d1.dim();

  // Stack vec(K2_k) as columns; the inner sum over k for every j becomes one
  // complex GEMM per chunk of j's: S_cols = V * Phi_chunk.
  EigenMatrix v(n * n, m);
  for (int k = 0; k < m; ++k)
    v.col(k) = Eigen::Map<const Eigen::VectorXcd>(d2.density(k).data(), n * n);

  // Left factors A_j = K1_j Q.
  std::vector<EigenMatrix> left(static_cast<std::size_t>(m));
  parallel_chunks(static_cast<std::size_t>(m), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t j = b; j < e; ++j) left[j] = d1.density(static_cast<int>(j)) * q.mat();
  });

  std::vector<EigenMatrix> partial(kChunkCount, EigenMatrix::Zero(n, n));
  parallel_chunks(static_cast<std::size_t>(m), [&](std::size_t b, std::size_t e, std::size_t c) {
    const Eigen::Index width = static_cast<Eigen::Index>(e - b);
    EigenMatrix phi_cols(m, width);
    for (std::size_t j = b; j < e; ++j)
      for (int k = 0; k < m; ++k)
        phi_cols(k, static_cast<Eigen::Index>(j - b)) = phi(static_cast<int>(j), k);
    EigenMatrix s_cols = v * phi_cols;
    EigenMatrix acc = EigenMatrix::Zero(n, n);
    for (std::size_t j = b; j < e; ++j) {
      Eigen::Map<const EigenMatrix> s(s_cols.col(static_cast<Eigen::Index>(j - b)).data(), n, n);
      acc += left[j] * s;
    }
    partial[c] = std::move(acc);
  });

  EigenMatrix total = EigenMatrix::Zero(n, n);
  for (const auto& pc : partial) total += pc;
  total /= static_cast<double>(m) * static_cast<double>(m);
  return ComplexMatrix(std::move(total));
}

ComplexMatrix doi(const Symbol& phi, const SemiSpectralDensity& d1, const ComplexMatrix& q,
                  const SemiSpectralDensity& d2) {
  check_doi_shapes(d1, q, d2);
  const int m = d1.grid_size();
  return doi_indexed([&](int j, int k) { return phi(circle_point(j, m), circle_point(k, m)); },
                     d1, q, d2);
}

namespace {

// Divided-difference symbol over the uniform grid, with the function values
// precomputed so the separated branch costs O(1) per index pair.
class GridDividedDifference {
public:
  GridDividedDifference(const AnalyticFunction& f, int grid_size) : f_(f), m_(grid_size) {
    fz_.resize(static_cast<std::size_t>(m_));
    for (int j = 0; j < m_; ++j) fz_[static_cast<std::size_t>(j)] = f.eval(circle_point(j, m_));
  }

  Complex operator()(int j, int k) const {
    const Complex zeta = circle_point(j, m_);
    const Complex tau = circle_point(k, m_);
    if (std::abs(zeta - tau) >= kConfluentThreshold)
      return (fz_[static_cast<std::size_t>(j)] - fz_[static_cast<std::size_t>(k)]) / (zeta - tau);
    return f_.divided_difference(zeta, tau);
  }

private:
  const AnalyticFunction& f_;
  int m_;
  std::vector<Complex> fz_;
};

} // namespace

ComplexMatrix path_derivative(const AnalyticFunction& f, const ContractionPath& p, double t,
                              int grid_size) {
  const SemiSpectralDensity d = density_grid(p.at(t), grid_size);
  const GridDividedDifference dd(f, grid_size);
  return doi_indexed([&](int j, int k) { return dd(j, k); }, d, p.delta(), d);
}

ComplexMatrix increment(const AnalyticFunction& f, const ContractionPath& p, int grid_size) {
  const SemiSpectralDensity d1 = density_grid(p.t1(), grid_size);
  const SemiSpectralDensity d0 = density_grid(p.t0(), grid_size);
  const GridDividedDifference dd(f, grid_size);
  return doi_indexed([&](int j, int k) { return dd(j, k); }, d1, p.delta(), d0);
}

double bochner_check(const AnalyticFunction& f, const ContractionPath& p, int grid_size,
                     int t_nodes) {
  const QuadratureRule rule = gauss_legendre(t_nodes);
  EigenMatrix acc = EigenMatrix::Zero(p.dim(), p.dim());
  for (int q = 0; q < t_nodes; ++q) {
    const std::size_t uq = static_cast<std::size_t>(q);
    acc += rule.weights[uq] * path_derivative(f, p, rule.nodes[uq], grid_size).mat();
  }
  acc -= (matfun(f, p.t1()) - matfun(f, p.t0())).mat();
  return spectral_norm(acc);
}

} // namespace kreinshift
