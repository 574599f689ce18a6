#include "kreinshift/shift.hpp"

#include <cmath>
#include <sstream>

#include "kreinshift/dilation.hpp"
#include "kreinshift/parallel.hpp"
#include "kreinshift/quadrature.hpp"

namespace kreinshift {

namespace {

constexpr Complex kTwoPiI{0.0, 2.0 * M_PI};

} // namespace

ScalarDensity::ScalarDensity(std::vector<Complex> samples) : samples_(std::move(samples)) {
  if (!valid_grid_size(static_cast<int>(samples_.size())))
    throw InvariantViolation("ScalarDensity: grid size must be a power of two >= 16");
  for (const Complex& s : samples_)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw InvariantViolation("ScalarDensity: non-finite sample");
}

Complex ScalarDensity::point(int j) const { return circle_point(j, grid_size()); }

Complex ScalarDensity::mass() const {
  Complex acc = 0.0;
  for (const Complex& s : samples_) acc += s;
  return acc / static_cast<double>(grid_size());
}

double ScalarDensity::total_variation() const {
  double acc = 0.0;
  for (const Complex& s : samples_) acc += std::abs(s);
  return acc / static_cast<double>(grid_size());
}

SpectralShiftFunction::SpectralShiftFunction(std::vector<Complex> coeffs, int grid_size)
    : coeffs_(std::move(coeffs)), grid_size_(grid_size) {
  if (coeffs_.empty()) throw InvariantViolation("SpectralShiftFunction: empty coefficients");
  if (!valid_grid_size(grid_size_))
    throw InvariantViolation("SpectralShiftFunction: grid size must be a power of two >= 16");
  if (static_cast<int>(coeffs_.size()) > grid_size_ / 4)
    throw GridTooCoarse("SpectralShiftFunction: truncation exceeds grid size / 4");
  samples_.resize(static_cast<std::size_t>(grid_size_));
  for (int j = 0; j < grid_size_; ++j)
    samples_[static_cast<std::size_t>(j)] = eval(circle_point(j, grid_size_));
}

Complex SpectralShiftFunction::coefficient(int k) const {
  if (k < 1 || k > truncation())
    throw InvariantViolation("SpectralShiftFunction: coefficient index out of range");
  return coeffs_[static_cast<std::size_t>(k - 1)];
}

Complex SpectralShiftFunction::eval(Complex zeta) const {
  if (std::abs(zeta) > 1.0 + 1e-9)
    throw DomainError("SpectralShiftFunction::eval: point outside the closed disc");
  // Horner in w = conj(zeta): xi = w (c_1 + w (c_2 + ...)).
  const Complex w = std::conj(zeta);
  Complex acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * w + coeffs_[k];
  return acc * w;
}

ScalarDensity nu_t_density(const ContractionPath& p, double t, int grid_size) {
  const SemiSpectralDensity d = density_grid(p.at(t), grid_size);
  const EigenMatrix deltat = p.delta().mat().transpose();
  std::vector<Complex> samples(static_cast<std::size_t>(grid_size));
  // trace(delta K_j) as a Hadamard sum against the transpose.
  for (int j = 0; j < grid_size; ++j)
    samples[static_cast<std::size_t>(j)] = deltat.cwiseProduct(d.density(j)).sum();
  return ScalarDensity(std::move(samples));
}

ScalarDensity nu_density(const ContractionPath& p, int grid_size, int t_nodes) {
  const QuadratureRule rule = gauss_legendre(t_nodes);
  std::vector<Complex> acc(static_cast<std::size_t>(grid_size), Complex(0.0));
  for (int q = 0; q < t_nodes; ++q) {
    const ScalarDensity nt =
        nu_t_density(p, rule.nodes[static_cast<std::size_t>(q)], grid_size);
    const double w = rule.weights[static_cast<std::size_t>(q)];
    for (int j = 0; j < grid_size; ++j)
      acc[static_cast<std::size_t>(j)] += w * nt.sample(j);
  }
  return ScalarDensity(std::move(acc));
}

TraceCheck trace_formula_nu(const AnalyticFunction& f, const ContractionPath& p, int grid_size,
                            int t_nodes) {
  return trace_formula_nu(f, p, nu_density(p, grid_size, t_nodes));
}

TraceCheck trace_formula_nu(const AnalyticFunction& f, const ContractionPath& p,
                            const ScalarDensity& nu) {
  const int m = nu.grid_size();
  const Complex lhs = (matfun(f, p.t1()) - matfun(f, p.t0())).trace();
  Complex rhs = 0.0;
  for (int j = 0; j < m; ++j) rhs += f.eval_deriv(circle_point(j, m)) * nu.sample(j);
  rhs /= static_cast<double>(m);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

namespace {

int default_grid_for(int truncation) {
  int m = 16;
  while (m / 4 < truncation || m < 256) m *= 2;
  return m;
}

} // namespace

SpectralShiftFunction xi_fourier(const ContractionPath& p, int truncation, int grid_size) {
  if (truncation < 1) throw InvariantViolation("xi_fourier: need truncation >= 1");
  if (grid_size == 0) grid_size = default_grid_for(truncation);
  const std::vector<Complex> s1 = power_traces(p.t1().matrix(), truncation);
  const std::vector<Complex> s0 = power_traces(p.t0().matrix(), truncation);
  std::vector<Complex> c(static_cast<std::size_t>(truncation));
  for (int k = 1; k <= truncation; ++k)
    c[static_cast<std::size_t>(k - 1)] =
        (s1[static_cast<std::size_t>(k - 1)] - s0[static_cast<std::size_t>(k - 1)]) /
        (kTwoPiI * static_cast<double>(k));
  return SpectralShiftFunction(std::move(c), grid_size);
}

SpectralShiftFunction xi_fourier_extrapolated(const Contraction& t0, const Contraction& t1,
                                              int truncation,
                                              const std::vector<double>& r_ladder,
                                              int grid_size) {
  if (r_ladder.empty()) throw InvariantViolation("xi_fourier_extrapolated: empty ladder");
  if (grid_size == 0) grid_size = default_grid_for(truncation);
  std::vector<std::vector<Complex>> per_r;
  per_r.reserve(r_ladder.size());
  std::vector<double> h;
  h.reserve(r_ladder.size());
  for (double r : r_ladder) {
    if (!(r > 0.0 && r < 1.0))
      throw InvariantViolation("xi_fourier_extrapolated: ladder values must lie in (0, 1)");
    const ContractionPath rp(regularize(t0, r), regularize(t1, r));
    per_r.push_back(xi_fourier(rp, truncation, grid_size).coefficients());
    h.push_back(1.0 - r);
  }
  std::vector<Complex> c(static_cast<std::size_t>(truncation));
  std::vector<Complex> column(r_ladder.size());
  for (int k = 0; k < truncation; ++k) {
    for (std::size_t i = 0; i < r_ladder.size(); ++i)
      column[i] = per_r[i][static_cast<std::size_t>(k)];
    c[static_cast<std::size_t>(k)] = extrapolate_to_zero(h, column);
  }
  return SpectralShiftFunction(std::move(c), grid_size);
}

SpectralShiftFunction xi_from_nu(const ScalarDensity& nu, int truncation) {
  if (truncation < 1) throw InvariantViolation("xi_from_nu: need truncation >= 1");
  const int m = nu.grid_size();
  if (truncation > m / 8) {
    std::ostringstream os;
    os << "xi_from_nu: truncation " << truncation << " exceeds grid size / 8 = " << m / 8;
    throw GridTooCoarse(os.str());
  }
  // c_k = (1/(2 pi i)) nu-hat(-(k-1)):
  // the factor 1/(2 pi i zeta) converts the arc measure to Lebesgue measure
  // and shifts the mode index by one.
  std::vector<Complex> c(static_cast<std::size_t>(truncation), Complex(0.0));
  for (int j = 0; j < m; ++j) {
    const Complex z = circle_point(j, m);
    Complex w = nu.sample(j);
    for (int k = 0; k < truncation; ++k) {
      c[static_cast<std::size_t>(k)] += w;
      w *= z;
    }
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  for (auto& ck : c) ck *= inv_m / kTwoPiI;
  return SpectralShiftFunction(std::move(c), m);
}

TraceCheck verify_trace_formula_xi(const AnalyticFunction& f, const ContractionPath& p,
                                   const SpectralShiftFunction& xi) {
  if (f.degree() > xi.truncation()) {
    std::ostringstream os;
    os << "verify_trace_formula_xi: degree " << f.degree() << " exceeds truncation "
       << xi.truncation();
    throw DegreeExceedsTruncation(os.str());
  }
  const Complex lhs = (matfun(f, p.t1()) - matfun(f, p.t0())).trace();
  // integral of f' xi over the circle with arc measure: only the
  // anti-analytic modes of xi pair with the analytic modes of f', giving
  // sum_k 2 pi i k a_k c_k.
  Complex rhs = 0.0;
  const auto& a = f.coeffs();
  for (int k = 1; k <= f.degree(); ++k)
    rhs += kTwoPiI * static_cast<double>(k) * a[static_cast<std::size_t>(k)] * xi.coefficient(k);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

ImSignStats im_sign_stats(const SpectralShiftFunction& xi) {
  ImSignStats st{0.0, 0.0, 0.0};
  const auto& s = xi.samples();
  for (const Complex& v : s) {
    if (v.imag() > 0.0) st.frac_positive += 1.0;
    if (v.imag() < 0.0) st.frac_negative += 1.0;
    st.max_abs_im = std::max(st.max_abs_im, std::abs(v.imag()));
  }
  st.frac_positive /= static_cast<double>(s.size());
  st.frac_negative /= static_cast<double>(s.size());
  return st;
}

} // namespace kreinshift
