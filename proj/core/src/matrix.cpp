#include "kreinshift/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace kreinshift {

namespace {

void check_square_finite(const EigenMatrix& m, const char* who) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": need a square matrix with dim >= 1, got " << m.rows() << "x" << m.cols();
    throw InvariantViolation(os.str());
  }
  if (!m.allFinite()) throw InvariantViolation(std::string(who) + ": non-finite entry");
}

} // namespace

ComplexMatrix::ComplexMatrix(EigenMatrix m) : m_(std::move(m)) {
  check_square_finite(m_, "ComplexMatrix");
}

ComplexMatrix::ComplexMatrix(int dim, const std::vector<std::vector<Complex>>& rows) {
  if (dim < 1 || static_cast<int>(rows.size()) != dim)
    throw InvariantViolation("ComplexMatrix: row count does not match dim");
  m_.resize(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != dim)
      throw InvariantViolation("ComplexMatrix: ragged rows");
    for (int j = 0; j < dim; ++j) m_(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  check_square_finite(m_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  return ComplexMatrix(EigenMatrix::Identity(dim, dim));
}

ComplexMatrix ComplexMatrix::zero(int dim) {
  return ComplexMatrix(EigenMatrix::Zero(dim, dim));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& entries) {
  const int n = static_cast<int>(entries.size());
  EigenMatrix m = EigenMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return ComplexMatrix(std::move(m));
}

namespace {

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
  if (a.dim() != b.dim()) throw GridMismatch(std::string(who) + ": dimension mismatch");
}

} // namespace

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  check_same_dim(*this, o, "operator+");
  return ComplexMatrix(m_ + o.m_);
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  check_same_dim(*this, o, "operator-");
  return ComplexMatrix(m_ - o.m_);
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  check_same_dim(*this, o, "operator*");
  return ComplexMatrix(m_ * o.m_);
}

double spectral_norm(const EigenMatrix& m) {
  Eigen::JacobiSVD<EigenMatrix> svd(m);
  return svd.singularValues()(0);
}

double spectral_norm(const ComplexMatrix& m) { return spectral_norm(m.mat()); }

double nuclear_norm(const EigenMatrix& m) {
  Eigen::JacobiSVD<EigenMatrix> svd(m);
  return svd.singularValues().sum();
}

double nuclear_norm(const ComplexMatrix& m) { return nuclear_norm(m.mat()); }

double spectral_radius(const EigenMatrix& m) {
  Eigen::ComplexSchur<EigenMatrix> schur(m, false);
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(schur.matrixT()(i, i)));
  return r;
}

double spectral_radius(const ComplexMatrix& m) { return spectral_radius(m.mat()); }

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexSchur<EigenMatrix> schur(m.mat(), false);
  std::vector<Complex> ev(static_cast<std::size_t>(m.dim()));
  for (int i = 0; i < m.dim(); ++i) ev[static_cast<std::size_t>(i)] = schur.matrixT()(i, i);
  return ev;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  Eigen::JacobiSVD<EigenMatrix> svd(m.mat());
  const double smin = svd.singularValues()(m.dim() - 1);
  if (smin <= kSingularFloor) {
    std::ostringstream os;
    os << "inverse: smallest singular value " << smin << " below " << kSingularFloor;
    throw SingularMatrix(os.str());
  }
  return ComplexMatrix(m.mat().partialPivLu().inverse());
}

std::vector<Complex> power_traces(const ComplexMatrix& m, int max_power) {
  if (max_power < 1) throw InvariantViolation("power_traces: need max_power >= 1");
  const auto ev = eigenvalues(m);
  std::vector<Complex> running(ev.begin(), ev.end());
  std::vector<Complex> out(static_cast<std::size_t>(max_power));
  for (int k = 1; k <= max_power; ++k) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < running.size(); ++i) s += running[i];
    out[static_cast<std::size_t>(k - 1)] = s;
    if (k < max_power)
      for (std::size_t i = 0; i < running.size(); ++i) running[i] *= ev[i];
  }
  return out;
}

Contraction::Contraction(ComplexMatrix m) : m_(std::move(m)), norm_(0), radius_(0), unitary_defect_(0) {
  double nrm = spectral_norm(m_);
  if (nrm > 1.0 + kNormSlack) {
    std::ostringstream os;
    os << "Contraction: spectral norm " << nrm << " exceeds 1 + " << kNormSlack;
    throw InvariantViolation(os.str());
  }
  if (nrm > 1.0) {
    // Within the slack: project back onto the closed unit ball.
    m_ = ComplexMatrix(m_.mat() / nrm);
    nrm = spectral_norm(m_);
  }
  norm_ = nrm;
  radius_ = spectral_radius(m_);
  const int n = m_.dim();
  unitary_defect_ = spectral_norm(EigenMatrix(m_.mat().adjoint() * m_.mat() - EigenMatrix::Identity(n, n)));
}

} // namespace kreinshift
