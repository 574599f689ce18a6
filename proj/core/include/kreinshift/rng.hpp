#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "kreinshift/matrix.hpp"

namespace kreinshift {

/// Deterministic random source. Streams are reproducible across platforms:
/// the generator is mt19937_64 and the uniform/normal maps are written out
/// here instead of using std::*_distribution (whose output is
/// implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed), have_cached_(false), cached_(0.0) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on (0, 1): top 53 bits, offset half a step away from 0.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal();

  /// Standard complex normal: independent N(0, 1/2) real and imaginary parts.
  Complex complex_normal();

private:
  std::mt19937_64 gen_;
  bool have_cached_;
  double cached_;
};

/// Matrix of independent standard complex normal entries.
EigenMatrix ginibre(Rng& rng, int dim);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
EigenMatrix random_unitary(Rng& rng, int dim);

/// Random contraction with spectral norm exactly target_norm (< 1 strict).
Contraction random_contraction(Rng& rng, int dim, double target_norm = 0.9);

/// Independent pair of random contractions of the same dimension.
std::pair<Contraction, Contraction> random_contraction_pair(Rng& rng, int dim,
                                                            double target_norm = 0.9);

/// Random matrix L with Im L = (L - L*) / (2i) positive definite
/// (margin bounded away from zero), suitable for the half-plane pipeline.
ComplexMatrix random_dissipative(Rng& rng, int dim, double margin = 0.1);

} // namespace kreinshift
