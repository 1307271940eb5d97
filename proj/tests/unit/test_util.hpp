#pragma once

#include "fdecay/types.hpp"

#include <random>

namespace fdecay::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline Complex random_complex(std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  return {d(gen), d(gen)};
}

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& gen, double scale = 1.0) {
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = scale * random_complex(gen);
  return a;
}

inline Matrix random_hermitian(Index n, std::mt19937_64& gen) {
  const Matrix a = random_matrix(n, n, gen);
  return 0.5 * (a + a.adjoint());
}

inline BandedMatrix random_banded(Index n, Index beta, Index gamma, std::mt19937_64& gen,
                                  double scale = 1.0) {
  BandedMatrix bm;
  bm.beta = beta;
  bm.gamma = gamma;
  bm.data = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l)
      if (l - k <= beta && k - l <= gamma) bm.data(k, l) = scale * random_complex(gen);
  return bm;
}

inline Vector random_unit_vector(Index n, std::mt19937_64& gen) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_complex(gen);
  return v / v.norm();
}

}  // namespace fdecay::test
