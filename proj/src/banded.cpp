#include "fdecay/banded.hpp"

namespace fdecay {

BandedMatrix toeplitz_build(const ToeplitzSpec& spec) {
  const Index len = static_cast<Index>(spec.stencil.size());
  if (len == 0) throw std::invalid_argument("toeplitz_build: empty stencil");
  if (spec.diag_index < 0 || spec.diag_index >= len)
    throw std::invalid_argument("toeplitz_build: diag_index out of range");
  if (spec.n < len)
    throw std::invalid_argument("toeplitz_build: order smaller than stencil");

  BandedMatrix out;
  out.beta = len - 1 - spec.diag_index;
  out.gamma = spec.diag_index;
  out.data = Matrix::Zero(spec.n, spec.n);
  for (Index k = 0; k < spec.n; ++k) {
    for (Index l = 0; l < spec.n; ++l) {
      const Index s = spec.diag_index + (l - k);
      if (s >= 0 && s < len) out.data(k, l) = spec.stencil[static_cast<std::size_t>(s)];
    }
  }
  return out;
}

Index band_distance(Index k, Index l, Index beta, Index gamma) {
  if (k == l) throw std::invalid_argument("band_distance: undefined for diagonal entries");
  if (beta < 1 || gamma < 1)
    throw std::invalid_argument("band_distance: bandwidths must be >= 1");
  if (k < l) return (l - k + beta - 1) / beta;
  return (k - l + gamma - 1) / gamma;
}

std::pair<Index, Index> detect_bandwidths(const Matrix& a) {
  Index beta = 0, gamma = 0;
  for (Index k = 0; k < a.rows(); ++k)
    for (Index l = 0; l < a.cols(); ++l)
      if (a(k, l) != Complex(0, 0)) {
        beta = std::max(beta, l - k);
        gamma = std::max(gamma, k - l);
      }
  return {beta, gamma};
}

}  // namespace fdecay
