#pragma once

#include "fdecay/types.hpp"

namespace fdecay {

/// Builds the dense Toeplitz matrix described by `spec`.
/// Requires a nonempty stencil, 0 <= diag_index < len(stencil) and
/// n >= len(stencil).
BandedMatrix toeplitz_build(const ToeplitzSpec& spec);

/// Band distance xi between positions (k, l), 1-based, k != l:
/// the smallest power m for which (A^m)_{k,l} may be nonzero when
/// A has upper bandwidth beta and lower bandwidth gamma.
///   xi = ceil((l-k)/beta) for k < l, ceil((k-l)/gamma) for k > l.
Index band_distance(Index k, Index l, Index beta, Index gamma);

/// Scans a dense matrix for its actual bandwidths (smallest beta, gamma
/// covering every nonzero).
std::pair<Index, Index> detect_bandwidths(const Matrix& a);

}  // namespace fdecay
