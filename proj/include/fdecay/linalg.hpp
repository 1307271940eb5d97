#pragma once

#include "fdecay/types.hpp"

namespace fdecay {

/// Solves A X = B by row-pivoted elimination. A pivot below
/// 1e-14 · max|A_{kl}| reports A as singular instead of returning garbage.
Matrix solve_linear(const Matrix& a, const Matrix& b);

/// Kronecker product A ⊗ B.
Matrix kron_product(const Matrix& a, const Matrix& b);

/// Kronecker sum A ⊕ B = A ⊗ I + I ⊗ B (both inputs square).
Matrix kron_sum(const Matrix& a, const Matrix& b);

/// Largest eigenvalue and a unit eigenvector of a Hermitian matrix.
/// Rejects inputs with ‖H - H*‖ > 1e-12·‖H‖; guarantees
/// ‖H u - λ u‖ <= 1e-10·‖H‖ on return.
std::pair<double, Vector> hermitian_extreme_eigenpair(const Matrix& h);

/// Spectral (induced 2-) norm via the extreme eigenpair of A*A.
double spectral_norm(const Matrix& a);

}  // namespace fdecay
