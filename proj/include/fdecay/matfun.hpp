#pragma once

#include "fdecay/faber.hpp"
#include "fdecay/types.hpp"

#include <string>
#include <vector>

namespace fdecay {

/// The matrix functions evaluated by the dense reference oracle.
/// Phi1 denotes z -> (1 - e^{-z})/z.
enum class MatrixFunctionKind { Exp, NegExp, InvSqrt, ExpNegSqrt, Phi1 };

std::string to_string(MatrixFunctionKind kind);
MatrixFunctionKind matfun_from_string(const std::string& name);

/// Scalar version of the function, usable on Faber level curves.
ScalarFn scalar_function(MatrixFunctionKind kind);

/// Dense matrix exponential: scaling and squaring with the degree-13
/// diagonal rational approximant, scaled norm kept <= 5.4.
Matrix expm(const Matrix& a);

/// Principal square root and its inverse by the coupled (Denman-Beavers)
/// iteration with determinant scaling. Requires the spectrum off
/// (-inf, 0]; divergence reports a precondition violation.
std::pair<Matrix, Matrix> sqrtm_pair(const Matrix& a);

/// Reference evaluation of f(A) for the supported kinds.
Matrix eval_matfun(MatrixFunctionKind kind, const Matrix& a);

/// Magnitudes of column t (1-based), rows in order.
std::vector<std::pair<Index, double>> column_magnitudes(const Matrix& f, Index t);

}  // namespace fdecay
