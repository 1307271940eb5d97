#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace fdecay {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Universal constant C in ‖f(A)‖ ≤ C·sup_{W(A)}|f| for analytic f.
inline constexpr double crouzeix_constant = 11.08;

/// Dense square matrix together with its declared bandwidths.
/// Entries outside the band are zero: (A)_{k,l} = 0 for l-k > beta
/// or k-l > gamma. Bandwidths are metadata consumed by the bound
/// formulas; storage is always dense.
struct BandedMatrix {
  Matrix data;
  Index beta = 0;   // upper bandwidth
  Index gamma = 0;  // lower bandwidth

  Index order() const { return data.rows(); }
};

/// Constant-diagonal matrix described by its stencil. stencil[diag_index]
/// lands on the main diagonal, earlier values fill subdiagonals, later
/// values fill superdiagonals.
struct ToeplitzSpec {
  std::vector<Complex> stencil;
  Index diag_index = 0;
  Index n = 0;
};

}  // namespace fdecay
