#include "fdecay/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace fdecay {

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear: A must be square");
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: size mismatch");

  const double amax = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  Eigen::PartialPivLU<Matrix> lu(a);
  const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (pivot_min <= 1e-14 * amax)
    throw std::domain_error("solve_linear: matrix singular to working precision");
  return lu.solve(b);
}

Matrix kron_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron_sum(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw std::invalid_argument("kron_sum: inputs must be square");
  const Matrix ia = Matrix::Identity(a.rows(), a.cols());
  const Matrix ib = Matrix::Identity(b.rows(), b.cols());
  return kron_product(a, ib) + kron_product(ia, b);
}

std::pair<double, Vector> hermitian_extreme_eigenpair(const Matrix& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_extreme_eigenpair: input must be square");
  const double hnorm = h.norm();
  if ((h - h.adjoint()).norm() > 1e-12 * std::max(hnorm, 1e-300))
    throw std::invalid_argument("hermitian_extreme_eigenpair: input not Hermitian");

  // Symmetrize to remove rounding-level skew before factorizing.
  const Matrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_extreme_eigenpair: eigensolver did not converge");

  const Index last = hs.rows() - 1;
  const double lambda = es.eigenvalues()(last);
  Vector u = es.eigenvectors().col(last);
  u /= u.norm();

  const double scale = std::max(std::abs(es.eigenvalues()(0)), std::abs(lambda));
  if ((h * u - lambda * u).norm() > 1e-10 * std::max(scale, 1e-300))
    throw std::runtime_error("hermitian_extreme_eigenpair: residual test failed");
  return {lambda, u};
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix g = a.adjoint() * a;
  const auto [lambda, u] = hermitian_extreme_eigenpair(g);
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace fdecay
