#include "fdecay/matfun.hpp"

#include "fdecay/linalg.hpp"

#include <Eigen/LU>

#include <cmath>

namespace fdecay {

std::string to_string(MatrixFunctionKind kind) {
  switch (kind) {
    case MatrixFunctionKind::Exp: return "exp";
    case MatrixFunctionKind::NegExp: return "negexp";
    case MatrixFunctionKind::InvSqrt: return "invsqrt";
    case MatrixFunctionKind::ExpNegSqrt: return "expsqrt";
    case MatrixFunctionKind::Phi1: return "phi1";
  }
  return "?";
}

MatrixFunctionKind matfun_from_string(const std::string& name) {
  if (name == "exp") return MatrixFunctionKind::Exp;
  if (name == "negexp") return MatrixFunctionKind::NegExp;
  if (name == "invsqrt") return MatrixFunctionKind::InvSqrt;
  if (name == "expsqrt") return MatrixFunctionKind::ExpNegSqrt;
  if (name == "phi1") return MatrixFunctionKind::Phi1;
  throw std::invalid_argument("unknown matrix function '" + name +
                              "' (expected exp|negexp|invsqrt|expsqrt|phi1)");
}

ScalarFn scalar_function(MatrixFunctionKind kind) {
  switch (kind) {
    case MatrixFunctionKind::Exp:
      return [](Complex z) { return std::exp(z); };
    case MatrixFunctionKind::NegExp:
      return [](Complex z) { return std::exp(-z); };
    case MatrixFunctionKind::InvSqrt:
      return [](Complex z) { return 1.0 / std::sqrt(z); };
    case MatrixFunctionKind::ExpNegSqrt:
      return [](Complex z) { return std::exp(-std::sqrt(z)); };
    case MatrixFunctionKind::Phi1:
      return [](Complex z) {
        if (std::abs(z) < 1e-8)
          return Complex(1, 0) - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
        return (Complex(1, 0) - std::exp(-z)) / z;
      };
  }
  throw std::logic_error("scalar_function: unreachable");
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  if (n == 0) return a;

  // Degree-13 diagonal Pade coefficients.
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1)) throw std::runtime_error("expm: input not finite");
  int s = 0;
  if (norm1 > 5.4) s = static_cast<int>(std::ceil(std::log2(norm1 / 5.4)));
  if (s > 1024) throw std::runtime_error("expm: norm too large, scaling would overflow");

  const Matrix as = a / std::pow(2.0, s);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;

  const Matrix u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                         b[3] * a2 + b[1] * id);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Matrix f = solve_linear(v - u, v + u);
  for (int k = 0; k < s; ++k) f = (f * f).eval();
  if (!f.allFinite()) throw std::runtime_error("expm: overflow in result");
  return f;
}

std::pair<Matrix, Matrix> sqrtm_pair(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("sqrtm_pair: matrix must be square");
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);

  Matrix y = a;  // -> A^{1/2}
  Matrix z = id; // -> A^{-1/2}
  double rel_change = 1.0;
  bool converged = false;
  for (int it = 0; it < 100 && !converged; ++it) {
    Eigen::PartialPivLU<Matrix> lu_y(y);
    Eigen::PartialPivLU<Matrix> lu_z(z);

    // Determinant scaling speeds up the pre-asymptotic phase; switch it
    // off once the iteration is nearly stationary.
    if (rel_change > 1e-2) {
      double logdet = 0.0;
      logdet += lu_y.matrixLU().diagonal().array().abs().log().sum();
      logdet += lu_z.matrixLU().diagonal().array().abs().log().sum();
      const double g = std::exp(-logdet / (2.0 * static_cast<double>(n)));
      if (std::isfinite(g) && g > 0) {
        y *= g;
        z *= g;
        lu_y.compute(y);
        lu_z.compute(z);
      }
    }

    const Matrix y_next = 0.5 * (y + lu_z.inverse());
    const Matrix z_next = 0.5 * (z + lu_y.inverse());
    const double dy = (y_next - y).norm();
    const double dz = (z_next - z).norm();
    rel_change = std::max(dy / std::max(y.norm(), 1e-300), dz / std::max(z.norm(), 1e-300));
    converged = dy <= 1e-13 * y_next.norm() && dz <= 1e-13 * z_next.norm();
    y = y_next;
    z = z_next;
    if (!y.allFinite() || !z.allFinite())
      throw std::domain_error("sqrtm_pair: iteration diverged (precondition violated)");
  }

  const double res_sq = (y * y - a).norm();
  const double res_inv = (y * z - id).norm();
  if (!converged || res_sq > 1e-10 * std::max(a.norm(), 1e-300) || res_inv > 1e-10)
    throw std::domain_error("sqrtm_pair: did not converge to the principal root");
  return {y, z};
}

Matrix eval_matfun(MatrixFunctionKind kind, const Matrix& a) {
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  switch (kind) {
    case MatrixFunctionKind::Exp: return expm(a);
    case MatrixFunctionKind::NegExp: return expm(-a);
    case MatrixFunctionKind::InvSqrt: return sqrtm_pair(a).second;
    case MatrixFunctionKind::ExpNegSqrt: return expm(-sqrtm_pair(a).first);
    case MatrixFunctionKind::Phi1: return solve_linear(a, id - expm(-a));
  }
  throw std::logic_error("eval_matfun: unreachable");
}

std::vector<std::pair<Index, double>> column_magnitudes(const Matrix& f, Index t) {
  if (t < 1 || t > f.cols()) throw std::invalid_argument("column_magnitudes: column out of range");
  std::vector<std::pair<Index, double>> out;
  out.reserve(static_cast<std::size_t>(f.rows()));
  for (Index k = 0; k < f.rows(); ++k) out.emplace_back(k + 1, std::abs(f(k, t - 1)));
  return out;
}

}  // namespace fdecay
