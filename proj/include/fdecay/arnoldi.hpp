#pragma once

#include "fdecay/envelopes.hpp"
#include "fdecay/matfun.hpp"
#include "fdecay/regions.hpp"
#include "fdecay/types.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace fdecay {

/// Possibly-inexact matrix-vector product: returns A v + w with
/// ‖w‖ <= tol; tol = 0 means exact up to rounding.
using MatVec = std::function<Vector(const Vector&, double)>;

/// Exact product oracle around a dense matrix.
MatVec exact_matvec(Matrix a);

/// Product oracle that injects w = tol · (random unit vector), so the
/// perturbation norm equals the requested tolerance exactly. Seedable
/// and recording: the injected vectors are kept for gap verification.
class PerturbedMatVec {
 public:
  PerturbedMatVec(Matrix a, std::uint64_t seed);

  Vector operator()(const Vector& v, double tol);

  const std::vector<Vector>& injected() const { return injected_; }
  std::vector<double> injected_norms() const;
  void reset(std::uint64_t seed);

 private:
  Matrix a_;
  std::mt19937_64 rng_;
  std::vector<Vector> injected_;
};

/// Arnoldi decomposition A V_m = V_m H_m + h_next v_{m+1} e_m^T
/// (perturbed A for inexact runs). V has orthonormal columns; H is
/// upper Hessenberg. On breakdown V keeps m columns and h_next carries
/// the negligible value that triggered it.
struct ArnoldiDecomposition {
  Matrix v;       // n x (m+1), or n x m on breakdown
  Matrix h;       // m x m
  double h_next = 0.0;
  Index m = 0;
  bool breakdown = false;
};

/// Runs m Arnoldi steps with per-step matvec tolerances (zeros for the
/// exact method). Modified Gram-Schmidt with one full
/// reorthogonalization pass per step; stops early with the breakdown
/// flag when h_{k+1,k} <= 1e-14 ‖H‖.
ArnoldiDecomposition arnoldi(const MatVec& op, const Vector& v, Index m,
                             const std::vector<double>& tolerances);
ArnoldiDecomposition arnoldi(const MatVec& op, const Vector& v, Index m);

/// Krylov approximation of f(A)v: vnorm · V_m f(H_m) e_1.
Vector krylov_approx(const ArnoldiDecomposition& dec, MatrixFunctionKind kind, double vnorm);

/// Residual estimate r_m = h_next · |e_m^T f(H_m) e_1| (the norm of the
/// differential-equation residual of the Krylov approximant, at t = 1).
double residual_rm(const ArnoldiDecomposition& dec, MatrixFunctionKind kind);

/// A-priori residual bound for the e^{-A} approximation after m steps,
/// with W(A) inside the ellipse E and h_bound >= h_{m+1,m}:
///   h_bound · 2 e^{-c1} p(m) (e^{q(m-1)} (a+b) / (m-1+sqrt((m-1)²+a²-b²)))^{m-1},
/// valid for m > b + 1 (sentinel otherwise).
double apriori_residual_bound(const EllipseRegion& e, double h_bound, int m);

/// Per-step matvec accuracies for the relaxed (inexact) method.
struct InexactSchedule {
  double tol = 0.0;
  double eps_m = 0.0;
  Index m = 0;
  std::vector<double> s;        // a-priori bounds on |e_j^T f(H_m) e_1|
  std::vector<double> eps_bar;  // chosen per-step tolerances
};

/// The relaxed accuracy choice: eps_bar_j = (tol/m) max(1, 1/s_j) while
/// that stays below the remaining-budget split, else the budget split
/// sqrt(eps_m² - sum_{k<j} eps_bar_k²)/(m-j+1). Keeps
/// sqrt(sum eps_bar²) <= eps_m.
InexactSchedule relaxation_schedule(double tol, double eps_m, Index m,
                                    const std::vector<double>& s);

struct InexactRunResult {
  ArnoldiDecomposition dec;
  std::vector<double> residuals;    // r_j per step
  std::vector<double> gap_bounds;   // sum_{i<=j} ‖w_i‖ |e_i^T f(H_j) e_1| per step
  std::vector<double> w_norms;      // perturbation norms actually used
  double gap_bound = 0.0;           // final-step value
};

/// Runs the inexact Arnoldi method with the schedule's tolerances and
/// reports the residual history plus the computable bound on
/// |‖r_m‖ - r_m|.
InexactRunResult inexact_arnoldi_run(const MatVec& op, const Vector& v, MatrixFunctionKind kind,
                                     const InexactSchedule& schedule,
                                     const std::vector<double>* w_norms = nullptr);

}  // namespace fdecay
