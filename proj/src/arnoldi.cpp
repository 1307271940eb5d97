#include "fdecay/arnoldi.hpp"

#include <cmath>

namespace fdecay {

MatVec exact_matvec(Matrix a) {
  return [a = std::move(a)](const Vector& v, double) { return Vector(a * v); };
}

PerturbedMatVec::PerturbedMatVec(Matrix a, std::uint64_t seed) : a_(std::move(a)), rng_(seed) {}

void PerturbedMatVec::reset(std::uint64_t seed) {
  rng_.seed(seed);
  injected_.clear();
}

Vector PerturbedMatVec::operator()(const Vector& v, double tol) {
  Vector out = a_ * v;
  Vector w = Vector::Zero(out.size());
  if (tol > 0) {
    std::normal_distribution<double> dist;
    for (Index i = 0; i < w.size(); ++i) w(i) = Complex(dist(rng_), dist(rng_));
    w *= tol / w.norm();
    out += w;
  }
  injected_.push_back(std::move(w));
  return out;
}

std::vector<double> PerturbedMatVec::injected_norms() const {
  std::vector<double> norms;
  norms.reserve(injected_.size());
  for (const auto& w : injected_) norms.push_back(w.norm());
  return norms;
}

ArnoldiDecomposition arnoldi(const MatVec& op, const Vector& v, Index m) {
  return arnoldi(op, v, m, std::vector<double>(static_cast<std::size_t>(m), 0.0));
}

ArnoldiDecomposition arnoldi(const MatVec& op, const Vector& v, Index m,
                             const std::vector<double>& tolerances) {
  const double vnorm = v.norm();
  if (!(vnorm > 0)) throw std::invalid_argument("arnoldi: zero start vector");
  if (m < 1) throw std::invalid_argument("arnoldi: need m >= 1");
  if (static_cast<Index>(tolerances.size()) != m)
    throw std::invalid_argument("arnoldi: need one tolerance per step");

  const Index n = v.size();
  Matrix basis(n, m + 1);
  Matrix h = Matrix::Zero(m, m);
  basis.col(0) = v / vnorm;

  for (Index k = 0; k < m; ++k) {
    Vector w = op(basis.col(k), tolerances[static_cast<std::size_t>(k)]);

    // MGS plus one full reorthogonalization pass.
    for (Index i = 0; i <= k; ++i) {
      const Complex hik = basis.col(i).dot(w);
      w -= hik * basis.col(i);
      if (i < m) h(i, k) = hik;
    }
    for (Index i = 0; i <= k; ++i) {
      const Complex corr = basis.col(i).dot(w);
      w -= corr * basis.col(i);
      if (i < m) h(i, k) += corr;
    }

    const double hk1 = w.norm();
    const double hnorm = h.topLeftCorner(std::min(k + 2, m), k + 1).norm();
    if (hk1 <= 1e-14 * hnorm) {
      ArnoldiDecomposition dec;
      dec.m = k + 1;
      dec.v = basis.leftCols(k + 1);
      dec.h = h.topLeftCorner(k + 1, k + 1);
      dec.h_next = hk1;
      dec.breakdown = true;
      return dec;
    }
    if (k + 1 < m) h(k + 1, k) = hk1;
    basis.col(k + 1) = w / hk1;
    if (k + 1 == m) {
      ArnoldiDecomposition dec;
      dec.m = m;
      dec.v = basis;
      dec.h = h;
      dec.h_next = hk1;
      dec.breakdown = false;
      return dec;
    }
  }
  throw std::logic_error("arnoldi: unreachable");
}

Vector krylov_approx(const ArnoldiDecomposition& dec, MatrixFunctionKind kind, double vnorm) {
  const Matrix fh = eval_matfun(kind, dec.h);
  return vnorm * (dec.v.leftCols(dec.m) * fh.col(0));
}

double residual_rm(const ArnoldiDecomposition& dec, MatrixFunctionKind kind) {
  if (dec.m < 1) throw std::invalid_argument("residual_rm: need m >= 1");
  const Matrix fh = eval_matfun(kind, dec.h);
  return dec.h_next * std::abs(fh(dec.m - 1, 0));
}

double apriori_residual_bound(const EllipseRegion& e, double h_bound, int m) {
  if (!(m > e.b + 1.0)) return DecayEnvelope::no_bound();
  const double xi = m - 1;
  const double d2 = e.a * e.a - e.b * e.b;
  const double s = std::sqrt(xi * xi + d2);
  const double q = 1.0 + d2 / (xi * xi + xi * s);
  const double p = (xi + s) / (xi + s - (e.a + e.b));
  return h_bound * 2.0 * std::exp(-e.center.real()) * p *
         std::pow(std::exp(q) * (e.a + e.b) / (xi + s), xi);
}

InexactSchedule relaxation_schedule(double tol, double eps_m, Index m,
                                    const std::vector<double>& s) {
  if (!(tol > 0) || !(eps_m > 0)) throw std::invalid_argument("relaxation_schedule: tol, eps_m > 0");
  if (static_cast<Index>(s.size()) != m)
    throw std::invalid_argument("relaxation_schedule: need one s_j per step");
  for (double sj : s)
    if (!(sj > 0)) throw std::invalid_argument("relaxation_schedule: s_j must be > 0");

  InexactSchedule sched{tol, eps_m, m, s, {}};
  sched.eps_bar.reserve(s.size());
  double used_sq = 0.0;
  const double md = static_cast<double>(m);
  for (Index j = 1; j <= m; ++j) {
    const double sj = s[static_cast<std::size_t>(j - 1)];
    const double budget =
        std::sqrt(std::max(eps_m * eps_m - used_sq, 0.0)) / static_cast<double>(m - j + 1);
    double eps_j;
    if (tol / (md * sj) < budget)
      eps_j = tol / md * std::max(1.0, 1.0 / sj);
    else
      eps_j = budget;
    sched.eps_bar.push_back(eps_j);
    used_sq += eps_j * eps_j;
  }
  return sched;
}

InexactRunResult inexact_arnoldi_run(const MatVec& op, const Vector& v, MatrixFunctionKind kind,
                                     const InexactSchedule& schedule,
                                     const std::vector<double>* w_norms) {
  InexactRunResult out;
  out.dec = arnoldi(op, v, schedule.m, schedule.eps_bar);
  const Index m = out.dec.m;

  out.w_norms.assign(static_cast<std::size_t>(m), 0.0);
  for (Index j = 0; j < m; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    out.w_norms[sj] = w_norms && sj < w_norms->size() ? (*w_norms)[sj] : schedule.eps_bar[sj];
  }

  for (Index j = 1; j <= m; ++j) {
    ArnoldiDecomposition head;
    head.m = j;
    head.h = out.dec.h.topLeftCorner(j, j);
    head.h_next = j < m ? std::abs(out.dec.h(j, j - 1)) : out.dec.h_next;
    head.v = out.dec.v.leftCols(j + 1 <= out.dec.v.cols() ? j + 1 : j);
    head.breakdown = false;

    const Matrix fh = eval_matfun(kind, head.h);
    out.residuals.push_back(head.h_next * std::abs(fh(j - 1, 0)));
    double gap = 0.0;
    for (Index i = 0; i < j; ++i)
      gap += out.w_norms[static_cast<std::size_t>(i)] * std::abs(fh(i, 0));
    out.gap_bounds.push_back(gap);
  }
  out.gap_bound = out.gap_bounds.empty() ? 0.0 : out.gap_bounds.back();
  return out;
}

}  // namespace fdecay
