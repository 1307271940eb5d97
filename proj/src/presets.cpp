#include "fdecay/presets.hpp"

#include "fdecay/csv.hpp"
#include "fdecay/linalg.hpp"
#include "fdecay/mtx_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fdecay {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

Complex cplx(double re, double im = 0.0) { return {re, im}; }

const std::vector<Preset>& catalog_impl() {
  static const std::vector<Preset> presets = [] {
    std::vector<Preset> list;

    Preset p;
    p.name = "fig1a";
    p.description = "exp decay, Toeplitz(-i, i, -2), n=200, column 127";
    p.kind = PresetKind::Decay;
    p.toeplitz = ToeplitzSpec{{cplx(0, -1), cplx(0, 1), cplx(-2)}, 1, 200};
    p.function = MatrixFunctionKind::Exp;
    p.column = 127;
    p.fit = RegionFit::Ellipse;
    list.push_back(p);

    p = Preset{};
    p.name = "fig1b";
    p.description = "exp decay, Toeplitz(i, 3i, -i, -i), n=100, column 67";
    p.kind = PresetKind::Decay;
    p.toeplitz = ToeplitzSpec{{cplx(0, 1), cplx(0, 3), cplx(0, -1), cplx(0, -1)}, 1, 100};
    p.function = MatrixFunctionKind::Exp;
    p.column = 67;
    p.fit = RegionFit::Ellipse;
    list.push_back(p);

    p = Preset{};
    p.name = "fig2a";
    p.description = "invsqrt decay, Toeplitz(i, 3+3i, -i, -i), n=100, column 67, eps=0.05";
    p.kind = PresetKind::Decay;
    p.toeplitz = ToeplitzSpec{{cplx(0, 1), cplx(3, 3), cplx(0, -1), cplx(0, -1)}, 1, 100};
    p.function = MatrixFunctionKind::InvSqrt;
    p.column = 67;
    p.fit = RegionFit::Ellipse;
    p.invsqrt_eps = 0.05;
    list.push_back(p);

    p = Preset{};
    p.name = "fig2b";
    p.description = "invsqrt decay, Toeplitz(1, 5, 3), n=100, column 67, eps=0.05";
    p.kind = PresetKind::Decay;
    p.toeplitz = ToeplitzSpec{{cplx(1), cplx(5), cplx(3)}, 1, 100};
    p.function = MatrixFunctionKind::InvSqrt;
    p.column = 67;
    p.fit = RegionFit::Ellipse;
    p.invsqrt_eps = 0.05;
    list.push_back(p);

    p = Preset{};
    p.name = "fig3";
    p.description = "phi1 decay, Toeplitz(0.8, 3, -1, -3), n=200, column 127";
    p.kind = PresetKind::Decay;
    p.toeplitz = ToeplitzSpec{{cplx(0.8), cplx(3), cplx(-1), cplx(-3)}, 1, 200};
    p.function = MatrixFunctionKind::Phi1;
    p.column = 127;
    p.fit = RegionFit::Disk;
    list.push_back(p);

    p = Preset{};
    p.name = "fig4a";
    p.description = "phi1 of A+A Kronecker sum, A=Toeplitz(-0.1, 4, 0.9i), n=30, column 300";
    p.kind = PresetKind::KronDecay;
    p.toeplitz = ToeplitzSpec{{cplx(-0.1), cplx(4), cplx(0, 0.9)}, 1, 30};
    p.function = MatrixFunctionKind::Phi1;
    p.column = 300;
    p.fit = RegionFit::Disk;
    list.push_back(p);

    p = Preset{};
    p.name = "fig4b";
    p.description = "phi1 of A+A Kronecker sum, A=Toeplitz(-1, 4, 1, 0.5), n=30, column 300";
    p.kind = PresetKind::KronDecay;
    p.toeplitz = ToeplitzSpec{{cplx(-1), cplx(4), cplx(1), cplx(0.5)}, 1, 30};
    p.function = MatrixFunctionKind::Phi1;
    p.column = 300;
    p.fit = RegionFit::Disk;
    list.push_back(p);

    p = Preset{};
    p.name = "arnoldi-toeplitz";
    p.description = "exact Arnoldi residual vs a-priori bound, Toeplitz(1, 2, 0.1, -1), n=200";
    p.kind = PresetKind::ArnoldiResidual;
    p.toeplitz = ToeplitzSpec{{cplx(1), cplx(2), cplx(0.1), cplx(-1)}, 1, 200};
    p.function = MatrixFunctionKind::NegExp;
    list.push_back(p);

    p = Preset{};
    p.name = "arnoldi-pde225";
    p.description = "exact Arnoldi residual vs a-priori bound, Matrix Market pde225";
    p.kind = PresetKind::ArnoldiResidual;
    p.mtx_id = "pde225";
    p.function = MatrixFunctionKind::NegExp;
    list.push_back(p);

    p = Preset{};
    p.name = "fig5-left";
    p.description = "inexact Arnoldi, relaxed vs constant accuracy, Toeplitz(1, 2, 0.1, -1), n=200";
    p.kind = PresetKind::InexactArnoldi;
    p.toeplitz = ToeplitzSpec{{cplx(1), cplx(2), cplx(0.1), cplx(-1)}, 1, 200};
    p.function = MatrixFunctionKind::NegExp;
    list.push_back(p);

    p = Preset{};
    p.name = "fig5-right";
    p.description = "inexact Arnoldi, relaxed vs constant accuracy, Matrix Market pde225";
    p.kind = PresetKind::InexactArnoldi;
    p.mtx_id = "pde225";
    p.function = MatrixFunctionKind::NegExp;
    list.push_back(p);

    p = Preset{};
    p.name = "ex-inex-expsqrt";
    p.description = "inexact Arnoldi for exp(-sqrt(A))v, Toeplitz(-1, 1, 3, 0.1), n=200, m=35";
    p.kind = PresetKind::InexactArnoldi;
    p.toeplitz = ToeplitzSpec{{cplx(-1), cplx(1), cplx(3), cplx(0.1)}, 2, 200};
    p.function = MatrixFunctionKind::ExpNegSqrt;
    p.m = 35;
    list.push_back(p);

    return list;
  }();
  return presets;
}

std::string canonical_name(std::string s) {
  for (auto& c : s)
    if (c == '.' || c == '_') c = '-';
  if (s == "fig5left") s = "fig5-left";
  if (s == "pde225") s = "arnoldi-pde225";
  if (s == "pde225-inexact") s = "fig5-right";
  return s;
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json ellipse_json(const EllipseRegion& e) {
  return json{{"kind", "ellipse"},
              {"center", complex_json(e.center)},
              {"a", e.a},
              {"b", e.b}};
}

json disk_json(const DiskRegion& d) {
  return json{{"kind", "disk"}, {"center", complex_json(d.center)}, {"radius", d.radius}};
}

BandedMatrix build_matrix(const Preset& p, const RunOptions& opts, json& matrix_info) {
  if (p.toeplitz) {
    BandedMatrix bm = toeplitz_build(*p.toeplitz);
    json stencil = json::array();
    for (const auto& v : p.toeplitz->stencil) stencil.push_back(complex_json(v));
    matrix_info = json{{"type", "toeplitz"},
                       {"stencil", stencil},
                       {"diag_index", p.toeplitz->diag_index},
                       {"n", p.toeplitz->n},
                       {"beta", bm.beta},
                       {"gamma", bm.gamma}};
    return bm;
  }
  if (opts.mtx_path.empty())
    throw std::runtime_error("preset '" + p.name + "' needs the Matrix Market matrix '" +
                             p.mtx_id + "'; pass its local path with --mtx");
  BandedMatrix bm;
  bm.data = mtx_read(opts.mtx_path);
  if (bm.data.rows() != bm.data.cols())
    throw std::runtime_error("preset '" + p.name + "': matrix must be square");
  std::tie(bm.beta, bm.gamma) = detect_bandwidths(bm.data);
  matrix_info = json{{"type", "mtx"},   {"id", p.mtx_id},      {"path", opts.mtx_path},
                     {"n", bm.order()}, {"beta", bm.beta},     {"gamma", bm.gamma}};
  return bm;
}

void write_fov_csv(const std::filesystem::path& path, const std::vector<FovSample>& samples,
                   const std::string& region_comment) {
  std::ofstream out(path);
  out << "# region: " << region_comment << "\n";
  out << "theta,re,im\n";
  for (const auto& s : samples)
    out << format_full(s.theta) << "," << format_full(s.point.real()) << ","
        << format_full(s.point.imag()) << "\n";
}

std::string region_comment(const json& region) {
  std::ostringstream os;
  if (region["kind"] == "ellipse")
    os << "ellipse center_re=" << format_full(region["center"]["re"].get<double>())
       << " center_im=" << format_full(region["center"]["im"].get<double>())
       << " a=" << format_full(region["a"].get<double>())
       << " b=" << format_full(region["b"].get<double>());
  else
    os << "disk center_re=" << format_full(region["center"]["re"].get<double>())
       << " center_im=" << format_full(region["center"]["im"].get<double>())
       << " radius=" << format_full(region["radius"].get<double>());
  return os.str();
}

// Vertical fitted ellipses are only proven for the exponential path;
// the right-half-plane corollaries get the enclosing disk-shaped region
// a = b = max(a, b) instead.
EllipseRegion horizontalized(const EllipseRegion& e) {
  if (!e.vertical()) return e;
  return {e.center, e.b, e.b};
}

const char* kDecayPlot = R"PY(#!/usr/bin/env python3
# Renders decay.csv (entry magnitudes vs certified bound) and fov.csv.
import csv, math, os
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))

rows, mags, bounds, valid = [], [], [], []
with open(os.path.join(here, "decay.csv")) as f:
    for rec in csv.DictReader(line for line in f if not line.startswith("#")):
        rows.append(int(rec["row"]))
        mags.append(float(rec["abs_entry"]))
        bounds.append(float(rec["bound"]))
        valid.append(int(rec["valid"]))

fig, ax = plt.subplots(figsize=(7, 5))
ax.semilogy(rows, [max(m, 1e-300) for m in mags], "k-", lw=1, label="|f(A)_{k,t}|")
vr = [r for r, v in zip(rows, valid) if v]
vb = [b for b, v in zip(bounds, valid) if v and math.isfinite(b)]
ax.semilogy(vr[: len(vb)], vb, "bx", ms=4, label="bound")
ax.set_xlabel("row k")
ax.set_ylabel("magnitude")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
ax.set_title(open(os.path.join(here, "title.txt")).read().strip())
fig.savefig(os.path.join(here, "decay.png"), dpi=150, bbox_inches="tight")

th, re, im = [], [], []
with open(os.path.join(here, "fov.csv")) as f:
    for rec in csv.DictReader(line for line in f if not line.startswith("#")):
        re.append(float(rec["re"]))
        im.append(float(rec["im"]))
fig2, ax2 = plt.subplots(figsize=(5, 5))
ax2.fill(re, im, alpha=0.4)
ax2.plot(re, im, ".", ms=3)
ax2.set_xlabel("Re")
ax2.set_ylabel("Im")
ax2.set_aspect("equal")
ax2.grid(alpha=0.3)
ax2.set_title("field of values samples")
fig2.savefig(os.path.join(here, "fov.png"), dpi=150, bbox_inches="tight")
)PY";

const char* kHistoryPlot = R"PY(#!/usr/bin/env python3
# Renders history.csv (+history_const.csv when present): residual norms,
# a-priori bound and per-step accuracies.
import csv, math, os
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))

def read(name):
    cols = {"step": [], "r_m": [], "bound": [], "eps_bar": [], "gap_bound": []}
    with open(os.path.join(here, name)) as f:
        for rec in csv.DictReader(line for line in f if not line.startswith("#")):
            for k in cols:
                cols[k].append(float(rec[k]))
    return cols

h = read("history.csv")
fig, ax = plt.subplots(figsize=(7, 5))
ax.semilogy(h["step"], [max(r, 1e-300) for r in h["r_m"]], "ko-", ms=4, label="residual")
fb = [(s, b) for s, b in zip(h["step"], h["bound"]) if math.isfinite(b)]
if fb:
    ax.semilogy([s for s, _ in fb], [b for _, b in fb], "bx", ms=5, label="a-priori bound")
if any(e > 0 for e in h["eps_bar"]):
    ax.semilogy(h["step"], h["eps_bar"], "r*", ms=5, label="matvec accuracy")
if os.path.exists(os.path.join(here, "history_const.csv")):
    hc = read("history_const.csv")
    ax.semilogy(hc["step"], [max(r, 1e-300) for r in hc["r_m"]], "gs--", ms=3,
                label="residual (constant accuracy)")
ax.set_xlabel("Arnoldi step")
ax.set_ylabel("residual norm")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
ax.set_title(open(os.path.join(here, "title.txt")).read().strip())
fig.savefig(os.path.join(here, "history.png"), dpi=150, bbox_inches="tight")
)PY";

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Checks {
  std::vector<std::string> violations;
  void require(bool ok, const std::string& what) {
    if (!ok) violations.push_back(what);
  }
};

// ---------------------------------------------------------------- decay

RunReport run_decay(const Preset& p, const RunOptions& opts) {
  RunReport report;
  report.out_dir = opts.out_dir;
  json info;
  json matrix_info;
  const auto t_start = Clock::now();

  const BandedMatrix bm = build_matrix(p, opts, matrix_info);
  const auto t_build = Clock::now();

  const auto samples = fov_boundary(bm.data, p.n_angles);
  const auto t_fov = Clock::now();

  DecayEnvelope env;
  json region;
  if (p.fit == RegionFit::Ellipse) {
    EllipseRegion e = fit_ellipse(samples, p.safety);
    region = ellipse_json(e);
    switch (p.function) {
      case MatrixFunctionKind::Exp:
        env = exp_bound(e);
        break;
      case MatrixFunctionKind::InvSqrt:
        e = horizontalized(e);
        env = invsqrt_bound(e, p.invsqrt_eps);
        break;
      case MatrixFunctionKind::ExpNegSqrt:
        e = horizontalized(e);
        env = expsqrt_bound(e);
        break;
      default:
        throw std::runtime_error("preset '" + p.name + "': no ellipse bound for this function");
    }
    region["used"] = ellipse_json(e);
  } else {
    const DiskRegion d = fit_disk(samples, p.safety);
    region = disk_json(d);
    if (p.function != MatrixFunctionKind::Phi1)
      throw std::runtime_error("preset '" + p.name + "': disk fit supports phi1 only");
    env = phi1_bound(d);
  }
  write_fov_csv(opts.out_dir / "fov.csv", samples, region_comment(region));

  const Matrix f = eval_matfun(p.function, bm.data);
  const auto t_oracle = Clock::now();
  const auto col = column_magnitudes(f, p.column);

  Checks checks;
  std::ofstream decay(opts.out_dir / "decay.csv");
  decay << "row,abs_entry,bound,valid\n";
  for (const auto& [row, mag] : col) {
    double bound = DecayEnvelope::no_bound();
    int valid = 0;
    if (row != p.column) {
      const int xi = static_cast<int>(band_distance(row, p.column, bm.beta, bm.gamma));
      bound = env(xi);
      valid = env.valid(xi) ? 1 : 0;
      if (valid && mag > bound + 1e-13) {
        std::ostringstream os;
        os << "dominance violated at (" << row << "," << p.column << "): |entry|="
           << format_full(mag) << " bound=" << format_full(bound);
        checks.violations.push_back(os.str());
      }
    }
    decay << row << "," << format_full(mag) << "," << format_full(bound) << "," << valid << "\n";
  }
  decay.close();

  info["preset"] = p.name;
  info["description"] = p.description;
  info["kind"] = "decay";
  info["function"] = to_string(p.function);
  info["matrix"] = matrix_info;
  info["column"] = p.column;
  info["fit"] = json{{"n_angles", p.n_angles}, {"safety", p.safety}, {"region", region}};
  if (p.function == MatrixFunctionKind::InvSqrt) info["invsqrt_eps"] = p.invsqrt_eps;
  info["envelope"] = env.description;
  info["seed"] = p.seed;
  info["results"] = json{{"violations", checks.violations}};
  info["timings_ms"] =
      json{{"build", std::chrono::duration<double, std::milli>(t_build - t_start).count()},
           {"fov", std::chrono::duration<double, std::milli>(t_fov - t_build).count()},
           {"oracle", std::chrono::duration<double, std::milli>(t_oracle - t_fov).count()},
           {"total", ms_since(t_start)}};
  info["files"] = json::array({"fov.csv", "decay.csv", "plot.py", "title.txt"});

  write_text(opts.out_dir / "title.txt", p.name + ": " + p.description);
  write_text(opts.out_dir / "plot.py", kDecayPlot);
  write_text(opts.out_dir / "run.json", json(info).dump(2) + "\n");

  report.violations = checks.violations;
  report.exit_code = checks.violations.empty() ? 0 : 1;
  return report;
}

// ----------------------------------------------------------------- kron

RunReport run_kron(const Preset& p, const RunOptions& opts) {
  RunReport report;
  report.out_dir = opts.out_dir;
  json matrix_info;
  const auto t_start = Clock::now();

  const BandedMatrix factor = build_matrix(p, opts, matrix_info);
  const Index n = factor.order();
  const Matrix big = kron_sum(factor.data, factor.data);

  const auto samples = fov_boundary(factor.data, p.n_angles);
  const DiskRegion d = fit_disk(samples, p.safety);
  const json region = disk_json(d);
  write_fov_csv(opts.out_dir / "fov.csv", samples, region_comment(region));

  const Matrix f = eval_matfun(p.function, big);
  const auto col = column_magnitudes(f, p.column);

  Checks checks;
  std::ofstream decay(opts.out_dir / "decay.csv");
  decay << "row,abs_entry,bound,valid\n";
  for (const auto& [row, mag] : col) {
    double bound = DecayEnvelope::no_bound();
    int valid = 0;
    const auto idx = lex_split(row, p.column, n);
    if (idx.k1 != idx.l1 && idx.k2 != idx.l2) {
      const int xi1 = static_cast<int>(band_distance(idx.k1, idx.l1, factor.beta, factor.gamma));
      const int xi2 = static_cast<int>(band_distance(idx.k2, idx.l2, factor.beta, factor.gamma));
      bound = kron_phi1_bound(d, xi1, xi2);
      valid = std::isfinite(bound) ? 1 : 0;
      if (valid && mag > bound + 1e-13) {
        std::ostringstream os;
        os << "dominance violated at (" << row << "," << p.column << "): |entry|="
           << format_full(mag) << " bound=" << format_full(bound) << " (xi1=" << xi1
           << ", xi2=" << xi2 << ")";
        checks.violations.push_back(os.str());
      }
    }
    decay << row << "," << format_full(mag) << "," << format_full(bound) << "," << valid << "\n";
  }
  decay.close();

  json info;
  info["preset"] = p.name;
  info["description"] = p.description;
  info["kind"] = "kron-decay";
  info["function"] = to_string(p.function);
  info["matrix"] = json{{"factor", matrix_info}, {"order", n * n}};
  info["column"] = p.column;
  info["fit"] = json{{"n_angles", p.n_angles}, {"safety", p.safety}, {"region", region}};
  info["seed"] = p.seed;
  info["results"] = json{{"violations", checks.violations}};
  info["timings_ms"] = json{{"total", ms_since(t_start)}};
  info["files"] = json::array({"fov.csv", "decay.csv", "plot.py", "title.txt"});

  write_text(opts.out_dir / "title.txt", p.name + ": " + p.description);
  write_text(opts.out_dir / "plot.py", kDecayPlot);
  write_text(opts.out_dir / "run.json", json(info).dump(2) + "\n");

  report.violations = checks.violations;
  report.exit_code = checks.violations.empty() ? 0 : 1;
  return report;
}

// --------------------------------------------------------------- krylov

struct StepBound {
  // Per-step residual bound with the actual h_{j+1,j}.
  std::function<double(int, double)> at;
};

StepBound step_bound_for(MatrixFunctionKind kind, const EllipseRegion& region) {
  if (kind == MatrixFunctionKind::NegExp) {
    return {[region](int m, double h) { return apriori_residual_bound(region, h, m); }};
  }
  if (kind == MatrixFunctionKind::ExpNegSqrt) {
    const EllipseRegion e = horizontalized(region);
    const DecayEnvelope env = expsqrt_bound(e);
    return {[env](int m, double h) {
      return env.valid(m - 1) ? h * env(m - 1) : DecayEnvelope::no_bound();
    }};
  }
  return {[](int, double) { return DecayEnvelope::no_bound(); }};
}

std::vector<double> schedule_entry_bounds(MatrixFunctionKind kind, const EllipseRegion& inflated,
                                          Index m) {
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(m));
  if (kind == MatrixFunctionKind::NegExp) {
    const DecayEnvelope env = exp_bound(inflated.negated());
    const double sup_f = std::exp(-(inflated.center.real() - inflated.a));
    for (Index j = 1; j <= m; ++j) {
      const int xi = static_cast<int>(j) - 1;
      s.push_back(env.valid(xi) ? env(xi) : crouzeix_constant * sup_f);
    }
    return s;
  }
  if (kind == MatrixFunctionKind::ExpNegSqrt) {
    const DecayEnvelope env = expsqrt_bound(horizontalized(inflated));
    for (Index j = 1; j <= m; ++j) {
      const int xi = static_cast<int>(j) - 1;
      s.push_back(env.valid(xi) ? env(xi) : crouzeix_constant);  // |exp(-sqrt(z))| <= 1 on C+
    }
    return s;
  }
  throw std::runtime_error("no entry-bound source for this function");
}

void write_history_csv(const std::filesystem::path& path, const InexactRunResult& run,
                       const StepBound& bound, const std::vector<double>& eps_bar,
                       const ArnoldiDecomposition& dec) {
  std::ofstream out(path);
  out << "step,r_m,bound,eps_bar,gap_bound\n";
  for (Index j = 1; j <= dec.m; ++j) {
    const auto sj = static_cast<std::size_t>(j - 1);
    const double h = j < dec.m ? std::abs(dec.h(j, j - 1)) : dec.h_next;
    out << j << "," << format_full(run.residuals[sj]) << ","
        << format_full(bound.at(static_cast<int>(j), h)) << ","
        << format_full(sj < eps_bar.size() ? eps_bar[sj] : 0.0) << ","
        << format_full(run.gap_bounds[sj]) << "\n";
  }
}

RunReport run_krylov(const Preset& p, const RunOptions& opts) {
  RunReport report;
  report.out_dir = opts.out_dir;
  json matrix_info;
  const auto t_start = Clock::now();
  const bool inexact = p.kind == PresetKind::InexactArnoldi;

  const BandedMatrix bm = build_matrix(p, opts, matrix_info);
  const Index n = bm.order();
  const Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));

  const auto samples = fov_boundary(bm.data, p.n_angles);
  const EllipseRegion e = fit_ellipse(samples, p.safety);
  json region = ellipse_json(e);
  write_fov_csv(opts.out_dir / "fov.csv", samples, region_comment(region));

  const double h_bound = spectral_norm(bm.data);

  // Space dimension: smallest m whose a-priori residual bound clears tol.
  Index m = p.m;
  if (m == 0) {
    if (p.function != MatrixFunctionKind::NegExp)
      throw std::runtime_error("preset '" + p.name + "': automatic m needs the negexp bound");
    for (Index cand = 2; cand <= 500; ++cand) {
      if (apriori_residual_bound(e, h_bound, static_cast<int>(cand)) < p.tol) {
        m = cand;
        break;
      }
    }
    if (m == 0)
      throw std::runtime_error("preset '" + p.name + "': a-priori bound never clears tol");
  }
  report.m_selected = m;

  const std::uint64_t seed = opts.seed.value_or(p.seed);
  Checks checks;
  json info;
  info["preset"] = p.name;
  info["description"] = p.description;
  info["function"] = to_string(p.function);
  info["matrix"] = matrix_info;
  info["fit"] = json{{"n_angles", p.n_angles}, {"safety", p.safety}, {"region", region}};
  info["krylov"] =
      json{{"tol", p.tol},       {"eps_m", p.eps_m}, {"m", m},
           {"h_bound", h_bound}, {"seed", seed},     {"m_from_preset", p.m != 0}};

  if (!inexact) {
    info["kind"] = "arnoldi";
    InexactSchedule exact_sched;
    exact_sched.m = m;
    exact_sched.eps_bar.assign(static_cast<std::size_t>(m), 0.0);
    PerturbedMatVec op(bm.data, seed);
    const auto run = inexact_arnoldi_run(std::ref(op), v, p.function, exact_sched);
    const StepBound bound = step_bound_for(p.function, e);
    write_history_csv(opts.out_dir / "history.csv", run, bound, exact_sched.eps_bar, run.dec);

    for (Index j = 1; j <= run.dec.m; ++j) {
      const auto sj = static_cast<std::size_t>(j - 1);
      const double h = j < run.dec.m ? std::abs(run.dec.h(j, j - 1)) : run.dec.h_next;
      const double bj = bound.at(static_cast<int>(j), h);
      if (std::isfinite(bj))
        checks.require(run.residuals[sj] <= bj * (1 + 1e-9) + 1e-13,
                       "residual above a-priori bound at step " + std::to_string(j));
    }
    info["results"] = json{{"violations", checks.violations},
                           {"final_residual", run.residuals.back()},
                           {"steps", run.dec.m}};
  } else {
    info["kind"] = "inexact-arnoldi";
    const EllipseRegion inflated = inflate_for_perturbation(e, p.eps_m);
    info["fit"]["inflated"] = ellipse_json(inflated);

    const auto s = schedule_entry_bounds(p.function, inflated, m);
    const auto sched = relaxation_schedule(p.tol, p.eps_m, m, s);
    info["krylov"]["s"] = s;
    info["krylov"]["eps_bar"] = sched.eps_bar;

    PerturbedMatVec op(bm.data, seed);
    const auto run = inexact_arnoldi_run(std::ref(op), v, p.function, sched);

    InexactSchedule const_sched;
    const_sched.m = m;
    const_sched.eps_bar.assign(static_cast<std::size_t>(m), p.tol / static_cast<double>(m));
    PerturbedMatVec op_const(bm.data, seed + 1);
    const auto run_const = inexact_arnoldi_run(std::ref(op_const), v, p.function, const_sched);

    const StepBound bound = step_bound_for(p.function, inflated);
    write_history_csv(opts.out_dir / "history.csv", run, bound, sched.eps_bar, run.dec);
    write_history_csv(opts.out_dir / "history_const.csv", run_const, bound, const_sched.eps_bar,
                      run_const.dec);

    // Budget: sqrt(sum eps_bar^2) <= eps_m, as constructed.
    double sum_sq = 0.0;
    for (double ej : sched.eps_bar) sum_sq += ej * ej;
    checks.require(std::sqrt(sum_sq) <= p.eps_m * (1 + 1e-12), "accuracy budget exceeded");

    // Measured gap vs the computable bound, step by step. The true
    // residual uses the exact A, so the difference to r_j is exactly the
    // injected-perturbation term (up to orthogonalization rounding).
    for (Index j = 1; j <= run.dec.m; ++j) {
      const auto sj = static_cast<std::size_t>(j - 1);
      const Matrix hj = run.dec.h.topLeftCorner(j, j);
      const Matrix fh = eval_matfun(p.function, hj);
      const Matrix vj = run.dec.v.leftCols(j);
      const Vector y = vj * fh.col(0);
      const Vector true_res = bm.data * y - vj * (hj * fh.col(0));
      const double gap = std::abs(true_res.norm() - run.residuals[sj]);
      checks.require(gap <= run.gap_bounds[sj] + 1e-12,
                     "measured gap above gap bound at step " + std::to_string(j));
    }

    // Residual-bound dominance on the inflated region.
    for (Index j = 1; j <= run.dec.m; ++j) {
      const auto sj = static_cast<std::size_t>(j - 1);
      const double h = j < run.dec.m ? std::abs(run.dec.h(j, j - 1)) : run.dec.h_next;
      const double bj = bound.at(static_cast<int>(j), h);
      if (std::isfinite(bj))
        checks.require(run.residuals[sj] <= bj * (1 + 1e-9) + 1e-13,
                       "residual above a-priori bound at step " + std::to_string(j));
    }

    // Relaxation must not cost accuracy: final residuals within 10x.
    const double r_final = run.residuals.back();
    const double r_const = run_const.residuals.back();
    checks.require(r_final <= 10 * r_const + 1e-300 && r_const <= 10 * r_final + 1e-300,
                   "relaxed and constant-accuracy final residuals differ by more than 10x");

    info["results"] = json{{"violations", checks.violations},
                           {"final_residual_relaxed", r_final},
                           {"final_residual_const", r_const},
                           {"gap_bound", run.gap_bound},
                           {"steps", run.dec.m}};
  }

  info["timings_ms"] = json{{"total", ms_since(t_start)}};
  info["files"] = json::array({"fov.csv", "history.csv", "plot.py", "title.txt"});
  write_text(opts.out_dir / "title.txt", p.name + ": " + p.description);
  write_text(opts.out_dir / "plot.py", kHistoryPlot);
  write_text(opts.out_dir / "run.json", json(info).dump(2) + "\n");

  report.violations = checks.violations;
  report.exit_code = checks.violations.empty() ? 0 : 1;
  return report;
}

}  // namespace

const std::vector<Preset>& preset_catalog() { return catalog_impl(); }

const Preset* find_preset(const std::string& name) {
  const std::string canon = canonical_name(name);
  for (const auto& p : catalog_impl())
    if (p.name == canon) return &p;
  return nullptr;
}

std::string preset_name_list() {
  std::string out;
  for (const auto& p : catalog_impl()) {
    if (!out.empty()) out += ", ";
    out += p.name;
  }
  return out;
}

RunReport run_preset(const std::string& name, const RunOptions& opts) {
  const Preset* p = find_preset(name);
  if (!p)
    throw std::runtime_error("unknown preset '" + name + "'; available: " + preset_name_list());
  std::filesystem::create_directories(opts.out_dir);
  switch (p->kind) {
    case PresetKind::Decay: return run_decay(*p, opts);
    case PresetKind::KronDecay: return run_kron(*p, opts);
    case PresetKind::ArnoldiResidual:
    case PresetKind::InexactArnoldi: return run_krylov(*p, opts);
  }
  throw std::logic_error("run_preset: unreachable");
}

}  // namespace fdecay
