#pragma once

#include "fdecay/arnoldi.hpp"
#include "fdecay/banded.hpp"
#include "fdecay/envelopes.hpp"
#include "fdecay/matfun.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fdecay {

enum class RegionFit { Ellipse, Disk };
enum class PresetKind { Decay, KronDecay, ArnoldiResidual, InexactArnoldi };

/// A reproducible end-to-end experiment: matrix recipe, function,
/// tracked column or Krylov parameters, and region-fit settings.
struct Preset {
  std::string name;
  std::string description;
  PresetKind kind = PresetKind::Decay;

  std::optional<ToeplitzSpec> toeplitz;  // either a stencil ...
  std::string mtx_id;                    // ... or an external Matrix Market id

  MatrixFunctionKind function = MatrixFunctionKind::Exp;
  Index column = 0;  // tracked column t (decay presets)

  RegionFit fit = RegionFit::Ellipse;
  double safety = 1.01;
  int n_angles = 256;
  double invsqrt_eps = 0.0;

  // Krylov presets.
  double tol = 1e-10;
  double eps_m = 0.1;
  Index m = 0;  // 0: smallest m with the a-priori residual bound < tol
  std::uint64_t seed = 123456789;
};

const std::vector<Preset>& preset_catalog();
/// Lookup by name or alias; nullptr when unknown.
const Preset* find_preset(const std::string& name);
std::string preset_name_list();

struct RunOptions {
  std::filesystem::path out_dir;
  std::string mtx_path;  // path of the external matrix when the preset needs one
  std::optional<std::uint64_t> seed;
};

struct RunReport {
  int exit_code = 0;
  std::vector<std::string> violations;
  std::filesystem::path out_dir;
  Index m_selected = 0;  // Krylov presets: space dimension actually used
};

/// Runs a preset and writes fov.csv, decay.csv or history.csv, run.json
/// and plot.py into out_dir. Exit code 0 iff the certified property
/// holds (entry dominance for decay presets; residual-bound dominance,
/// budget and gap containment for Krylov presets).
RunReport run_preset(const std::string& name, const RunOptions& opts);

}  // namespace fdecay
