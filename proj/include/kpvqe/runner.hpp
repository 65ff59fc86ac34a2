// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpvqe/spectra.hpp"
#include "kpvqe/ssvqe.hpp"

namespace kpvqe {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitConfigError = 1,
  kExitPartialFailure = 2,
  kExitDivergence = 3,
};

struct RunConfig {
  std::filesystem::path material_path;
  int n_layers = 5;
  OptimizerKind optimizer = OptimizerKind::Adam;
  double step_rate = 0.01;
  std::optional<double> tol;  // default depends on mode
  int max_cycles = 2000;
  std::string mode = "statevector";  // statevector | sampled | noisy
  std::uint64_t shots = 10000;
  std::uint64_t seed = kDefaultSeed;
  NoiseConfig noise;
  int points_per_segment = kDefaultPointsPerSegment;
  double extent = kDefaultPathExtent;
  std::filesystem::path out_dir = "out";
  std::size_t chunks = 1;
  KpOptions kp;
  bool record_timing = true;  // false writes 0 in the CSV seconds column

  /// Throws ConfigError naming the offending field.
  void validate() const;
  [[nodiscard]] EvalMode eval_mode() const;
  [[nodiscard]] OptimizerConfig optimizer_config() const;
  [[nodiscard]] SweepOptions sweep_options() const;
};

inline const char* const kBandsCsvHeader =
    "index,path_coord,kx,ky,kz,e0,e1,e2,e3,x0,x1,x2,x3,err0,err1,err2,err3,cycles,seconds";
inline const char* const kSpectrumCsvHeader = "photon_energy_eV,alpha_normalized";

std::string bands_csv(const BandStructureResult& result, bool record_timing = true);
nlohmann::json bands_json(const BandStructureResult& result);
/// Rebuilds the parts of a band result needed downstream (k-points, energies,
/// sources, angles). Throws ConfigError on schema problems.
BandStructureResult bands_from_json(const nlohmann::json& doc);

/// Sweeps the material's k-path and writes bands.csv and bands.json to out_dir.
BandStructureResult run_bands(const RunConfig& config);

nlohmann::json decomposition_json(const PauliHamiltonian& h, std::span<const QWCGroup> groups);
/// Reads {"terms": [{"string": "XI", "coefficient": 1.0}, ...]}; "identity"
/// selects the identity observable.
PauliHamiltonian load_observable(const std::string& spec, int n_qubits = 2);

struct SpectrumRun {
  AbsorptionSpectrum spectrum;
  std::size_t call_budget_per_k = 0;
  std::size_t total_calls = 0;
};

/// Absorption from a saved band result; writes spectrum.csv and spectrum.json.
SpectrumRun run_spectrum(const RunConfig& config, const std::filesystem::path& bands_result,
                         const std::string& observable);

struct BenchmarkRow {
  int layers = 0;
  std::string optimizer;
  double mean_cycles = 0.0;
  int min_cycles = 0;
  int max_cycles = 0;
  double mean_seconds = 0.0;
  double mean_seconds_per_cycle = 0.0;
  std::size_t converged_points = 0;
  std::size_t points = 0;
  double max_error = 0.0;
};

struct BenchmarkReport {
  std::string material;
  std::vector<BenchmarkRow> rows;
};

/// Layer/optimiser sweep over the full path in exact mode with fixed seeds.
/// Throws ConfigError for empty layer or optimiser sets or a stochastic mode.
BenchmarkReport run_benchmark(const RunConfig& config, const std::vector<int>& layers,
                              const std::vector<OptimizerKind>& optimizers);
nlohmann::json benchmark_json(const BenchmarkReport& report);
std::string benchmark_csv(const BenchmarkReport& report);
void write_benchmark(const BenchmarkReport& report, const std::filesystem::path& out_dir);

struct MaterialOutcome {
  std::filesystem::path file;
  std::string material;
  bool ok = false;
  std::string error;
  double max_error = 0.0;
  bool diverged = false;
};

/// One band run per *.json file (sorted by name) into out_dir/<stem>/.
/// Per-file failures are recorded, not thrown; an empty directory throws ConfigError.
std::vector<MaterialOutcome> run_all_materials(const RunConfig& config,
                                               const std::filesystem::path& dir);

/// "2..7" or "2,3,5".
std::vector<int> parse_int_range(const std::string& text);

}  // namespace kpvqe
