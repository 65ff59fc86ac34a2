// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

// kpvqe: band structures and absorption spectra of zinc-blende
// semiconductors from a four-band k.p model solved variationally.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kpvqe/exact.hpp"
#include "kpvqe/runner.hpp"

namespace {

using namespace kpvqe;

struct CliState {
  RunConfig config;
  std::string optimizer = "adam";
  double tol = 0.0;
  std::string k_text = "0,0,0";
  std::string bands_result;
  std::string observable = "identity";
  std::string layers_range = "2..7";
  std::string optimizer_set = "adam";
  std::string material_dir;
  bool as_printed = false;
  bool inv_sqrt3 = false;
  bool no_timing = false;
};

void add_material(CLI::App* cmd, CliState& s) {
  cmd->add_option("--material", s.config.material_path, "material parameter file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_kp_flags(CLI::App* cmd, CliState& s) {
  cmd->add_flag("--as-printed-signs", s.as_printed, "positive Q and +Delta on the split-off diagonal");
  cmd->add_flag("--split-off-sqrt3", s.inv_sqrt3, "use -P kz/sqrt(3) for the (3,4) coupling");
}

void add_run_flags(CLI::App* cmd, CliState& s) {
  cmd->add_option("--layers", s.config.n_layers, "ansatz layers")->check(CLI::PositiveNumber);
  cmd->add_option("--optimizer", s.optimizer, "adam | adagrad | nesterov | gd | cg");
  cmd->add_option("--lr", s.config.step_rate, "optimiser step rate");
  cmd->add_option("--tol", s.tol, "convergence threshold in eV (default by mode)");
  cmd->add_option("--max-cycles", s.config.max_cycles, "cycle cap per k-point");
  cmd->add_option("--mode", s.config.mode, "statevector | sampled | noisy");
  cmd->add_option("--shots", s.config.shots, "shots per measurement group");
  cmd->add_option("--seed", s.config.seed, "master seed");
  cmd->add_option("--noise-1q", s.config.noise.p_depol_1q, "single-qubit depolarising probability");
  cmd->add_option("--noise-2q", s.config.noise.p_depol_2q, "two-qubit depolarising probability");
  cmd->add_option("--noise-readout", s.config.noise.p_readout_flip, "readout flip probability");
  cmd->add_option("--kpoints", s.config.points_per_segment, "points per path segment (Gamma shared)");
  cmd->add_option("--extent", s.config.extent, "fraction of the way to X and L");
  cmd->add_option("--chunks", s.config.chunks, "k-path chunks run concurrently");
  cmd->add_option("--out", s.config.out_dir, "output directory");
  cmd->add_flag("--no-timing", s.no_timing, "write 0 in the seconds column");
  add_kp_flags(cmd, s);
}

void finish_config(CliState& s, const CLI::App& cmd) {
  s.config.optimizer = parse_optimizer(s.optimizer);
  if (const auto* opt = cmd.get_option_no_throw("--tol"); opt != nullptr && opt->count() > 0) {
    s.config.tol = s.tol;
  }
  s.config.record_timing = !s.no_timing;
  s.config.kp.convention = s.as_printed ? SignConvention::AsPrinted : SignConvention::FigureConsistent;
  s.config.kp.split_off_coupling =
      s.inv_sqrt3 ? SplitOffCoupling::InvSqrtThree : SplitOffCoupling::OneThird;
  s.config.validate();
}

KPoint parse_k(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw ConfigError("--k: cannot parse '" + item + "'");
    }
  }
  if (v.size() != 3) throw ConfigError("--k expects KX,KY,KZ in 1/Angstrom");
  return {v[0], v[1], v[2], 0.0};
}

std::vector<OptimizerKind> parse_optimizer_set(const std::string& text) {
  std::vector<OptimizerKind> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_optimizer(item));
  }
  return out;
}

int cmd_decompose(CliState& s) {
  const MaterialParams m = load_material_file(s.config.material_path);
  const HermitianMatrix h = build_hamiltonian(m, parse_k(s.k_text), s.config.kp);
  const PauliHamiltonian ph = decompose(h);
  const auto groups = qwc_partition(ph);
  auto doc = decomposition_json(ph, groups);
  doc["material"] = m.name;
  doc["eigenvalues"] = eigh(h).eigenvalues;
  std::cout << doc.dump(2) << '\n';
  return kExitSuccess;
}

int cmd_bands(CliState& s) {
  const BandStructureResult r = run_bands(s.config);
  std::printf("%s: %zu k-points, max error %.3e eV, median %.3e eV, %d cycles -> %s\n",
              r.material.c_str(), r.points.size(), r.max_error(), r.median_error(),
              r.total_cycles(), s.config.out_dir.string().c_str());
  if (r.any_diverged()) {
    std::fprintf(stderr, "one or more k-points diverged\n");
    return kExitDivergence;
  }
  return kExitSuccess;
}

int cmd_spectrum(CliState& s) {
  const SpectrumRun run = run_spectrum(s.config, s.bands_result, s.observable);
  std::printf("%zu photon energies, %zu circuit calls per k-point, %zu total -> %s\n",
              run.spectrum.photon_energies.size(), run.call_budget_per_k, run.total_calls,
              s.config.out_dir.string().c_str());
  return kExitSuccess;
}

int cmd_benchmark(CliState& s) {
  const BenchmarkReport report =
      run_benchmark(s.config, parse_int_range(s.layers_range), parse_optimizer_set(s.optimizer_set));
  write_benchmark(report, s.config.out_dir);
  std::cout << benchmark_csv(report);
  return kExitSuccess;
}

int cmd_validate(CliState& s) {
  const MaterialParams m = load_material_file(s.config.material_path);
  const auto path = make_kpath(m.a, s.config.points_per_segment, s.config.extent);
  double worst = 0.0;
  for (const auto& k : path) {
    const HermitianMatrix h = build_hamiltonian(m, k, s.config.kp);
    worst = std::max(worst, (decompose(h).to_matrix() - h.matrix()).cwiseAbs().maxCoeff());
  }
  std::printf("%s: parameters ok, P = %.4f eV A, Pauli reconstruction error %.1e\n", m.name.c_str(),
              m.kane_p(), worst);

  const BandStructureResult r = band_sweep(m, path, s.config.sweep_options());
  std::printf("%5s %10s %12s %12s %12s %12s %7s\n", "index", "path", "err0", "err1", "err2",
              "err3", "cycles");
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const BandPoint& p = r.points[i];
    std::printf("%5zu %10.6f", i, p.k.path_coord);
    for (double e : p.errors) std::printf(" %12.4e", e);
    std::printf(" %7d%s\n", p.ssvqe.cycles, p.ssvqe.diverged ? "  diverged" : "");
  }
  std::printf("max error %.4e eV, median %.4e eV\n", r.max_error(), r.median_error());
  return r.any_diverged() ? kExitDivergence : kExitSuccess;
}

int cmd_all_materials(CliState& s) {
  const auto outcomes = run_all_materials(s.config, s.material_dir);
  bool failed = false;
  bool diverged = false;
  for (const auto& o : outcomes) {
    if (o.ok) {
      std::printf("%-8s ok    max error %.3e eV\n", o.material.c_str(), o.max_error);
    } else {
      std::printf("%-8s FAIL  %s\n", o.material.c_str(), o.error.c_str());
      (o.diverged ? diverged : failed) = true;
    }
  }
  if (failed) return kExitPartialFailure;
  return diverged ? kExitDivergence : kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CliState s;
  CLI::App app{"kpvqe: variational k.p band structures and absorption spectra"};
  app.require_subcommand(1);

  auto* decompose_cmd = app.add_subcommand("decompose", "Pauli decomposition and QWC groups at one k-point");
  add_material(decompose_cmd, s);
  decompose_cmd->add_option("--k", s.k_text, "KX,KY,KZ in 1/Angstrom");
  add_kp_flags(decompose_cmd, s);

  auto* bands_cmd = app.add_subcommand("bands", "SSVQE band structure along X-Gamma-L");
  add_material(bands_cmd, s);
  add_run_flags(bands_cmd, s);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "absorption spectrum from a saved band result");
  add_material(spectrum_cmd, s);
  spectrum_cmd->add_option("--bands-result", s.bands_result, "bands.json from a previous run")
      ->required()
      ->check(CLI::ExistingFile);
  spectrum_cmd->add_option("--observable", s.observable, "identity or a JSON term file");
  spectrum_cmd->add_option("--mode", s.config.mode, "statevector | sampled | noisy");
  spectrum_cmd->add_option("--shots", s.config.shots, "shots per measurement group");
  spectrum_cmd->add_option("--seed", s.config.seed, "master seed");
  spectrum_cmd->add_option("--noise-1q", s.config.noise.p_depol_1q, "single-qubit depolarising probability");
  spectrum_cmd->add_option("--noise-2q", s.config.noise.p_depol_2q, "two-qubit depolarising probability");
  spectrum_cmd->add_option("--noise-readout", s.config.noise.p_readout_flip, "readout flip probability");
  spectrum_cmd->add_option("--out", s.config.out_dir, "output directory");

  auto* bench_cmd = app.add_subcommand("benchmark", "cycles and timings over layers and optimisers");
  add_material(bench_cmd, s);
  bench_cmd->add_option("--layers", s.layers_range, "2..7 or 2,3,5");
  bench_cmd->add_option("--optimizers", s.optimizer_set, "comma separated, e.g. adam,adagrad,nesterov,cg");
  bench_cmd->add_option("--lr", s.config.step_rate, "optimiser step rate");
  bench_cmd->add_option("--tol", s.tol, "convergence threshold in eV");
  bench_cmd->add_option("--max-cycles", s.config.max_cycles, "cycle cap per k-point");
  bench_cmd->add_option("--seed", s.config.seed, "master seed");
  bench_cmd->add_option("--kpoints", s.config.points_per_segment, "points per path segment");
  bench_cmd->add_option("--extent", s.config.extent, "fraction of the way to X and L");
  bench_cmd->add_option("--out", s.config.out_dir, "output directory");

  auto* validate_cmd = app.add_subcommand("validate", "check a material file and print SSVQE-vs-exact errors");
  add_material(validate_cmd, s);
  add_run_flags(validate_cmd, s);

  auto* all_cmd = app.add_subcommand("all-materials", "band structure for every material file in a directory");
  all_cmd->add_option("--dir", s.material_dir, "directory of material files")->required();
  add_run_flags(all_cmd, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitSuccess : kExitConfigError;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    finish_config(s, *active);
    if (active == decompose_cmd) return cmd_decompose(s);
    if (active == bands_cmd) return cmd_bands(s);
    if (active == spectrum_cmd) return cmd_spectrum(s);
    if (active == bench_cmd) return cmd_benchmark(s);
    if (active == validate_cmd) return cmd_validate(s);
    return cmd_all_materials(s);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPartialFailure;
  }
}
