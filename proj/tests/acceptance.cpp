// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kpvqe/exact.hpp"
#include "kpvqe/runner.hpp"
#include "kpvqe/spectra.hpp"
#include "oracles.hpp"

using namespace kpvqe;
namespace fs = std::filesystem;

namespace {

const fs::path kMaterials = KPVQE_DATA_DIR "/materials";

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

MaterialParams material(const std::string& stem) { return load_material_file(kMaterials / (stem + ".json")); }

BandStructureResult default_sweep(const MaterialParams& m) {
  return band_sweep(m, make_kpath(m.a, kDefaultPointsPerSegment, kDefaultPathExtent), SweepOptions{});
}

Outcome pauli_round_trip() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const CMatrix h = oracle::random_hermitian(4, rng);
    const PauliHamiltonian ph = decompose(HermitianMatrix(h), 0.0);
    CMatrix rebuilt = CMatrix::Zero(4, 4);
    for (const auto& t : ph.terms()) rebuilt += t.coefficient * oracle::pauli(t.string.str());
    worst = std::max(worst, (rebuilt - h).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "1000 matrices, max elementwise error " + fmt("%.2e", worst)};
}

Outcome qwc_sixteen() {
  std::vector<PauliTerm> terms;
  for (const auto& s : all_pauli_strings(2)) terms.push_back({s, 1.0});
  const PauliHamiltonian h(2, terms);
  const auto groups = qwc_partition(h);
  bool valid = true;
  try {
    check_partition(h, groups);
  } catch (const std::exception&) {
    valid = false;
  }
  return {valid && groups.size() == 9,
          std::to_string(groups.size()) + " groups" + (valid ? ", partition valid" : ", partition INVALID")};
}

Outcome band_accuracy(const BandStructureResult& r) {
  const bool ok = !r.any_diverged() && r.max_error() <= 0.05 && r.median_error() <= 5e-3;
  return {ok, r.material + " " + std::to_string(r.points.size()) + " points, max " +
                  fmt("%.3e", r.max_error()) + " eV, median " + fmt("%.3e", r.median_error()) + " eV"};
}

Outcome gaas_bands() { return band_accuracy(default_sweep(material("gaas"))); }

Outcome all_compounds() {
  bool ok = true;
  std::string detail;
  for (const char* stem : {"inp", "inas", "insb", "alp", "gap", "gasb"}) {
    const Outcome o = band_accuracy(default_sweep(material(stem)));
    ok = ok && o.pass;
    detail += (detail.empty() ? "" : "; ") + o.detail.substr(0, o.detail.find(" points")) +
              " max " + o.detail.substr(o.detail.find("max ") + 4, 9);
  }
  return {ok, detail};
}

Outcome gradient_check() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  double worst_abs = 0.0;
  int structural = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const PauliHamiltonian h = decompose(HermitianMatrix(oracle::random_hermitian(4, rng)), 0.0);
    const SSVQEProblem p = SSVQEProblem::standard(h, 5);
    const AnsatzParams theta(2, 5, oracle::random_angles(30, rng));
    const auto g = gradient(theta, p);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      AnsatzParams a = theta, b = theta;
      a.angles[i] += 1e-5;
      b.angles[i] -= 1e-5;
      const double fd = (cost(a, p) - cost(b, p)) / 2e-5;
      // a leading RZ on a basis state is a pure phase, so some components vanish exactly
      if (std::abs(g[i]) < 1e-8) {
        ++structural;
        worst_abs = std::max(worst_abs, std::abs(g[i] - fd));
      } else {
        worst = std::max(worst, std::abs(g[i] - fd) / std::abs(g[i]));
      }
    }
  }
  return {worst <= 1e-6 && worst_abs <= 1e-9,
          "50 draws x 30 angles, max relative deviation " + fmt("%.2e", worst) + "; " +
              std::to_string(structural) + " zero components, max abs deviation " + fmt("%.2e", worst_abs)};
}

Outcome estimator_statistics() {
  std::mt19937_64 rng(106);
  const PauliHamiltonian h = decompose(HermitianMatrix(oracle::random_hermitian(4, rng)), 0.0);
  const auto groups = qwc_partition(h);
  const StateVector s = apply_ansatz(AnsatzParams(2, 3, oracle::random_angles(18, rng)), 1);
  const double exact = expectation(s, h, groups, ExactMode{});
  auto draws = [&](std::uint64_t shots) {
    std::vector<double> v;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      v.push_back(expectation(s, h, groups, SampledMode{shots, mix_seed(shots, seed)}));
    }
    return v;
  };
  const auto low = draws(100);
  const auto high = draws(10000);
  const double se = oracle::stddev(high) / std::sqrt(200.0);
  const double bias = std::abs(oracle::mean(high) - exact);
  const double se_low = oracle::stddev(low) / std::sqrt(200.0);
  const double bias_low = std::abs(oracle::mean(low) - exact);
  const double ratio = oracle::stddev(low) / oracle::stddev(high);
  const bool ok = bias <= 3 * se && bias_low <= 3 * se_low && ratio >= 5 && ratio <= 20;
  return {ok, "bias/SE " + fmt("%.2f", bias / se) + " (1e4 shots), " + fmt("%.2f", bias_low / se_low) +
                  " (1e2 shots); sd ratio " + fmt("%.2f", ratio)};
}

Outcome sampled_bands() {
  const MaterialParams m = material("gaas");
  SweepOptions o;
  o.mode = SampledMode{10000, kDefaultSeed};
  o.optimizer.tol = 1e-4;
  const BandStructureResult r = band_sweep(m, make_kpath(m.a, 3, kDefaultPathExtent), o);
  int converged = 0;
  for (const auto& p : r.points) converged += p.ssvqe.converged ? 1 : 0;
  return {!r.any_diverged() && r.points.size() == 5 && r.max_error() <= 0.4,
          "5 points, max error " + fmt("%.3e", r.max_error()) + " eV, " + std::to_string(converged) +
              "/5 converged before the cycle cap"};
}

Outcome noise_limits() {
  std::mt19937_64 rng(108);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PauliHamiltonian h = decompose(HermitianMatrix(oracle::random_hermitian(4, rng)), 0.0);
    const AnsatzParams p(2, 3, oracle::random_angles(18, rng));
    const std::size_t b = static_cast<std::size_t>(i % 4);
    const double noiseless = expectation_exact(evolve_noisy(p, b, NoiseConfig{}).rho, h);
    const double pure = expectation_exact(apply_ansatz(p, b).amplitudes, h);
    worst = std::max(worst, std::abs(noiseless - pure));
  }
  double purity_dev = 0.0;
  for (int i = 0; i < 20; ++i) {
    const AnsatzParams p(2, 1 + i % 3, oracle::random_angles(AnsatzParams::angle_count(2, 1 + i % 3), rng));
    purity_dev = std::max(purity_dev, std::abs(evolve_noisy(p, 0, NoiseConfig{1.0, 1.0, 0.0}).purity() - 0.25));
  }
  return {worst <= 1e-10 && purity_dev <= 1e-10,
          "zero-noise deviation " + fmt("%.2e", worst) + ", full-depolarisation purity deviation " +
              fmt("%.2e", purity_dev)};
}

Outcome amplitude_equivalence() {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PauliHamiltonian t = decompose(HermitianMatrix(oracle::random_hermitian(4, rng)), 0.0);
    std::size_t v = pick(rng), c = pick(rng);
    while (c == v) c = pick(rng);
    TransitionRequest req;
    req.thetas.emplace_back(2, 5, oracle::random_angles(30, rng));
    req.band_sources.push_back({0, 1, 2, 3});
    req.valence_bands = {v};
    req.conduction_band = c;
    req.groups = qwc_partition(t);
    req.observable = t;
    const Complex rec = transition_amplitude(req, 0, v);
    worst = std::max(worst, std::abs(rec - direct_amplitude(req.thetas[0], v, c, t.to_matrix())));
  }
  const std::size_t budget = call_budget(TransitionRequest{});
  return {worst <= 1e-10 && budget == 10,
          "100 draws, max deviation " + fmt("%.2e", worst) + "; default call budget " + std::to_string(budget)};
}

Outcome absorption_equivalence() {
  const MaterialParams m = material("gaas");
  const BandStructureResult bands = default_sweep(m);
  const PauliHamiltonian t = load_observable(KPVQE_DATA_DIR "/observables/dipole_x.json");
  const TransitionRequest req = TransitionRequest::from_bands(bands, t);
  const auto grid = default_omega_grid(m.eps_gamma);
  const AbsorptionSpectrum quantum = absorption(bands, req, grid);

  // classical pipeline: dense inner products on the optimised states
  const CMatrix tm = t.to_matrix();
  std::vector<TransitionLine> lines;
  double gap = 1e300;
  for (const auto& p : bands.points) {
    const auto& e = p.ssvqe.energies;
    const auto& src = p.ssvqe.energy_sources;
    for (std::size_t v = 0; v < 3; ++v) {
      const Complex a = direct_amplitude(p.ssvqe.theta_opt, src[v], src[3], tm);
      lines.push_back({e[3] - e[v], std::norm(a)});
      gap = std::min(gap, e[3] - e[v]);
    }
  }
  const AbsorptionSpectrum classical = absorption_from_lines(lines, grid);

  double worst = 0.0;
  bool zero_below = true;
  bool staircase = true;
  bool nonzero = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(quantum.alpha[i] - classical.alpha[i]));
    if (grid[i] < gap && quantum.alpha[i] != 0.0) zero_below = false;
    if (quantum.alpha[i] > 0.0) nonzero = true;
    if (i > 0 && quantum.alpha[i] * grid[i] < quantum.alpha[i - 1] * grid[i - 1] - 1e-15) staircase = false;
  }
  return {worst <= 1e-6 && zero_below && staircase && nonzero,
          "max pointwise deviation " + fmt("%.2e", worst) + ", zero below " + fmt("%.4f", gap) + " eV: " +
              (zero_below ? "yes" : "no") + ", alpha*hw non-decreasing: " + (staircase ? "yes" : "no")};
}

Outcome benchmark_shape() {
  RunConfig c;
  c.material_path = kMaterials / "gaas.json";
  const BenchmarkReport report = run_benchmark(c, parse_int_range("2..7"), {OptimizerKind::Adam});
  std::string table;
  const BenchmarkRow* best = &report.rows.front();
  for (const auto& row : report.rows) {
    if (row.mean_cycles < best->mean_cycles) best = &row;
    table += (table.empty() ? "" : ", ") + std::to_string(row.layers) + ":" + fmt("%.1f", row.mean_cycles);
  }
  const bool interior = best->layers != report.rows.front().layers && best->layers != report.rows.back().layers;
  return {interior, "mean cycles {" + table + "}, minimum at " + std::to_string(best->layers) + " layers"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Pauli round trip", pauli_round_trip},
      {"QWC 16 -> 9", qwc_sixteen},
      {"GaAs band structure, exact mode", gaas_bands},
      {"all seven compounds", all_compounds},
      {"gradient correctness", gradient_check},
      {"estimator statistics", estimator_statistics},
      {"sampled-mode band accuracy", sampled_bands},
      {"noise reduction limits", noise_limits},
      {"transition-amplitude equivalence", amplitude_equivalence},
      {"absorption pipeline equivalence", absorption_equivalence},
      {"benchmark shape", benchmark_shape},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
