// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

namespace kpvqe {

namespace {

constexpr double kWeightFloor = 1e-20;

struct Evaluator {
  const TransitionRequest& req;
  std::size_t k_index;
  const Circuit ansatz;
  std::uint64_t counter = 0;

  Evaluator(const TransitionRequest& r, std::size_t k)
      : req(r), k_index(k), ansatz(ansatz_circuit(r.thetas.at(k))) {}

  double run(const Circuit& circuit, std::size_t basis_index) {
    const EvalMode mode =
        is_stochastic(req.mode)
            ? with_seed(req.mode, mix_seed(mix_seed(req.seed, k_index), counter++))
            : req.mode;
    return expectation(circuit, basis_index, req.observable, req.groups, mode);
  }

  double diagonal(std::size_t basis_index) { return run(ansatz, basis_index); }

  double superposition(const SuperpositionPrep& s) {
    Circuit full = s.prep.circuit;
    full.append(ansatz);
    return run(full, s.prep.basis_index);
  }
};

}  // namespace

SuperpositionPair superposition_states(int n_qubits, std::size_t v, std::size_t c) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (v >= dim || c >= dim) throw std::out_of_range("superposition_states: index out of range");
  if (v == c) throw std::invalid_argument("superposition_states: v and c must differ");

  const std::size_t diff = v ^ c;
  const int top_bit = std::bit_width(diff) - 1;
  const int pivot = n_qubits - 1 - top_bit;
  const std::size_t pivot_mask = std::size_t{1} << top_bit;
  // Branch A carries pivot bit 0 and is the starting basis state.
  const bool c_is_upper = (c & pivot_mask) != 0;
  const std::size_t start = c_is_upper ? v : c;

  auto build = [&](bool imaginary) {
    SuperpositionPrep s;
    s.prep.circuit.n_qubits = n_qubits;
    s.prep.basis_index = start;
    s.prep.circuit.single(pivot, hadamard_matrix());
    if (imaginary) {
      s.prep.circuit.single(pivot, phase_matrix(c_is_upper ? std::numbers::pi / 2
                                                           : -std::numbers::pi / 2));
      // |c> - i|v> = -i (|v> + i|c>)
      if (!c_is_upper) s.global_phase = Complex(0.0, 1.0);
    }
    for (int q = 0; q < n_qubits; ++q) {
      const std::size_t mask = std::size_t{1} << (n_qubits - 1 - q);
      if (q != pivot && (diff & mask)) s.prep.circuit.cnot(pivot, q);
    }
    return s;
  };
  return {build(false), build(true)};
}

StateVector prepared_state(const SuperpositionPrep& s) {
  StateVector out = simulate(s.prep.circuit, s.prep.basis_index);
  out.amplitudes *= s.global_phase;
  return out;
}

PauliHamiltonian identity_observable(int n_qubits) {
  return PauliHamiltonian(n_qubits, {{PauliString::identity(n_qubits), 1.0}});
}

TransitionRequest TransitionRequest::from_bands(const BandStructureResult& bands,
                                                PauliHamiltonian observable, EvalMode mode) {
  TransitionRequest req;
  for (const auto& p : bands.points) {
    req.thetas.push_back(p.ssvqe.theta_opt);
    req.band_sources.push_back(p.ssvqe.energy_sources);
  }
  req.groups = qwc_partition(observable);
  req.observable = std::move(observable);
  req.mode = std::move(mode);
  req.seed = bands.seed;
  return req;
}

void TransitionRequest::validate() const {
  if (thetas.size() != band_sources.size()) {
    throw std::invalid_argument("TransitionRequest: angle and band-source counts differ");
  }
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    if (thetas[k].n_qubits != observable.n_qubits()) {
      throw std::invalid_argument("TransitionRequest: observable width does not match ansatz");
    }
    const std::size_t p = band_sources[k].size();
    for (std::size_t v : valence_bands) {
      if (v >= p) throw std::invalid_argument("TransitionRequest: valence band out of range");
      if (v == conduction_band) {
        throw std::invalid_argument("TransitionRequest: valence band equals conduction band");
      }
    }
    if (conduction_band >= p) {
      throw std::invalid_argument("TransitionRequest: conduction band out of range");
    }
  }
  validate_mode(mode);
  check_partition(observable, groups);
}

Complex transition_amplitude(const TransitionRequest& req, std::size_t k_index,
                             std::size_t valence_band) {
  if (k_index >= req.thetas.size()) {
    throw std::out_of_range("transition_amplitude: no optimised angles at k-point " +
                            std::to_string(k_index));
  }
  const auto& sources = req.band_sources[k_index];
  const std::size_t v = sources.at(valence_band);
  const std::size_t c = sources.at(req.conduction_band);
  Evaluator eval(req, k_index);
  const SuperpositionPair sp = superposition_states(req.thetas[k_index].n_qubits, v, c);
  const double half_diag = 0.5 * (eval.diagonal(v) + eval.diagonal(c));
  return {eval.superposition(sp.plus_x) - half_diag, half_diag - eval.superposition(sp.plus_y)};
}

std::vector<Complex> transition_amplitudes(const TransitionRequest& req, std::size_t k_index) {
  if (k_index >= req.thetas.size()) {
    throw std::out_of_range("transition_amplitudes: no optimised angles at k-point " +
                            std::to_string(k_index));
  }
  const auto& sources = req.band_sources[k_index];
  const std::size_t c = sources.at(req.conduction_band);
  Evaluator eval(req, k_index);
  const double diag_c = eval.diagonal(c);
  std::vector<Complex> out;
  for (std::size_t band : req.valence_bands) {
    const std::size_t v = sources.at(band);
    const SuperpositionPair sp = superposition_states(req.thetas[k_index].n_qubits, v, c);
    const double half_diag = 0.5 * (eval.diagonal(v) + diag_c);
    out.emplace_back(eval.superposition(sp.plus_x) - half_diag,
                     half_diag - eval.superposition(sp.plus_y));
  }
  return out;
}

std::size_t call_budget(std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::set<std::size_t> endpoints;
  for (const auto& [v, c] : pairs) {
    endpoints.insert(v);
    endpoints.insert(c);
  }
  return endpoints.size() + 2 * pairs.size();
}

std::size_t call_budget(const TransitionRequest& req) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t v : req.valence_bands) pairs.emplace_back(v, req.conduction_band);
  return call_budget(pairs);
}

AbsorptionSpectrum absorption_from_lines(std::span<const TransitionLine> lines,
                                         std::vector<double> omega_grid, StepConvention step) {
  if (omega_grid.empty()) throw std::invalid_argument("absorption: empty photon-energy grid");
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    if (!(omega_grid[i] > 0.0)) throw std::invalid_argument("absorption: grid must be positive");
    if (i > 0 && !(omega_grid[i] > omega_grid[i - 1])) {
      throw std::invalid_argument("absorption: grid must be strictly increasing");
    }
  }
  AbsorptionSpectrum out;
  out.alpha.assign(omega_grid.size(), 0.0);
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const double w = omega_grid[i];
    double sum = 0.0;
    for (const auto& line : lines) {
      if (line.weight < kWeightFloor) continue;
      const bool on = step == StepConvention::OnsetAtGap ? w >= line.energy : line.energy >= w;
      if (on) sum += line.weight;
    }
    out.alpha[i] = sum / w;
  }
  out.scale = *std::max_element(out.alpha.begin(), out.alpha.end());
  if (out.scale > 0.0) {
    for (double& a : out.alpha) a /= out.scale;
  }
  out.photon_energies = std::move(omega_grid);
  return out;
}

AbsorptionSpectrum absorption(const BandStructureResult& bands, const TransitionRequest& req,
                              std::vector<double> omega_grid, StepConvention step) {
  if (bands.points.empty()) throw std::invalid_argument("absorption: empty band result");
  if (req.thetas.size() != bands.points.size()) {
    throw std::invalid_argument("absorption: request and band result cover different k-points");
  }
  req.validate();
  std::vector<TransitionLine> lines;
  for (std::size_t k = 0; k < bands.points.size(); ++k) {
    const auto& energies = bands.points[k].ssvqe.energies;
    const std::vector<Complex> amps = transition_amplitudes(req, k);
    for (std::size_t i = 0; i < req.valence_bands.size(); ++i) {
      lines.push_back({energies.at(req.conduction_band) - energies.at(req.valence_bands[i]),
                       std::norm(amps[i])});
    }
  }
  return absorption_from_lines(lines, std::move(omega_grid), step);
}

std::vector<double> default_omega_grid(double eps_gamma) {
  std::vector<double> grid;
  const double step = 0.005;
  const double top = eps_gamma + 1.0;
  for (int i = 1; i * step <= top + 1e-12; ++i) grid.push_back(i * step);
  return grid;
}

}  // namespace kpvqe
