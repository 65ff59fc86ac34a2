// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kpvqe/circuit.hpp"
#include "kpvqe/pauli.hpp"
#include "kpvqe/ssvqe.hpp"

namespace kpvqe {

/// Circuit preparing a two-term superposition from a basis state. The
/// prepared state times `global_phase` equals the target exactly.
struct SuperpositionPrep {
  Preparation prep;
  Complex global_phase{1.0, 0.0};
};

struct SuperpositionPair {
  SuperpositionPrep plus_x;  // (|v> + |c>) / sqrt(2)
  SuperpositionPrep plus_y;  // (|v> + i|c>) / sqrt(2)
};

/// Hadamard on the most significant differing wire, an optional S / S^dagger,
/// then CNOTs onto the remaining differing wires. Throws if v == c.
SuperpositionPair superposition_states(int n_qubits, std::size_t v, std::size_t c);

/// The exact target state of a preparation (global phase applied).
StateVector prepared_state(const SuperpositionPrep& s);

struct TransitionRequest {
  std::vector<AnsatzParams> thetas;                    // optimised angles per k-point
  std::vector<std::vector<std::size_t>> band_sources;  // per k-point: basis index of band b
  std::vector<std::size_t> valence_bands{0, 1, 2};
  std::size_t conduction_band = 3;
  PauliHamiltonian observable;
  std::vector<QWCGroup> groups;
  EvalMode mode = ExactMode{};
  std::uint64_t seed = kDefaultSeed;

  /// Bands ordered by ascending SSVQE energy, observable grouped greedily.
  static TransitionRequest from_bands(const BandStructureResult& bands, PauliHamiltonian observable,
                                      EvalMode mode = ExactMode{});
  /// Throws std::invalid_argument on shape or index problems.
  void validate() const;
};

/// Identity observable on n qubits.
PauliHamiltonian identity_observable(int n_qubits);

/// <phi_v|U^dag T U|phi_c> for one valence band at one k-point, from
///   Re = <+x|T~|+x> - (T~_vv + T~_cc)/2,   Im = (T~_vv + T~_cc)/2 - <+y|T~|+y>.
/// Throws std::out_of_range when k_index has no optimised angles.
Complex transition_amplitude(const TransitionRequest& req, std::size_t k_index,
                             std::size_t valence_band);

/// All valence amplitudes at one k-point; diagonal terms are evaluated once
/// and shared between pairs.
std::vector<Complex> transition_amplitudes(const TransitionRequest& req, std::size_t k_index);

/// Distinct circuit evaluations per k-point: one per distinct band endpoint
/// plus two superposition states per (v, c) pair.
std::size_t call_budget(std::span<const std::pair<std::size_t, std::size_t>> pairs);
std::size_t call_budget(const TransitionRequest& req);

enum class StepConvention {
  OnsetAtGap,  // Theta(hw - e_vc)
  AsPrinted,   // Theta(e_vc - hw)
};

struct AbsorptionSpectrum {
  std::vector<double> photon_energies;  // eV, strictly increasing
  std::vector<double> alpha;            // normalised to unit maximum (all zero if no weight)
  double scale = 0.0;                   // raw maximum before normalisation
};

/// One contribution |A|^2 * Theta(...) located at transition energy e_vc.
struct TransitionLine {
  double energy = 0.0;
  double weight = 0.0;
};

/// alpha(hw) ~ (1/hw) sum_lines weight * Theta. Weights below 1e-20 are
/// treated as rounding noise. Throws std::invalid_argument on a bad grid.
AbsorptionSpectrum absorption_from_lines(std::span<const TransitionLine> lines,
                                         std::vector<double> omega_grid,
                                         StepConvention step = StepConvention::OnsetAtGap);

/// Quantum-path spectrum: amplitudes from `req`, transition energies from the
/// SSVQE energies in `bands`. Throws std::invalid_argument on an empty result.
AbsorptionSpectrum absorption(const BandStructureResult& bands, const TransitionRequest& req,
                              std::vector<double> omega_grid,
                              StepConvention step = StepConvention::OnsetAtGap);

/// 5 meV steps from 5 meV up to eps_gamma + 1 eV.
std::vector<double> default_omega_grid(double eps_gamma);

}  // namespace kpvqe
