// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpvqe/circuit.hpp"
#include "kpvqe/kp_model.hpp"
#include "kpvqe/optimizers.hpp"
#include "kpvqe/pauli.hpp"

namespace kpvqe {

inline constexpr std::uint64_t kDefaultSeed = 20220801;

/// Weighted subspace-search problem: minimise sum_l w_l <psi_l|U^dag H U|psi_l>
/// over the ansatz angles, with orthogonal basis-state inputs |psi_l>.
struct SSVQEProblem {
  PauliHamiltonian hamiltonian;
  std::vector<QWCGroup> groups;
  std::vector<double> weights;                      // strictly descending, positive
  std::vector<std::size_t> initial_basis_indices;   // distinct
  int n_layers = 5;
  EvalMode mode = ExactMode{};

  /// Weights (2^n, ..., 1) over every computational basis state, greedy QWC groups.
  static SSVQEProblem standard(PauliHamiltonian h, int n_layers, EvalMode mode = ExactMode{});

  [[nodiscard]] std::size_t n_states() const { return weights.size(); }
  /// Throws std::invalid_argument on shape or ordering violations.
  void validate() const;
};

/// Per-state unweighted expectations <psi_l|U^dag H U|psi_l>, in input order.
/// Stochastic modes seed state l with mix_seed(mode seed, l).
std::vector<double> state_energies(const AnsatzParams& theta, const SSVQEProblem& problem);

/// Weighted cost sum_l w_l E_l.
double cost(const AnsatzParams& theta, const SSVQEProblem& problem);

/// Parameter-shift gradient g_i = [C(theta + pi/2 e_i) - C(theta - pi/2 e_i)] / 2.
/// Each shifted evaluation in a stochastic mode draws its own derived seed.
std::vector<double> gradient(const AnsatzParams& theta, const SSVQEProblem& problem);

struct SSVQEResult {
  std::vector<double> energies;            // ascending, eV
  std::vector<std::size_t> energy_sources; // basis index that produced energies[i]
  AnsatzParams theta_opt;
  int cycles = 0;
  std::uint64_t cost_evaluations = 0;      // full weighted-cost evaluations, incl. shifts and probes
  double wall_time = 0.0;                  // seconds
  bool converged = false;
  bool diverged = false;
  std::vector<double> cost_history;
};

/// Iterates optimiser steps until |C_t - C_{t-1}| < tol (three consecutive
/// cycles in stochastic modes) or max_cycles. theta_opt is the lowest-cost
/// iterate seen; energies are re-evaluated there.
SSVQEResult minimize(const SSVQEProblem& problem, const OptimizerConfig& optimizer,
                     const AnsatzParams& theta_init);

inline constexpr int kStochasticPatience = 3;

struct SweepOptions {
  int n_layers = 5;
  OptimizerConfig optimizer;
  EvalMode mode = ExactMode{};
  std::uint64_t seed = kDefaultSeed;
  bool warm_start = true;
  KpOptions kp;
  /// Contiguous chunks processed concurrently; each chunk cold-starts at its head.
  std::size_t chunks = 1;
};

struct BandPoint {
  KPoint k;
  SSVQEResult ssvqe;
  std::vector<double> exact;   // ascending exact eigenvalues
  std::vector<double> errors;  // |ssvqe.energies[i] - exact[i]|
};

struct BandStructureResult {
  std::string material;
  int n_layers = 0;
  OptimizerConfig optimizer;
  EvalMode mode = ExactMode{};
  std::uint64_t seed = 0;
  std::vector<BandPoint> points;

  [[nodiscard]] bool any_diverged() const;
  [[nodiscard]] double max_error() const;
  [[nodiscard]] double median_error() const;  // over all (point, band) pairs
  [[nodiscard]] int total_cycles() const;
};

/// Sequential sweep along `path`; each k-point warm-starts from the previous
/// optimum (the first from seeded uniform angles in [-pi, pi)). Divergent
/// points are flagged and the sweep continues from the last good angles.
BandStructureResult band_sweep(const MaterialParams& material, const std::vector<KPoint>& path,
                               const SweepOptions& options);

/// SSVQE problem for one k-point of a material.
SSVQEProblem kp_problem(const MaterialParams& material, const KPoint& k, int n_layers,
                        const EvalMode& mode, const KpOptions& kp = {});

/// Tolerance defaults by mode: 1e-7 exact, 1e-4 sampled, 1e-3 noisy (eV).
double default_tolerance(const EvalMode& mode);

}  // namespace kpvqe
