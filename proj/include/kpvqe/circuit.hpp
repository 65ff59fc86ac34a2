// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kpvqe/common.hpp"
#include "kpvqe/pauli.hpp"

namespace kpvqe {

using Mat2 = Eigen::Matrix2cd;

// Wire 0 is the most significant bit of a basis index throughout.

Mat2 rz_matrix(double theta);
Mat2 ry_matrix(double theta);
/// RZ(a) * RY(b) * RZ(c); RZ(c) acts first.
Mat2 rot_matrix(double a, double b, double c);
Mat2 hadamard_matrix();
Mat2 phase_matrix(double phi);  // diag(1, e^{i phi})

struct Gate {
  enum class Kind { Single, Cnot };
  Kind kind = Kind::Single;
  int target = 0;
  int control = -1;  // Cnot only
  Mat2 u = Mat2::Identity();  // Single only
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  void single(int qubit, const Mat2& u);
  void cnot(int control, int target);
  void append(const Circuit& other);
};

/// Rotation angles of the strongly entangling ansatz. Angle (layer, qubit, r)
/// lives at ((layer * n_qubits) + qubit) * 3 + r, r indexing Rot(a, b, c).
struct AnsatzParams {
  int n_qubits = 0;
  int n_layers = 0;
  std::vector<double> angles;

  AnsatzParams() = default;
  /// Throws std::invalid_argument on a count mismatch or non-finite angle.
  AnsatzParams(int n_qubits, int n_layers, std::vector<double> angles);

  static AnsatzParams zeros(int n_qubits, int n_layers);
  /// Uniform in [-pi, pi) from a seeded stream.
  static AnsatzParams random(int n_qubits, int n_layers, std::uint64_t seed);
  static std::size_t angle_count(int n_qubits, int n_layers);

  [[nodiscard]] std::size_t size() const { return angles.size(); }
};

/// Per layer: Rot on every wire, then CNOT(control = (q+1) mod n, target = q)
/// for q = 0..n-1. With two wires this is CNOT(1->0) followed by CNOT(0->1).
Circuit ansatz_circuit(const AnsatzParams& params);

struct StateVector {
  int n_qubits = 0;
  CVector amplitudes;

  static StateVector basis(int n_qubits, std::size_t index);
  [[nodiscard]] double norm() const { return amplitudes.norm(); }
};

void apply_gate(const Gate& gate, int n_qubits, CVector& psi);
StateVector simulate(const Circuit& circuit, StateVector initial);
StateVector simulate(const Circuit& circuit, std::size_t basis_index);

/// U(theta)|basis_index>. Throws std::out_of_range for an invalid index.
StateVector apply_ansatz(const AnsatzParams& params, std::size_t basis_index);

struct NoiseConfig {
  double p_depol_1q = 0.0;
  double p_depol_2q = 0.0;
  double p_readout_flip = 0.0;

  /// Throws std::invalid_argument unless each probability is in [0, 1].
  void validate() const;
};

struct DensityMatrixState {
  int n_qubits = 0;
  CMatrix rho;

  [[nodiscard]] double trace() const { return rho.trace().real(); }
  [[nodiscard]] double purity() const { return (rho * rho).trace().real(); }
};

/// rho -> U rho U^dagger per gate, each followed by depolarisation
/// rho -> (1-p) rho + p (maximally mixed on the touched wires (x) Tr_touched rho).
DensityMatrixState evolve_noisy(const Circuit& circuit, std::size_t basis_index,
                                const NoiseConfig& noise);
DensityMatrixState evolve_noisy(const AnsatzParams& params, std::size_t basis_index,
                                const NoiseConfig& noise);

struct ExactMode {};
struct SampledMode {
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
};
struct NoisyMode {
  NoiseConfig noise;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
};
using EvalMode = std::variant<ExactMode, SampledMode, NoisyMode>;

bool is_stochastic(const EvalMode& mode);
std::string mode_name(const EvalMode& mode);
/// Same mode with its seed replaced (no-op for ExactMode).
EvalMode with_seed(const EvalMode& mode, std::uint64_t seed);
/// Throws std::invalid_argument for zero shots or invalid noise probabilities.
void validate_mode(const EvalMode& mode);

/// A circuit applied to a computational basis state.
struct Preparation {
  Circuit circuit;
  std::size_t basis_index = 0;
};

/// <psi|H|psi> by direct Pauli action.
double expectation_exact(const CVector& psi, const PauliHamiltonian& h);
/// Tr(rho H).
double expectation_exact(const CMatrix& rho, const PauliHamiltonian& h);

/// Shot-based estimate: each QWC group is rotated into its basis (X: H,
/// Y: S^dagger then H), `shots` outcomes are drawn from a stream seeded by
/// mix_seed(seed, group index), and members are estimated from +-1 parities.
/// The identity term enters exactly. `readout_flip` flips each sampled bit
/// independently with that probability.
double expectation_sampled(const CVector& psi, const PauliHamiltonian& h,
                           std::span<const QWCGroup> groups, std::uint64_t shots,
                           std::uint64_t seed);
double expectation_sampled(const CMatrix& rho, const PauliHamiltonian& h,
                           std::span<const QWCGroup> groups, std::uint64_t shots,
                           std::uint64_t seed, double readout_flip = 0.0);

/// Runs `circuit` on |basis_index> and evaluates <H> in the requested fidelity mode.
double expectation(const Circuit& circuit, std::size_t basis_index, const PauliHamiltonian& h,
                   std::span<const QWCGroup> groups, const EvalMode& mode);
double expectation(const Preparation& prep, const PauliHamiltonian& h,
                   std::span<const QWCGroup> groups, const EvalMode& mode);

/// Statevector input; NoisyMode is rejected since it needs the gate sequence.
double expectation(const StateVector& state, const PauliHamiltonian& h,
                   std::span<const QWCGroup> groups, const EvalMode& mode);

/// Multinomial outcome counts for `shots` draws from `probs` (sums to ~1).
std::vector<std::uint64_t> sample_counts(std::span<const double> probs, std::uint64_t shots,
                                         std::uint64_t seed);

}  // namespace kpvqe
