// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace kpvqe {

namespace {

using namespace std::complex_literals;

std::uint64_t wire_bit(int n_qubits, int q) { return std::uint64_t{1} << (n_qubits - 1 - q); }

Circuit measurement_rotation(int n_qubits, const std::vector<Pauli>& basis) {
  Circuit rot{n_qubits, {}};
  for (int q = 0; q < n_qubits; ++q) {
    switch (basis[static_cast<std::size_t>(q)]) {
      case Pauli::X:
        rot.single(q, hadamard_matrix());
        break;
      case Pauli::Y:
        rot.single(q, phase_matrix(-std::numbers::pi / 2));
        rot.single(q, hadamard_matrix());
        break;
      default:
        break;
    }
  }
  return rot;
}

void apply_gate_columns(const Gate& gate, int n_qubits, CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    CVector col = m.col(c);
    apply_gate(gate, n_qubits, col);
    m.col(c) = col;
  }
}

void apply_unitary(const Gate& gate, int n_qubits, CMatrix& rho) {
  apply_gate_columns(gate, n_qubits, rho);
  CMatrix half = rho.adjoint();
  apply_gate_columns(gate, n_qubits, half);
  rho = half;
}

void depolarize(const std::vector<int>& wires, double p, int n_qubits, CMatrix& rho) {
  if (p <= 0.0) return;
  const std::size_t n_ops = std::size_t{1} << (2 * wires.size());
  CMatrix twirled = CMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t code = 0; code < n_ops; ++code) {
    std::vector<Pauli> letters(static_cast<std::size_t>(n_qubits), Pauli::I);
    for (std::size_t w = 0; w < wires.size(); ++w) {
      letters[static_cast<std::size_t>(wires[w])] = static_cast<Pauli>((code >> (2 * w)) & 3U);
    }
    const CMatrix op = PauliString(std::move(letters)).matrix();
    twirled += op * rho * op;
  }
  twirled /= static_cast<double>(n_ops);
  rho = (1.0 - p) * rho + p * twirled;
}

std::vector<double> apply_readout_flips(std::vector<double> probs, int n_qubits, double flip) {
  if (flip <= 0.0) return probs;
  for (int q = 0; q < n_qubits; ++q) {
    const std::uint64_t bit = wire_bit(n_qubits, q);
    std::vector<double> next(probs.size());
    for (std::size_t o = 0; o < probs.size(); ++o) {
      next[o] = (1.0 - flip) * probs[o] + flip * probs[o ^ bit];
    }
    probs = std::move(next);
  }
  return probs;
}

double estimate_groups(const PauliHamiltonian& h, std::span<const QWCGroup> groups,
                       std::uint64_t shots, std::uint64_t seed,
                       const std::function<std::vector<double>(const Circuit&)>& probabilities) {
  if (shots == 0) throw std::invalid_argument("expectation: shots must be >= 1");
  check_partition(h, groups);
  double total = 0.0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const QWCGroup& group = groups[gi];
    bool needs_shots = false;
    for (std::size_t m : group.members) {
      if (h.terms()[m].string.is_identity()) {
        total += h.terms()[m].coefficient;
      } else {
        needs_shots = true;
      }
    }
    if (!needs_shots) continue;

    const std::vector<double> probs = probabilities(measurement_rotation(h.n_qubits(), group.basis));
    const std::vector<std::uint64_t> counts = sample_counts(probs, shots, mix_seed(seed, gi));
    for (std::size_t m : group.members) {
      const PauliString& s = h.terms()[m].string;
      if (s.is_identity()) continue;
      const std::uint64_t support = s.support_mask();
      std::int64_t parity_sum = 0;
      for (std::size_t o = 0; o < counts.size(); ++o) {
        const auto c = static_cast<std::int64_t>(counts[o]);
        parity_sum += (std::popcount(o & support) % 2 == 0) ? c : -c;
      }
      total += h.terms()[m].coefficient * static_cast<double>(parity_sum) /
               static_cast<double>(shots);
    }
  }
  return total;
}

}  // namespace

Mat2 rz_matrix(double theta) {
  Mat2 m;
  m << std::exp(-0.5i * theta), 0.0, 0.0, std::exp(0.5i * theta);
  return m;
}

Mat2 ry_matrix(double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

Mat2 rot_matrix(double a, double b, double c) { return rz_matrix(a) * ry_matrix(b) * rz_matrix(c); }

Mat2 hadamard_matrix() {
  Mat2 m;
  m << 1.0, 1.0, 1.0, -1.0;
  return m / std::numbers::sqrt2;
}

Mat2 phase_matrix(double phi) {
  Mat2 m;
  m << 1.0, 0.0, 0.0, std::exp(1i * phi);
  return m;
}

void Circuit::single(int qubit, const Mat2& u) {
  gates.push_back({Gate::Kind::Single, qubit, -1, u});
}

void Circuit::cnot(int control, int target) {
  gates.push_back({Gate::Kind::Cnot, target, control, Mat2::Identity()});
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits != n_qubits) throw std::invalid_argument("Circuit::append: width mismatch");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

AnsatzParams::AnsatzParams(int n_qubits_, int n_layers_, std::vector<double> angles_)
    : n_qubits(n_qubits_), n_layers(n_layers_), angles(std::move(angles_)) {
  if (n_qubits < 1 || n_layers < 1) {
    throw std::invalid_argument("AnsatzParams: n_qubits and n_layers must be >= 1");
  }
  if (angles.size() != angle_count(n_qubits, n_layers)) {
    throw std::invalid_argument("AnsatzParams: expected " +
                                std::to_string(angle_count(n_qubits, n_layers)) +
                                " angles, got " + std::to_string(angles.size()));
  }
  for (double a : angles) {
    if (!std::isfinite(a)) throw std::invalid_argument("AnsatzParams: non-finite angle");
  }
}

std::size_t AnsatzParams::angle_count(int n_qubits, int n_layers) {
  return 3 * static_cast<std::size_t>(n_qubits) * static_cast<std::size_t>(n_layers);
}

AnsatzParams AnsatzParams::zeros(int n_qubits, int n_layers) {
  return {n_qubits, n_layers, std::vector<double>(angle_count(n_qubits, n_layers), 0.0)};
}

AnsatzParams AnsatzParams::random(int n_qubits, int n_layers, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<double> angles(angle_count(n_qubits, n_layers));
  for (double& a : angles) a = std::numbers::pi * (2.0 * uniform01(engine) - 1.0);
  return {n_qubits, n_layers, std::move(angles)};
}

Circuit ansatz_circuit(const AnsatzParams& params) {
  Circuit circuit{params.n_qubits, {}};
  circuit.gates.reserve(static_cast<std::size_t>(params.n_layers) *
                        static_cast<std::size_t>(2 * params.n_qubits));
  std::size_t k = 0;
  for (int layer = 0; layer < params.n_layers; ++layer) {
    for (int q = 0; q < params.n_qubits; ++q, k += 3) {
      circuit.single(q, rot_matrix(params.angles[k], params.angles[k + 1], params.angles[k + 2]));
    }
    if (params.n_qubits < 2) continue;
    for (int q = 0; q < params.n_qubits; ++q) {
      circuit.cnot((q + 1) % params.n_qubits, q);
    }
  }
  return circuit;
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) {
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
  }
  StateVector s{n_qubits, CVector::Zero(static_cast<Eigen::Index>(dim))};
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

void apply_gate(const Gate& gate, int n_qubits, CVector& psi) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  const std::uint64_t tbit = wire_bit(n_qubits, gate.target);
  if (gate.kind == Gate::Kind::Single) {
    const Complex u00 = gate.u(0, 0), u01 = gate.u(0, 1), u10 = gate.u(1, 0), u11 = gate.u(1, 1);
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & tbit) continue;
      const auto i0 = static_cast<Eigen::Index>(i);
      const auto i1 = static_cast<Eigen::Index>(i | tbit);
      const Complex a = psi(i0);
      const Complex b = psi(i1);
      psi(i0) = u00 * a + u01 * b;
      psi(i1) = u10 * a + u11 * b;
    }
  } else {
    const std::uint64_t cbit = wire_bit(n_qubits, gate.control);
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & cbit) && !(i & tbit)) {
        std::swap(psi(static_cast<Eigen::Index>(i)), psi(static_cast<Eigen::Index>(i | tbit)));
      }
    }
  }
}

StateVector simulate(const Circuit& circuit, StateVector initial) {
  if (initial.n_qubits != circuit.n_qubits) {
    throw std::invalid_argument("simulate: state width does not match circuit");
  }
  for (const Gate& g : circuit.gates) apply_gate(g, circuit.n_qubits, initial.amplitudes);
  return initial;
}

StateVector simulate(const Circuit& circuit, std::size_t basis_index) {
  return simulate(circuit, StateVector::basis(circuit.n_qubits, basis_index));
}

StateVector apply_ansatz(const AnsatzParams& params, std::size_t basis_index) {
  return simulate(ansatz_circuit(params), basis_index);
}

void NoiseConfig::validate() const {
  auto check = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
  };
  check(p_depol_1q, "p_depol_1q");
  check(p_depol_2q, "p_depol_2q");
  check(p_readout_flip, "p_readout_flip");
}

DensityMatrixState evolve_noisy(const Circuit& circuit, std::size_t basis_index,
                                const NoiseConfig& noise) {
  noise.validate();
  const StateVector start = StateVector::basis(circuit.n_qubits, basis_index);
  DensityMatrixState state{circuit.n_qubits, start.amplitudes * start.amplitudes.adjoint()};
  for (const Gate& g : circuit.gates) {
    apply_unitary(g, circuit.n_qubits, state.rho);
    if (g.kind == Gate::Kind::Single) {
      depolarize({g.target}, noise.p_depol_1q, circuit.n_qubits, state.rho);
    } else {
      depolarize({g.control, g.target}, noise.p_depol_2q, circuit.n_qubits, state.rho);
    }
  }
  return state;
}

DensityMatrixState evolve_noisy(const AnsatzParams& params, std::size_t basis_index,
                                const NoiseConfig& noise) {
  return evolve_noisy(ansatz_circuit(params), basis_index, noise);
}

bool is_stochastic(const EvalMode& mode) { return !std::holds_alternative<ExactMode>(mode); }

std::string mode_name(const EvalMode& mode) {
  if (std::holds_alternative<ExactMode>(mode)) return "statevector";
  if (std::holds_alternative<SampledMode>(mode)) return "sampled";
  return "noisy";
}

EvalMode with_seed(const EvalMode& mode, std::uint64_t seed) {
  EvalMode out = mode;
  if (auto* s = std::get_if<SampledMode>(&out)) s->seed = seed;
  if (auto* n = std::get_if<NoisyMode>(&out)) n->seed = seed;
  return out;
}

void validate_mode(const EvalMode& mode) {
  if (const auto* s = std::get_if<SampledMode>(&mode); s && s->shots == 0) {
    throw std::invalid_argument("sampled mode requires shots >= 1");
  }
  if (const auto* n = std::get_if<NoisyMode>(&mode)) {
    if (n->shots == 0) throw std::invalid_argument("noisy mode requires shots >= 1");
    n->noise.validate();
  }
}

double expectation_exact(const CVector& psi, const PauliHamiltonian& h) {
  double total = 0.0;
  for (const auto& term : h.terms()) {
    // normalised states: the identity contributes its coefficient as is
    total += term.string.is_identity()
                 ? term.coefficient
                 : term.coefficient * psi.dot(apply_pauli(term.string, psi)).real();
  }
  return total;
}

double expectation_exact(const CMatrix& rho, const PauliHamiltonian& h) {
  return (rho * h.to_matrix()).trace().real();
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probs, std::uint64_t shots,
                                         std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<std::uint64_t> counts(probs.size(), 0);
  double total = 0.0;
  for (double p : probs) total += std::max(p, 0.0);
  std::uint64_t remaining = shots;
  double remaining_mass = total;
  for (std::size_t o = 0; o + 1 < probs.size() && remaining > 0; ++o) {
    const double p = std::max(probs[o], 0.0);
    const double q = remaining_mass > 0.0 ? std::clamp(p / remaining_mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, q);
    counts[o] = draw(engine);
    remaining -= counts[o];
    remaining_mass -= p;
  }
  if (!probs.empty()) counts.back() += remaining;
  return counts;
}

double expectation_sampled(const CVector& psi, const PauliHamiltonian& h,
                           std::span<const QWCGroup> groups, std::uint64_t shots,
                           std::uint64_t seed) {
  const int n = h.n_qubits();
  return estimate_groups(h, groups, shots, seed, [&](const Circuit& rotation) {
    const StateVector rotated = simulate(rotation, StateVector{n, psi});
    std::vector<double> probs(static_cast<std::size_t>(psi.size()));
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      probs[static_cast<std::size_t>(i)] = std::norm(rotated.amplitudes(i));
    }
    return probs;
  });
}

double expectation_sampled(const CMatrix& rho, const PauliHamiltonian& h,
                           std::span<const QWCGroup> groups, std::uint64_t shots,
                           std::uint64_t seed, double readout_flip) {
  const int n = h.n_qubits();
  return estimate_groups(h, groups, shots, seed, [&](const Circuit& rotation) {
    CMatrix rotated = rho;
    for (const Gate& g : rotation.gates) apply_unitary(g, n, rotated);
    std::vector<double> probs(static_cast<std::size_t>(rho.rows()));
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      probs[static_cast<std::size_t>(i)] = rotated(i, i).real();
    }
    return apply_readout_flips(std::move(probs), n, readout_flip);
  });
}

double expectation(const Circuit& circuit, std::size_t basis_index, const PauliHamiltonian& h,
                   std::span<const QWCGroup> groups, const EvalMode& mode) {
  if (circuit.n_qubits != h.n_qubits()) {
    throw std::invalid_argument("expectation: circuit width does not match Hamiltonian");
  }
  if (const auto* noisy = std::get_if<NoisyMode>(&mode)) {
    validate_mode(mode);
    const DensityMatrixState state = evolve_noisy(circuit, basis_index, noisy->noise);
    return expectation_sampled(state.rho, h, groups, noisy->shots, noisy->seed,
                               noisy->noise.p_readout_flip);
  }
  return expectation(simulate(circuit, basis_index), h, groups, mode);
}

double expectation(const Preparation& prep, const PauliHamiltonian& h,
                   std::span<const QWCGroup> groups, const EvalMode& mode) {
  return expectation(prep.circuit, prep.basis_index, h, groups, mode);
}

double expectation(const StateVector& state, const PauliHamiltonian& h,
                   std::span<const QWCGroup> groups, const EvalMode& mode) {
  validate_mode(mode);
  if (std::holds_alternative<ExactMode>(mode)) return expectation_exact(state.amplitudes, h);
  if (const auto* s = std::get_if<SampledMode>(&mode)) {
    return expectation_sampled(state.amplitudes, h, groups, s->shots, s->seed);
  }
  throw std::invalid_argument("expectation: noisy mode needs a circuit preparation");
}

}  // namespace kpvqe
