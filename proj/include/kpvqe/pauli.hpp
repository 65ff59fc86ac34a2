// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpvqe/common.hpp"

namespace kpvqe {

/// Single-qubit Pauli letter. Enumerator order defines the lexicographic
/// order of strings (I < X < Y < Z).
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis. Letter 0 acts on wire 0, which is
/// the most significant bit of a computational basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {}
  /// Parses e.g. "ZX"; throws std::invalid_argument on letters outside IXYZ.
  explicit PauliString(std::string_view text);

  static PauliString identity(int n_qubits);

  [[nodiscard]] int n_qubits() const { return static_cast<int>(letters_.size()); }
  [[nodiscard]] Pauli operator[](int q) const { return letters_[static_cast<std::size_t>(q)]; }
  [[nodiscard]] const std::vector<Pauli>& letters() const { return letters_; }
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] std::string str() const;

  /// Bitmask of wires carrying X or Y (basis-index bit layout).
  [[nodiscard]] std::uint64_t flip_mask() const;
  /// Bitmask of wires carrying Y or Z.
  [[nodiscard]] std::uint64_t phase_mask() const;
  /// Bitmask of wires carrying any non-identity letter.
  [[nodiscard]] std::uint64_t support_mask() const;
  [[nodiscard]] int y_count() const;

  /// Dense 2^n x 2^n matrix (Kronecker product, wire 0 leftmost).
  [[nodiscard]] CMatrix matrix() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
};

/// Every string on n qubits in lexicographic order (4^n entries).
std::vector<PauliString> all_pauli_strings(int n_qubits);

/// sigma |psi> for a statevector of matching size.
CVector apply_pauli(const PauliString& p, const CVector& psi);

struct PauliTerm {
  PauliString string;
  double coefficient = 0.0;
};

/// Real-weighted sum of Pauli strings, energies in eV.
class PauliHamiltonian {
 public:
  PauliHamiltonian() = default;
  /// Validates lengths and rejects duplicate strings.
  PauliHamiltonian(int n_qubits, std::vector<PauliTerm> terms);

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] const std::vector<PauliTerm>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool empty() const { return terms_.empty(); }

  /// sum_j h_j sigma_j as a dense matrix.
  [[nodiscard]] CMatrix to_matrix() const;

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

inline constexpr double kDefaultPruneTol = 1e-12;

/// Pauli-basis expansion h_j = Tr(sigma_j H) / 2^n. Terms with
/// |h_j| < prune_tol are dropped; output is in lexicographic string order.
/// Throws std::invalid_argument when the dimension is not a power of two.
PauliHamiltonian decompose(const HermitianMatrix& h, double prune_tol = kDefaultPruneTol);

/// Tr(sigma H) / 2^n without the reality projection; used to audit Hermiticity.
Complex pauli_coefficient(const PauliString& p, const CMatrix& h);

/// True iff at every wire the letters agree or one of them is I.
bool qwc_compatible(const PauliString& a, const PauliString& b);

struct QWCGroup {
  std::vector<std::size_t> members;  // indices into PauliHamiltonian::terms()
  std::vector<Pauli> basis;          // per-wire measurement letter (X, Y or Z)
};

/// Greedy largest-degree-first colouring of the QWC incompatibility graph.
/// Terms are visited in lexicographic string order so the result is
/// deterministic. Throws std::invalid_argument on an empty Hamiltonian.
std::vector<QWCGroup> qwc_partition(const PauliHamiltonian& h);

/// Checks that `groups` cover every term of `h` exactly once, members are
/// pairwise compatible and measurable in the group basis.
/// Throws std::invalid_argument describing the first inconsistency.
void check_partition(const PauliHamiltonian& h, std::span<const QWCGroup> groups);

}  // namespace kpvqe
