// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

namespace kpvqe {

namespace {

std::uint64_t wire_bit(int n_qubits, int q) { return std::uint64_t{1} << (n_qubits - 1 - q); }

// phase(j) for sigma|j> = phase(j) |j ^ flip>.
Complex basis_phase(std::uint64_t j, std::uint64_t phase_mask, int y_count) {
  static const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex phase = kIPowers[y_count % 4];
  if (std::popcount(j & phase_mask) % 2 == 1) phase = -phase;
  return phase;
}

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

char to_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(std::string_view text) {
  letters_.reserve(text.size());
  for (char c : text) letters_.push_back(pauli_from_char(c));
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n_qubits), Pauli::I));
}

bool PauliString::is_identity() const {
  return std::all_of(letters_.begin(), letters_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Pauli p : letters_) out.push_back(to_char(p));
  return out;
}

std::uint64_t PauliString::flip_mask() const {
  std::uint64_t mask = 0;
  for (int q = 0; q < n_qubits(); ++q) {
    if ((*this)[q] == Pauli::X || (*this)[q] == Pauli::Y) mask |= wire_bit(n_qubits(), q);
  }
  return mask;
}

std::uint64_t PauliString::phase_mask() const {
  std::uint64_t mask = 0;
  for (int q = 0; q < n_qubits(); ++q) {
    if ((*this)[q] == Pauli::Y || (*this)[q] == Pauli::Z) mask |= wire_bit(n_qubits(), q);
  }
  return mask;
}

std::uint64_t PauliString::support_mask() const {
  std::uint64_t mask = 0;
  for (int q = 0; q < n_qubits(); ++q) {
    if ((*this)[q] != Pauli::I) mask |= wire_bit(n_qubits(), q);
  }
  return mask;
}

int PauliString::y_count() const {
  return static_cast<int>(std::count(letters_.begin(), letters_.end(), Pauli::Y));
}

CMatrix PauliString::matrix() const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits();
  CMatrix m = CMatrix::Zero(dim, dim);
  const std::uint64_t flip = flip_mask();
  const std::uint64_t pmask = phase_mask();
  const int ys = y_count();
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
    m(static_cast<Eigen::Index>(j ^ flip), static_cast<Eigen::Index>(j)) = basis_phase(j, pmask, ys);
  }
  return m;
}

std::vector<PauliString> all_pauli_strings(int n_qubits) {
  std::vector<PauliString> out;
  const std::size_t count = std::size_t{1} << (2 * n_qubits);
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<Pauli> letters(static_cast<std::size_t>(n_qubits));
    std::size_t rest = code;
    for (int q = n_qubits - 1; q >= 0; --q) {
      letters[static_cast<std::size_t>(q)] = static_cast<Pauli>(rest & 3U);
      rest >>= 2;
    }
    out.emplace_back(std::move(letters));
  }
  return out;
}

CVector apply_pauli(const PauliString& p, const CVector& psi) {
  if (psi.size() != (Eigen::Index{1} << p.n_qubits())) {
    throw std::invalid_argument("apply_pauli: state size does not match string length");
  }
  const std::uint64_t flip = p.flip_mask();
  const std::uint64_t pmask = p.phase_mask();
  const int ys = p.y_count();
  CVector out(psi.size());
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(psi.size()); ++j) {
    out(static_cast<Eigen::Index>(j ^ flip)) =
        basis_phase(j, pmask, ys) * psi(static_cast<Eigen::Index>(j));
  }
  return out;
}

PauliHamiltonian::PauliHamiltonian(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw std::invalid_argument("PauliHamiltonian: n_qubits must lie in [1, 30]");
  }
  std::set<PauliString> seen;
  for (const auto& term : terms_) {
    if (term.string.n_qubits() != n_qubits_) {
      throw std::invalid_argument("PauliHamiltonian: term " + term.string.str() +
                                  " has wrong length");
    }
    if (!seen.insert(term.string).second) {
      throw std::invalid_argument("PauliHamiltonian: duplicate term " + term.string.str());
    }
  }
}

CMatrix PauliHamiltonian::to_matrix() const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& term : terms_) m += term.coefficient * term.string.matrix();
  return m;
}

Complex pauli_coefficient(const PauliString& p, const CMatrix& h) {
  const std::uint64_t flip = p.flip_mask();
  const std::uint64_t pmask = p.phase_mask();
  const int ys = p.y_count();
  Complex trace = 0.0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(h.rows()); ++i) {
    trace += basis_phase(i, pmask, ys) *
             h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ flip));
  }
  return trace / static_cast<double>(h.rows());
}

PauliHamiltonian decompose(const HermitianMatrix& h, double prune_tol) {
  if (!is_power_of_two(h.dim())) {
    std::ostringstream msg;
    msg << "decompose: dimension " << h.dim() << " is not a power of two";
    throw std::invalid_argument(msg.str());
  }
  const int n_qubits = std::countr_zero(static_cast<std::uint64_t>(h.dim()));
  std::vector<PauliTerm> terms;
  for (auto& s : all_pauli_strings(n_qubits)) {
    const double coefficient = pauli_coefficient(s, h.matrix()).real();
    if (std::abs(coefficient) < prune_tol) continue;
    terms.push_back({std::move(s), coefficient});
  }
  return PauliHamiltonian(n_qubits, std::move(terms));
}

bool qwc_compatible(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("qwc_compatible: strings " + a.str() + " and " + b.str() +
                                " differ in length");
  }
  for (int q = 0; q < a.n_qubits(); ++q) {
    if (a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q]) return false;
  }
  return true;
}

std::vector<QWCGroup> qwc_partition(const PauliHamiltonian& h) {
  if (h.empty()) throw std::invalid_argument("qwc_partition: Hamiltonian has no terms");
  const auto& terms = h.terms();
  const std::size_t n = terms.size();

  std::vector<std::size_t> lex(n);
  std::iota(lex.begin(), lex.end(), 0);
  std::stable_sort(lex.begin(), lex.end(), [&](std::size_t a, std::size_t b) {
    return terms[a].string < terms[b].string;
  });

  std::vector<std::vector<bool>> clash(n, std::vector<bool>(n, false));
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!qwc_compatible(terms[a].string, terms[b].string)) {
        clash[a][b] = clash[b][a] = true;
        ++degree[a];
        ++degree[b];
      }
    }
  }

  // Largest degree first; ties keep lexicographic order.
  std::vector<std::size_t> order = lex;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });

  std::vector<int> colour(n, -1);
  int n_colours = 0;
  for (std::size_t v : order) {
    std::vector<bool> used(static_cast<std::size_t>(n_colours), false);
    for (std::size_t u = 0; u < n; ++u) {
      if (clash[v][u] && colour[u] >= 0) used[static_cast<std::size_t>(colour[u])] = true;
    }
    int c = 0;
    while (c < n_colours && used[static_cast<std::size_t>(c)]) ++c;
    if (c == n_colours) ++n_colours;
    colour[v] = c;
  }

  std::vector<QWCGroup> groups(static_cast<std::size_t>(n_colours));
  for (auto& g : groups) g.basis.assign(static_cast<std::size_t>(h.n_qubits()), Pauli::I);
  for (std::size_t v : lex) {
    auto& g = groups[static_cast<std::size_t>(colour[v])];
    g.members.push_back(v);
    for (int q = 0; q < h.n_qubits(); ++q) {
      if (terms[v].string[q] != Pauli::I) g.basis[static_cast<std::size_t>(q)] = terms[v].string[q];
    }
  }
  for (auto& g : groups) {
    std::replace(g.basis.begin(), g.basis.end(), Pauli::I, Pauli::Z);
  }
  return groups;
}

void check_partition(const PauliHamiltonian& h, std::span<const QWCGroup> groups) {
  std::vector<int> hits(h.size(), 0);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    if (g.basis.size() != static_cast<std::size_t>(h.n_qubits())) {
      throw std::invalid_argument("QWC group " + std::to_string(gi) + " has wrong basis length");
    }
    for (std::size_t m : g.members) {
      if (m >= h.size()) {
        throw std::invalid_argument("QWC group " + std::to_string(gi) + " references term " +
                                    std::to_string(m) + " out of range");
      }
      ++hits[m];
      const auto& s = h.terms()[m].string;
      for (int q = 0; q < h.n_qubits(); ++q) {
        if (s[q] != Pauli::I && s[q] != g.basis[static_cast<std::size_t>(q)]) {
          throw std::invalid_argument("term " + s.str() + " is not measurable in group " +
                                      std::to_string(gi) + " basis");
        }
      }
    }
  }
  for (std::size_t t = 0; t < hits.size(); ++t) {
    if (hits[t] != 1) {
      throw std::invalid_argument("term " + h.terms()[t].string.str() + " appears in " +
                                  std::to_string(hits[t]) + " QWC groups");
    }
  }
}

}  // namespace kpvqe
