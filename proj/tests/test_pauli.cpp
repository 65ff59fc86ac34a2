// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kpvqe/kp_model.hpp"
#include "kpvqe/pauli.hpp"
#include "oracles.hpp"

using namespace kpvqe;

namespace {

PauliHamiltonian unit_terms(const std::vector<std::string>& strings) {
  std::vector<PauliTerm> terms;
  for (const auto& s : strings) terms.push_back({PauliString(s), 1.0});
  return PauliHamiltonian(static_cast<int>(strings.front().size()), terms);
}

CMatrix kron_sum(const PauliHamiltonian& h) {
  const int dim = 1 << h.n_qubits();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coefficient * oracle::pauli(t.string.str());
  return m;
}

PauliHamiltonian random_sparse(int n, std::mt19937_64& rng) {
  const auto all = all_pauli_strings(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(0.5);
  std::vector<PauliTerm> terms;
  for (const auto& s : all) {
    if (keep(rng)) terms.push_back({s, u(rng)});
  }
  if (terms.empty()) terms.push_back({all.back(), 1.0});
  return PauliHamiltonian(n, terms);
}

}  // namespace

TEST_CASE("PauliString parsing and masks") {
  const PauliString s("XYZI");
  CHECK(s.n_qubits() == 4);
  CHECK(s.str() == "XYZI");
  CHECK(s.flip_mask() == 0b1100);
  CHECK(s.phase_mask() == 0b0110);
  CHECK(s.support_mask() == 0b1110);
  CHECK(s.y_count() == 1);
  CHECK(PauliString::identity(3).is_identity());
  CHECK_THROWS_AS(PauliString("XQ"), std::invalid_argument);
  CHECK(PauliString("IX") < PauliString("XI"));
  CHECK(PauliString("XZ") < PauliString("YI"));
}

TEST_CASE("PauliString matrix matches Kronecker products") {
  for (const auto& s : all_pauli_strings(3)) {
    CHECK((s.matrix() - oracle::pauli(s.str())).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("apply_pauli agrees with the dense matrix") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  CVector psi(8);
  for (int i = 0; i < 8; ++i) psi(i) = Complex(g(rng), g(rng));
  for (const auto& s : all_pauli_strings(3)) {
    CHECK((apply_pauli(s, psi) - oracle::pauli(s.str()) * psi).norm() < 1e-14);
  }
}

TEST_CASE("all_pauli_strings is lexicographic") {
  const auto all = all_pauli_strings(2);
  REQUIRE(all.size() == 16);
  CHECK(all.front().str() == "II");
  CHECK(all[1].str() == "IX");
  CHECK(all.back().str() == "ZZ");
  CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("decompose basis examples") {
  const PauliHamiltonian id = decompose(HermitianMatrix(CMatrix::Identity(4, 4)));
  REQUIRE(id.size() == 1);
  CHECK(id.terms()[0].string.str() == "II");
  CHECK(id.terms()[0].coefficient == 1.0);

  const PauliHamiltonian zx = decompose(HermitianMatrix(oracle::pauli("ZX")));
  REQUIRE(zx.size() == 1);
  CHECK(zx.terms()[0].string.str() == "ZX");
  CHECK(zx.terms()[0].coefficient == 1.0);

  CHECK_THROWS_AS(decompose(HermitianMatrix(CMatrix::Identity(3, 3))), std::invalid_argument);
}

TEST_CASE("property: decompose round trip on random Hermitian matrices") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 3; ++n) {
    double worst = 0.0;
    double worst_imag = 0.0;
    for (int i = 0; i < 100; ++i) {
      const CMatrix h = oracle::random_hermitian(1 << n, rng);
      const PauliHamiltonian ph = decompose(HermitianMatrix(h), 0.0);
      CHECK(ph.size() == static_cast<std::size_t>(1) << (2 * n));
      worst = std::max(worst, (kron_sum(ph) - h).cwiseAbs().maxCoeff());
      for (const auto& s : all_pauli_strings(n)) {
        worst_imag = std::max(worst_imag, std::abs(pauli_coefficient(s, h).imag()));
      }
    }
    CHECK(worst <= 1e-12);
    CHECK(worst_imag <= 1e-12);
  }
}

TEST_CASE("decompose prunes tiny coefficients") {
  const CMatrix h = oracle::pauli("ZZ") + 1e-14 * oracle::pauli("XI");
  CHECK(decompose(HermitianMatrix(h)).size() == 1);
  CHECK(decompose(HermitianMatrix(h), 0.0).size() == 16);
}

TEST_CASE("GaAs Hamiltonians populate Pauli terms and reconstruct") {
  const MaterialParams m = load_material_file(KPVQE_DATA_DIR "/materials/gaas.json");
  const HermitianMatrix h = build_hamiltonian(m, {0.03, 0.02, 0.01, 0.0});
  const PauliHamiltonian ph = decompose(h);
  CHECK(ph.size() == 16);
  CHECK((ph.to_matrix() - h.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("PauliHamiltonian rejects malformed term lists") {
  CHECK_THROWS_AS(PauliHamiltonian(2, {{PauliString("XX"), 1.0}, {PauliString("XX"), 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PauliHamiltonian(2, {{PauliString("XXX"), 1.0}}), std::invalid_argument);
}

TEST_CASE("qwc_compatible examples") {
  CHECK(qwc_compatible(PauliString("ZI"), PauliString("IZ")));
  CHECK_FALSE(qwc_compatible(PauliString("XX"), PauliString("YY")));
  CHECK(qwc_compatible(PauliString("XI"), PauliString("XZ")));
  CHECK_THROWS_AS(qwc_compatible(PauliString("X"), PauliString("XZ")), std::invalid_argument);
}

TEST_CASE("qwc_partition: 16 strings give 9 groups") {
  std::vector<std::string> all;
  for (const auto& s : all_pauli_strings(2)) all.push_back(s.str());
  const PauliHamiltonian h = unit_terms(all);
  const auto groups = qwc_partition(h);
  CHECK(groups.size() == 9);
  CHECK_NOTHROW(check_partition(h, groups));
}

TEST_CASE("qwc_partition small examples") {
  const PauliHamiltonian zs = unit_terms({"II", "ZI", "IZ", "ZZ"});
  const auto g1 = qwc_partition(zs);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].basis == std::vector<Pauli>{Pauli::Z, Pauli::Z});

  const auto g3 = qwc_partition(unit_terms({"XX", "YY", "ZZ"}));
  CHECK(g3.size() == 3);
  for (const auto& g : g3) CHECK(g.members.size() == 1);

  CHECK_THROWS(qwc_partition(PauliHamiltonian(2, {})));
}

TEST_CASE("qwc_partition is deterministic under term reordering") {
  const PauliHamiltonian a = unit_terms({"XX", "ZI", "IZ", "YY", "XI", "ZZ"});
  const PauliHamiltonian b = unit_terms({"ZZ", "YY", "XI", "IZ", "XX", "ZI"});
  auto strings = [](const PauliHamiltonian& h, const std::vector<QWCGroup>& gs) {
    std::vector<std::set<std::string>> out;
    for (const auto& g : gs) {
      std::set<std::string> s;
      for (std::size_t m : g.members) s.insert(h.terms()[m].string.str());
      out.push_back(s);
    }
    return out;
  };
  CHECK(strings(a, qwc_partition(a)) == strings(b, qwc_partition(b)));
}

TEST_CASE("check_partition rejects invalid groupings") {
  const PauliHamiltonian h = unit_terms({"XX", "YY"});
  CHECK_THROWS(check_partition(h, std::vector<QWCGroup>{{{0, 1}, {Pauli::X, Pauli::X}}}));
  CHECK_THROWS(check_partition(h, std::vector<QWCGroup>{{{0}, {Pauli::X, Pauli::X}}}));
}

TEST_CASE("property: partitions of random 2-3 qubit Hamiltonians are valid") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const PauliHamiltonian h = random_sparse(n, rng);
    const auto groups = qwc_partition(h);
    CHECK(groups.size() <= static_cast<std::size_t>(std::pow(3, n)));
    std::vector<std::size_t> seen;
    for (const auto& g : groups) {
      for (std::size_t i = 0; i < g.members.size(); ++i) {
        seen.push_back(g.members[i]);
        const PauliString& si = h.terms()[g.members[i]].string;
        for (int q = 0; q < n; ++q) {
          CHECK((si[q] == Pauli::I || si[q] == g.basis[static_cast<std::size_t>(q)]));
        }
        for (std::size_t j = i + 1; j < g.members.size(); ++j) {
          CHECK(qwc_compatible(si, h.terms()[g.members[j]].string));
        }
      }
    }
    std::sort(seen.begin(), seen.end());
    std::vector<std::size_t> expect(h.size());
    for (std::size_t i = 0; i < expect.size(); ++i) expect[i] = i;
    CHECK(seen == expect);
  }
}
