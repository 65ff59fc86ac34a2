// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "kpvqe/exact.hpp"
#include "kpvqe/kp_model.hpp"
#include "oracles.hpp"

using namespace kpvqe;

namespace {

const char* kGaAs = R"({"name": "GaAs", "eps_gamma": 1.519, "delta": 0.341, "gamma1": 6.98,
  "gamma2": 2.06, "gamma3": 2.93, "ep": 28.8, "m_eff": 0.067, "a": 5.653})";

MaterialParams gaas() { return load_material(kGaAs); }

std::string error_of(const std::string& text) {
  try {
    load_material(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

MaterialParams random_material(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MaterialParams m;
  m.name = "random";
  m.gamma1 = 2.0 + 30.0 * u(rng);
  m.gamma2 = (u(rng) - 0.5) * 0.9 * m.gamma1;
  m.gamma3 = 0.5 + 15.0 * u(rng);
  m.delta = u(rng);
  m.eps_gamma = 0.1 + 3.5 * u(rng);
  m.ep = 10.0 + 25.0 * u(rng);
  m.m_eff = 0.01 + 0.2 * u(rng);
  m.a = 5.0 + 1.5 * u(rng);
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("load_material accepts the GaAs example") {
  const MaterialParams m = gaas();
  CHECK(m.name == "GaAs");
  CHECK(m.eps_gamma == 1.519);
  CHECK(m.delta == 0.341);
  CHECK(m.gamma3 == 2.93);
  CHECK(m.a == 5.653);
  CHECK(m.kane_p() == doctest::Approx(std::sqrt(28.8 * 3.80998)).epsilon(1e-14));
}

TEST_CASE("load_material reports the offending field") {
  CHECK(error_of(replace(kGaAs, "\"eps_gamma\": 1.519", "\"eps_gamma\": -1.0")) ==
        "eps_gamma must be positive");
  CHECK(error_of(replace(kGaAs, "\"gamma3\": 2.93,", "")).find("gamma3") != std::string::npos);
  CHECK(error_of(replace(kGaAs, "\"ep\": 28.8", "\"ep\": \"big\"")).find("ep must be numeric") !=
        std::string::npos);
  CHECK(error_of(replace(kGaAs, "\"a\": 5.653", "\"a\": 5.653, \"b\": 1")).find("unknown field 'b'") !=
        std::string::npos);
  CHECK(error_of(replace(kGaAs, "\"gamma2\": 2.06", "\"gamma2\": 3.6")).find("gamma1") !=
        std::string::npos);
  CHECK(error_of(replace(kGaAs, "\"delta\": 0.341", "\"delta\": -0.1")).find("delta") !=
        std::string::npos);
  CHECK(error_of("{not json").find("JSON") != std::string::npos);
  CHECK(error_of("[1, 2]").find("object") != std::string::npos);
}

TEST_CASE("bundled material files load and name themselves") {
  const std::filesystem::path dir = KPVQE_DATA_DIR "/materials";
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const MaterialParams m = load_material_file(entry.path());
    CHECK_FALSE(m.name.empty());
    ++count;
  }
  CHECK(count == 7);
  CHECK_THROWS_AS(load_material_file(dir / "missing.json"), ConfigError);
}

TEST_CASE("Gamma-point Hamiltonian is diagonal (0, 0, -delta, eps_gamma)") {
  const MaterialParams m = gaas();
  const CMatrix h = build_hamiltonian(m, {}).matrix();
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(2, 2) = -0.341;
  expected(3, 3) = 1.519;
  CHECK((h - expected).cwiseAbs().maxCoeff() == 0.0);
  const auto ev = eigh(h).eigenvalues;
  CHECK(ev[0] == doctest::Approx(-0.341).epsilon(1e-15));
  CHECK(std::abs(ev[1]) < 1e-15);
  CHECK(std::abs(ev[2]) < 1e-15);
  CHECK(ev[3] == doctest::Approx(1.519).epsilon(1e-15));
}

TEST_CASE("as-printed convention flips Q and the split-off sign") {
  const MaterialParams m = gaas();
  KpOptions printed;
  printed.convention = SignConvention::AsPrinted;
  const CMatrix h0 = build_hamiltonian(m, {}, printed).matrix();
  CHECK(h0(2, 2).real() == doctest::Approx(0.341));
  const KPoint k{0.03, 0.01, 0.02, 0.0};
  const CMatrix fig = build_hamiltonian(m, k).matrix();
  const CMatrix lit = build_hamiltonian(m, k, printed).matrix();
  CHECK(lit(1, 1).real() == doctest::Approx(-fig(1, 1).real()));
  CHECK(lit(0, 0).real() == doctest::Approx(fig(0, 0).real()));
}

TEST_CASE("entries along kz follow direct substitution") {
  const MaterialParams m = gaas();
  const double kz = 0.04;
  const double p = std::sqrt(m.ep * 3.80998);
  const CMatrix h = build_hamiltonian(m, {0.0, 0.0, kz, 0.0}).matrix();
  // k- = 0, so S and P+ vanish
  CHECK(std::abs(h(0, 1)) == 0.0);
  CHECK(std::abs(h(1, 2)) == 0.0);
  CHECK(std::abs(h(1, 3)) == 0.0);
  const oracle::C e14 = oracle::C(0, -1) * std::sqrt(2.0 / 3.0) * p * kz;
  CHECK(std::abs(h(0, 3) - e14) < 1e-14);
  CHECK(h(2, 3).real() == doctest::Approx(-p * kz / 3.0).epsilon(1e-14));

  KpOptions kane;
  kane.split_off_coupling = SplitOffCoupling::InvSqrtThree;
  const CMatrix hk = build_hamiltonian(m, {0.0, 0.0, kz, 0.0}, kane).matrix();
  CHECK(hk(2, 3).real() == doctest::Approx(-p * kz / std::sqrt(3.0)).epsilon(1e-14));

  // S becomes nonzero once kz and k- are both nonzero
  const CMatrix hs = build_hamiltonian(m, {0.02, 0.0, kz, 0.0}).matrix();
  const oracle::C s = oracle::C(0, 1) * 3.80998 * 2.0 * std::sqrt(3.0) * m.gamma3 * kz * 0.02 /
                      std::sqrt(2.0);
  CHECK(std::abs(hs(0, 1) + s) < 1e-14);
}

TEST_CASE("conduction diagonal uses the remote-band corrected mass") {
  const MaterialParams m = gaas();
  const double k = 0.05;
  const CMatrix h = build_hamiltonian(m, {k, 0.0, 0.0, 0.0}).matrix();
  const double expected =
      m.eps_gamma + 3.80998 * k * k *
                        (1.0 / m.m_eff - m.ep / 3.0 * (2.0 / m.eps_gamma + 1.0 / (m.eps_gamma + m.delta)));
  CHECK(h(3, 3).real() == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("GaAs at k=(0.05,0,0) agrees with characteristic-polynomial roots") {
  const CMatrix h = build_hamiltonian(gaas(), {0.05, 0.0, 0.0, 0.0}).matrix();
  const auto roots = oracle::charpoly_roots(h);
  const auto ev = eigh(h).eigenvalues;
  REQUIRE(roots.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(roots[i] - ev[i]) < 1e-9);
}

TEST_CASE("property: Hermiticity over 1000 random materials and k-points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uk(-0.3, 0.3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MaterialParams m = random_material(rng);
    const KPoint k{uk(rng), uk(rng), uk(rng), 0.0};
    for (auto conv : {SignConvention::FigureConsistent, SignConvention::AsPrinted}) {
      KpOptions opt;
      opt.convention = conv;
      worst = std::max(worst, hermiticity_defect(build_hamiltonian(m, k, opt).matrix()));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("property: H(k) and H(-k) share their spectrum") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uk(-0.2, 0.2);
  for (int i = 0; i < 200; ++i) {
    const MaterialParams m = random_material(rng);
    const KPoint k{uk(rng), uk(rng), uk(rng), 0.0};
    const auto a = eigh(build_hamiltonian(m, k)).eigenvalues;
    const auto b = eigh(build_hamiltonian(m, {-k.kx, -k.ky, -k.kz, 0.0})).eigenvalues;
    for (int j = 0; j < 4; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-10);
  }
}

TEST_CASE("property: sorted eigenvalues are Lipschitz along the path") {
  const MaterialParams m = gaas();
  const auto path = make_kpath(m.a, 201, 0.1);
  double worst_slope = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto a = eigh(build_hamiltonian(m, path[i - 1])).eigenvalues;
    const auto b = eigh(build_hamiltonian(m, path[i])).eigenvalues;
    const double dk = path[i].path_coord - path[i - 1].path_coord;
    for (int j = 0; j < 4; ++j) worst_slope = std::max(worst_slope, std::abs(a[j] - b[j]) / dk);
  }
  // a bound of 25 eV A covers the steepest band (the conduction band) with margin
  CHECK(worst_slope < 25.0);
}

TEST_CASE("make_kpath endpoints, counts and scaling") {
  const double a = 5.653;
  const auto p = make_kpath(a, 2, 1.0);
  REQUIRE(p.size() == 3);
  CHECK(p[0].kx == doctest::Approx(2 * M_PI / a));
  CHECK(p[0].ky == 0.0);
  CHECK(p[1].kx == 0.0);
  CHECK(p[1].kz == 0.0);
  CHECK(p[2].kx == doctest::Approx(M_PI / a));
  CHECK(p[2].ky == doctest::Approx(M_PI / a));
  CHECK(p[2].kz == doctest::Approx(M_PI / a));

  const auto d = make_kpath(a, kDefaultPointsPerSegment, kDefaultPathExtent);
  CHECK(d.size() == 41);
  CHECK(std::hypot(d[0].kx, d[0].ky, d[0].kz) == doctest::Approx(0.1 * 2 * M_PI / a));
  int gammas = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].kx == 0.0 && d[i].ky == 0.0 && d[i].kz == 0.0) ++gammas;
    if (i > 0) CHECK(d[i].path_coord > d[i - 1].path_coord);
  }
  CHECK(gammas == 1);
  CHECK(d.back().path_coord ==
        doctest::Approx(0.1 * 2 * M_PI / a + 0.1 * std::sqrt(3.0) * M_PI / a));

  CHECK_THROWS_AS(make_kpath(a, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_kpath(a, 5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_kpath(a, 5, 1.5), std::invalid_argument);
}
