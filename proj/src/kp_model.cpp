// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/kp_model.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace kpvqe {

namespace {

constexpr std::array<const char*, 8> kNumericFields = {
    "gamma1", "gamma2", "gamma3", "delta", "eps_gamma", "ep", "m_eff", "a"};

double* field_slot(MaterialParams& p, std::string_view key) {
  if (key == "gamma1") return &p.gamma1;
  if (key == "gamma2") return &p.gamma2;
  if (key == "gamma3") return &p.gamma3;
  if (key == "delta") return &p.delta;
  if (key == "eps_gamma") return &p.eps_gamma;
  if (key == "ep") return &p.ep;
  if (key == "m_eff") return &p.m_eff;
  if (key == "a") return &p.a;
  return nullptr;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void MaterialParams::validate() const {
  MaterialParams copy = *this;
  for (const char* key : kNumericFields) {
    require(std::isfinite(*field_slot(copy, key)), std::string(key) + " must be finite");
  }
  require(eps_gamma > 0.0, "eps_gamma must be positive");
  require(ep > 0.0, "ep must be positive");
  require(delta >= 0.0, "delta must be non-negative");
  require(m_eff > 0.0, "m_eff must be positive");
  require(a > 0.0, "a must be positive");
  require(gamma1 > 0.0, "gamma1 must be positive");
  require(gamma1 > 2.0 * std::abs(gamma2), "gamma1 must exceed 2*|gamma2|");
}

double MaterialParams::kane_p() const { return std::sqrt(ep * kHbar2Over2M0); }

MaterialParams load_material(std::string_view config_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("material file is not valid JSON: ") + e.what());
  }
  require(doc.is_object(), "material file must be a JSON object");

  MaterialParams params;
  for (const auto& [key, value] : doc.items()) {
    if (key == "name") {
      require(value.is_string(), "name must be a string");
      params.name = value.get<std::string>();
      continue;
    }
    double* slot = field_slot(params, key);
    require(slot != nullptr, "unknown field '" + key + "'");
    require(value.is_number(), key + " must be numeric");
    *slot = value.get<double>();
  }
  for (const char* key : kNumericFields) {
    require(doc.contains(key), std::string("missing field '") + key + "'");
  }
  params.validate();
  return params;
}

MaterialParams load_material_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    MaterialParams params = load_material(buf.str());
    if (params.name.empty()) params.name = path.stem().string();
    return params;
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

HermitianMatrix build_hamiltonian(const MaterialParams& params, const KPoint& k,
                                  const KpOptions& options) {
  using namespace std::complex_literals;
  const double c = kHbar2Over2M0;
  const double g1 = params.gamma1;
  const double g2 = params.gamma2;
  const double g3 = params.gamma3;
  const double kperp2 = k.kx * k.kx + k.ky * k.ky;
  const double kz2 = k.kz * k.kz;
  const double k2 = kperp2 + kz2;
  const Complex k_minus = Complex(k.kx, -k.ky) / std::numbers::sqrt2;
  const Complex k_plus = Complex(k.kx, k.ky) / std::numbers::sqrt2;
  const double p = params.kane_p();

  const bool as_printed = options.convention == SignConvention::AsPrinted;
  const double t = -c * ((g1 - g2) * kperp2 + (g1 + 2.0 * g2) * kz2);
  const double q_mag = c * ((g1 + g2) * kperp2 + (g1 - 2.0 * g2) * kz2);
  const double q = as_printed ? q_mag : -q_mag;
  const double split_off = (q + t) / 2.0 + (as_printed ? params.delta : -params.delta);

  const Complex s = 1i * c * (2.0 * std::sqrt(3.0) * g3 * k.kz) * k_minus;
  const double pz = p * k.kz;
  const Complex p_plus = p * k_plus;
  const double remote =
      1.0 / params.m_eff -
      params.ep / 3.0 * (2.0 / params.eps_gamma + 1.0 / (params.eps_gamma + params.delta));
  const double e_gamma = params.eps_gamma + c * k2 * remote;
  const double so_cb = options.split_off_coupling == SplitOffCoupling::OneThird
                           ? -pz / 3.0
                           : -pz / std::sqrt(3.0);

  CMatrix h = CMatrix::Zero(4, 4);
  h(0, 0) = t;
  h(0, 1) = -s;
  h(0, 2) = 1i * (t - q) / std::numbers::sqrt2;
  h(0, 3) = -1i * std::sqrt(2.0 / 3.0) * pz;
  h(1, 1) = q;
  h(1, 2) = -1i * std::conj(s) / std::numbers::sqrt2;
  h(1, 3) = -p_plus;
  h(2, 2) = split_off;
  h(2, 3) = so_cb;
  h(3, 3) = e_gamma;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) h(i, j) = std::conj(h(j, i));
  }
  return HermitianMatrix(std::move(h), 0.0);
}

std::vector<KPoint> make_kpath(double a, int n_per_segment, double extent) {
  if (n_per_segment < 2) throw std::invalid_argument("make_kpath: n_per_segment must be >= 2");
  if (!(extent > 0.0 && extent <= 1.0)) {
    throw std::invalid_argument("make_kpath: extent must lie in (0, 1]");
  }
  if (!(a > 0.0)) throw std::invalid_argument("make_kpath: lattice constant must be positive");

  const double x_edge = 2.0 * std::numbers::pi / a * extent;
  const double l_edge = std::numbers::pi / a * extent;
  const double last = static_cast<double>(n_per_segment - 1);

  std::vector<KPoint> path;
  path.reserve(2 * static_cast<std::size_t>(n_per_segment) - 1);
  for (int i = 0; i < n_per_segment; ++i) {
    path.push_back({x_edge * (1.0 - i / last), 0.0, 0.0, 0.0});
  }
  for (int i = 1; i < n_per_segment; ++i) {
    const double f = l_edge * (i / last);
    path.push_back({f, f, f, 0.0});
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double dx = path[i].kx - path[i - 1].kx;
    const double dy = path[i].ky - path[i - 1].ky;
    const double dz = path[i].kz - path[i - 1].kz;
    path[i].path_coord = path[i - 1].path_coord + std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  return path;
}

}  // namespace kpvqe
