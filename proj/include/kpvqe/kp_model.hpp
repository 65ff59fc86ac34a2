// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kpvqe/common.hpp"

namespace kpvqe {

/// hbar^2 / (2 m0) in eV * Angstrom^2.
inline constexpr double kHbar2Over2M0 = 3.80998;

/// Luttinger/Kane parameter set of one zinc-blende compound.
/// Energies in eV, lattice constant in Angstrom, m_eff in units of m0.
struct MaterialParams {
  std::string name;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double delta = 0.0;
  double eps_gamma = 0.0;
  double ep = 0.0;
  double m_eff = 0.0;
  double a = 0.0;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  /// Kane momentum matrix element P = sqrt(E_p * hbar^2/2m0), in eV * Angstrom.
  [[nodiscard]] double kane_p() const;
};

/// Parses a flat JSON object holding the eight numeric fields (plus an
/// optional "name"). Unknown keys, missing fields, non-numeric values and
/// invariant violations raise ConfigError with the field name in the message.
MaterialParams load_material(std::string_view config_text);

/// Reads and parses a material file. A missing "name" defaults to the file stem.
MaterialParams load_material_file(const std::filesystem::path& path);

struct KPoint {
  double kx = 0.0;
  double ky = 0.0;
  double kz = 0.0;
  double path_coord = 0.0;
};

enum class SignConvention {
  // T and Q share the -(hbar^2/2m0) prefactor; split-off diagonal (Q+T)/2 - Delta.
  FigureConsistent,
  // T negative, Q positive, split-off diagonal (Q+T)/2 + Delta, as typeset.
  AsPrinted,
};

enum class SplitOffCoupling {
  OneThird,     // H(3,4) = -P kz / 3
  InvSqrtThree  // H(3,4) = -P kz / sqrt(3)
};

struct KpOptions {
  SignConvention convention = SignConvention::FigureConsistent;
  SplitOffCoupling split_off_coupling = SplitOffCoupling::OneThird;
};

/// 4x4 band-edge Hamiltonian at wave vector k (Angstrom^-1), energies in eV.
/// Basis order: two valence edge states, split-off, conduction.
HermitianMatrix build_hamiltonian(const MaterialParams& params, const KPoint& k,
                                  const KpOptions& options = {});

/// Uniform X*extent -> Gamma -> L*extent path with `n_per_segment` points per
/// segment (Gamma shared), X = (2pi/a)(1,0,0), L = (pi/a)(1,1,1).
std::vector<KPoint> make_kpath(double a, int n_per_segment, double extent);

inline constexpr int kDefaultPointsPerSegment = 21;
inline constexpr double kDefaultPathExtent = 0.1;

}  // namespace kpvqe
