// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kpvqe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Raised for malformed or out-of-range user configuration (material files,
/// CLI options, observable files). The message always names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense Hermitian matrix. Construction validates squareness and
/// H == H^dagger elementwise within `tol`.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix entries, double tol = 1e-10);

  [[nodiscard]] Eigen::Index dim() const { return entries_.rows(); }
  [[nodiscard]] const CMatrix& matrix() const { return entries_; }
  [[nodiscard]] Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  CMatrix entries_;
};

/// Largest elementwise |H - H^dagger|.
double hermiticity_defect(const CMatrix& m);

/// SplitMix64 finalizer; used to derive independent stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
template <class Engine>
double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace kpvqe
