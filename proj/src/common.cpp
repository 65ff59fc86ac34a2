// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/common.hpp"

#include <sstream>

namespace kpvqe {

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(CMatrix entries, double tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("HermitianMatrix: matrix is not square");
  }
  if (entries_.size() > 0) {
    const double defect = hermiticity_defect(entries_);
    if (defect > tol) {
      std::ostringstream msg;
      msg << "HermitianMatrix: max |H - H^dagger| = " << defect << " exceeds " << tol;
      throw std::invalid_argument(msg.str());
    }
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace kpvqe
