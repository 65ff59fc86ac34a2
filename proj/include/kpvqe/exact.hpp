// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "kpvqe/circuit.hpp"
#include "kpvqe/common.hpp"

namespace kpvqe {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // orthonormal columns, same order
};

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations on
/// the real symmetric embedding [[Re, -Im], [Im, Re]]. Within a numerically
/// degenerate cluster the returned vectors are an arbitrary orthonormal basis.
/// Throws std::invalid_argument for non-Hermitian input or dim > 64.
EigenDecomposition eigh(const CMatrix& h);
EigenDecomposition eigh(const HermitianMatrix& h);

/// Cyclic Jacobi on a real symmetric matrix; sweeps until the off-diagonal
/// Frobenius norm falls below `off_tol`. Eigenvalues unsorted, vectors in columns.
void jacobi_symmetric(Eigen::MatrixXd& a, Eigen::MatrixXd& vectors, double off_tol = 1e-14);

/// <phi_v| U^dagger(theta) T U(theta) |phi_c> by dense inner product.
Complex direct_amplitude(const AnsatzParams& theta, std::size_t v_index, std::size_t c_index,
                         const CMatrix& observable);

/// Result of following bands across adjacent k-points by eigenvector overlap.
struct BandMatch {
  std::vector<std::size_t> assignment;  // next band assigned to each previous band
  std::vector<std::size_t> crossings;   // previous bands whose match differs from sorted order
};

/// Maximum-overlap assignment between two decompositions. Clusters of
/// eigenvalues closer than `degeneracy_tol` compare by projector weight, so
/// arbitrary rotations inside a degenerate subspace are not reported as crossings.
BandMatch match_bands(const EigenDecomposition& prev, const EigenDecomposition& next,
                      double degeneracy_tol = 1e-9);

}  // namespace kpvqe
