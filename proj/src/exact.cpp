// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace kpvqe {

namespace {

// Groups consecutive ascending values whose gap is below tol.
std::vector<std::size_t> cluster_ids(const std::vector<double>& sorted, double tol) {
  std::vector<std::size_t> ids(sorted.size(), 0);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    ids[i] = ids[i - 1] + (sorted[i] - sorted[i - 1] >= tol ? 1 : 0);
  }
  return ids;
}

}  // namespace

void jacobi_symmetric(Eigen::MatrixXd& a, Eigen::MatrixXd& vectors, double off_tol) {
  const Eigen::Index n = a.rows();
  vectors = Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(1.0, a.norm());
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j) s += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() >= off_tol * scale; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = vectors(k, p);
          const double vkq = vectors(k, q);
          vectors(k, p) = c * vkp - s * vkq;
          vectors(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
}

EigenDecomposition eigh(const CMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigh: matrix is not square");
  if (h.rows() > 64) throw std::invalid_argument("eigh: dimension above 64 is unsupported");
  const double defect = hermiticity_defect(h);
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "eigh: input is not Hermitian (max |H - H^dagger| = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
  const Eigen::Index n = h.rows();
  if (n == 0) return {};

  Eigen::MatrixXd embed(2 * n, 2 * n);
  embed.topLeftCorner(n, n) = h.real();
  embed.bottomRightCorner(n, n) = h.real();
  embed.topRightCorner(n, n) = -h.imag();
  embed.bottomLeftCorner(n, n) = h.imag();
  Eigen::MatrixXd vecs;
  jacobi_symmetric(embed, vecs);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(2 * n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return embed(a, a) < embed(b, b); });
  std::vector<double> doubled;
  for (Eigen::Index i : order) doubled.push_back(embed(i, i));
  const auto clusters = cluster_ids(doubled, 1e-9 * std::max(1.0, h.norm()));

  // Each eigenvalue appears twice in the embedding; [x; y] and [-y; x] map to
  // the same complex ray x + iy. Pivoted Gram-Schmidt picks half of each cluster.
  std::vector<CVector> accepted;
  std::size_t start = 0;
  std::size_t owed = 0;
  while (start < order.size()) {
    std::size_t end = start;
    while (end < order.size() && clusters[end] == clusters[start]) ++end;
    const std::size_t size = end - start;
    std::size_t take = (size + owed) / 2;
    owed = (size + owed) % 2;
    std::vector<CVector> candidates;
    for (std::size_t i = start; i < end; ++i) {
      const auto col = vecs.col(order[i]);
      CVector z(n);
      for (Eigen::Index r = 0; r < n; ++r) z(r) = Complex(col(r), col(r + n));
      candidates.push_back(z);
    }
    while (take-- > 0 && static_cast<Eigen::Index>(accepted.size()) < n) {
      std::size_t best = 0;
      double best_norm = -1.0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        for (const auto& a : accepted) candidates[c] -= a.dot(candidates[c]) * a;
        const double norm = candidates[c].norm();
        if (norm > best_norm) {
          best_norm = norm;
          best = c;
        }
      }
      accepted.push_back(candidates[best] / best_norm);
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
    }
    start = end;
  }

  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    ranked.emplace_back(accepted[i].dot(h * accepted[i]).real(), i);
  }
  std::sort(ranked.begin(), ranked.end());
  EigenDecomposition out;
  out.eigenvectors.resize(n, n);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out.eigenvalues.push_back(ranked[i].first);
    out.eigenvectors.col(static_cast<Eigen::Index>(i)) = accepted[ranked[i].second];
  }
  return out;
}

EigenDecomposition eigh(const HermitianMatrix& h) { return eigh(h.matrix()); }

Complex direct_amplitude(const AnsatzParams& theta, std::size_t v_index, std::size_t c_index,
                         const CMatrix& observable) {
  const Eigen::Index dim = Eigen::Index{1} << theta.n_qubits;
  if (observable.rows() != dim || observable.cols() != dim) {
    throw std::invalid_argument("direct_amplitude: observable dimension does not match ansatz");
  }
  const StateVector v = apply_ansatz(theta, v_index);
  const StateVector c = apply_ansatz(theta, c_index);
  return v.amplitudes.dot(observable * c.amplitudes);
}

BandMatch match_bands(const EigenDecomposition& prev, const EigenDecomposition& next,
                      double degeneracy_tol) {
  const std::size_t n = prev.eigenvalues.size();
  if (next.eigenvalues.size() != n) throw std::invalid_argument("match_bands: size mismatch");
  const auto prev_ids = cluster_ids(prev.eigenvalues, degeneracy_tol);
  const auto next_ids = cluster_ids(next.eigenvalues, degeneracy_tol);

  std::vector<std::vector<double>> score(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t jj = 0; jj < n; ++jj) {
        if (next_ids[jj] != next_ids[j]) continue;
        score[i][j] += std::norm(prev.eigenvectors.col(static_cast<Eigen::Index>(i))
                                     .dot(next.eigenvectors.col(static_cast<Eigen::Index>(jj))));
      }
    }
  }

  BandMatch match;
  match.assignment.assign(n, n);
  std::vector<bool> taken(n, false);
  for (std::size_t round = 0; round < n; ++round) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (match.assignment[i] != n) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (taken[j]) continue;
        // Prefer the sorted partner on ties so degenerate clusters map in order.
        const double s = score[i][j] + (i == j ? 1e-12 : 0.0);
        if (s > best) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    }
    match.assignment[bi] = bj;
    taken[bj] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = match.assignment[i];
    const bool same_cluster = next_ids[j] == next_ids[i] || prev_ids[j] == prev_ids[i];
    if (!same_cluster) match.crossings.push_back(i);
  }
  return match;
}

}  // namespace kpvqe
