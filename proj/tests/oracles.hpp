// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Reference implementations used only by the tests. They deliberately avoid
// the library's fast paths: Pauli strings are Kronecker products, circuits
// are dense matrix products, eigenvalues are characteristic-polynomial roots.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli1(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad letter");
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Leftmost letter acts on wire 0, the most significant bit.
inline Mat pauli(const std::string& s) {
  Mat m = pauli1(s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) m = kron(m, pauli1(s[i]));
  return m;
}

inline Mat rz(double t) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = std::exp(C(0, -t / 2));
  m(1, 1) = std::exp(C(0, t / 2));
  return m;
}

inline Mat ry(double t) {
  Mat m(2, 2);
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

inline Mat on_wire(const Mat& u, int wire, int n) {
  Mat m = Mat::Identity(1, 1);
  for (int q = 0; q < n; ++q) m = kron(m, q == wire ? u : Mat(Mat::Identity(2, 2)));
  return m;
}

inline Mat cnot(int control, int target, int n) {
  const int dim = 1 << n;
  Mat m = Mat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const bool on = (j >> (n - 1 - control)) & 1;
    const int out = on ? (j ^ (1 << (n - 1 - target))) : j;
    m(out, j) = 1.0;
  }
  return m;
}

// Dense unitary of the layered ansatz: Rot = RZ(a) RY(b) RZ(c) per wire,
// then CNOT((q+1)%n -> q) for q = 0..n-1.
inline Mat ansatz_unitary(const std::vector<double>& angles, int n, int layers) {
  const int dim = 1 << n;
  Mat u = Mat::Identity(dim, dim);
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) {
      const std::size_t base = (static_cast<std::size_t>(l) * n + q) * 3;
      const Mat rot = rz(angles[base]) * ry(angles[base + 1]) * rz(angles[base + 2]);
      u = on_wire(rot, q, n) * u;
    }
    if (n > 1) {
      for (int q = 0; q < n; ++q) u = cnot((q + 1) % n, q, n) * u;
    }
  }
  return u;
}

inline Mat random_hermitian(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = C(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

inline std::vector<double> random_angles(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Determinant by Gaussian elimination with partial pivoting.
inline C det(Mat m) {
  const Eigen::Index n = m.rows();
  C d = 1.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (std::abs(m(piv, col)) == 0.0) return 0.0;
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      d = -d;
    }
    d *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const C f = m(r, col) / m(col, col);
      m.row(r) -= f * m.row(col);
    }
  }
  return d;
}

// Roots of det(H - x I) found by scanning for sign changes and bisecting.
// Only simple roots are found; callers use it on non-degenerate spectra.
inline std::vector<double> charpoly_roots(const Mat& h, int scan = 20000) {
  const Eigen::Index n = h.rows();
  double bound = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) bound = std::max(bound, h.row(i).cwiseAbs().sum());
  bound += 1.0;
  auto f = [&](double x) { return det(h - x * Mat::Identity(n, n)).real(); };
  std::vector<double> roots;
  double lo = -bound;
  double flo = f(lo);
  for (int i = 1; i <= scan; ++i) {
    const double hi = -bound + 2.0 * bound * i / scan;
    const double fhi = f(hi);
    if (flo == 0.0) {
      roots.push_back(lo);
    } else if ((flo < 0) != (fhi < 0)) {
      double a = lo, b = hi, fa = flo;
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    lo = hi;
    flo = fhi;
  }
  return roots;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace oracle
