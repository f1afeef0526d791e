// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference computations. Nothing here calls the library's
// factorization, projection, eigen or coherence routines; the oracles use
// textbook formulas (normal equations, explicit projectors, closed-form
// cubic roots, exhaustive enumeration) so they check the library from an
// independent path.

#ifndef OMPC_TESTS_ORACLES_HPP_
#define OMPC_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "ompc/complex_core.hpp"
#include "ompc/dictionary.hpp"

namespace ompc::testing {

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline CVector random_cvector(std::size_t len, std::mt19937_64& rng) {
  CVector v(len);
  for (Complex& z : v) z = random_complex(rng);
  return v;
}

inline CMatrix random_cmatrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_complex(rng);
  return m;
}

inline Dictionary random_dictionary(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  return normalize_columns(random_cmatrix(m, n, rng));
}

/// Solves the square system A x = b by Gaussian elimination with partial
/// pivoting; A is given as a dense row-major vector-of-rows.
inline CVector gauss_solve(std::vector<CVector> a, CVector b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    if (std::abs(a[col][col]) == 0.0) throw std::runtime_error("gauss_solve: singular");
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  CVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// (A^H A)^{-1} A^H y through explicitly formed normal equations.
inline CVector normal_equations_lstsq(const CMatrix& a, const CVector& y) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  std::vector<CVector> gram(k, CVector(k));
  CVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < m; ++r) gram[i][j] += std::conj(a(r, i)) * a(r, j);
    for (std::size_t r = 0; r < m; ++r) rhs[i] += std::conj(a(r, i)) * y[r];
  }
  return gauss_solve(std::move(gram), std::move(rhs));
}

/// (I - A (A^H A)^{-1} A^H) y with the projector materialized entry by entry.
inline CVector explicit_projector_residual(const CMatrix& a, const CVector& y) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  std::vector<CVector> gram(k, CVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < m; ++r) gram[i][j] += std::conj(a(r, i)) * a(r, j);
  // Columns of (A^H A)^{-1} A^H, one solve per measurement coordinate.
  std::vector<CVector> pinv_cols(m);
  for (std::size_t r = 0; r < m; ++r) {
    CVector e(k);
    for (std::size_t i = 0; i < k; ++i) e[i] = std::conj(a(r, i));
    pinv_cols[r] = gauss_solve(gram, e);
  }
  std::vector<CVector> p(m, CVector(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t i = 0; i < k; ++i) p[r][c] += a(r, i) * pinv_cols[c][i];
  CVector out(m);
  for (std::size_t r = 0; r < m; ++r) {
    Complex acc = y[r];
    for (std::size_t c = 0; c < m; ++c) acc -= p[r][c] * y[c];
    out[r] = acc;
  }
  return out;
}

/// Eigenvalues of a 3x3 Hermitian matrix from its characteristic polynomial,
/// solved with the trigonometric form of Cardano's formula. Ascending.
inline std::vector<double> hermitian3_eigenvalues(const CMatrix& g) {
  const double a = g(0, 0).real();
  const double b = g(1, 1).real();
  const double c = g(2, 2).real();
  const Complex d = g(0, 1);
  const Complex e = g(1, 2);
  const Complex f = g(0, 2);
  // lambda^3 - p2 lambda^2 + p1 lambda - p0 = 0
  const double p2 = a + b + c;
  const double p1 = a * b + b * c + a * c - std::norm(d) - std::norm(e) - std::norm(f);
  const double p0 = a * b * c + 2.0 * (d * e * std::conj(f)).real() - a * std::norm(e) -
                    b * std::norm(f) - c * std::norm(d);
  const double shift = p2 / 3.0;
  // Depressed cubic t^3 + P t + Q = 0 with lambda = t + shift.
  const double P = p1 - p2 * p2 / 3.0;
  const double Q = -2.0 * p2 * p2 * p2 / 27.0 + p2 * p1 / 3.0 - p0;
  std::vector<double> out(3);
  if (std::abs(P) < 1e-300) {
    const double t = std::cbrt(-Q);
    out = {t + shift, t + shift, t + shift};
  } else {
    const double r = 2.0 * std::sqrt(-P / 3.0);
    const double arg = std::clamp(3.0 * Q / (P * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int i = 0; i < 3; ++i)
      out[i] = r * std::cos(phi - 2.0 * std::numbers::pi * i / 3.0) + shift;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// max_{i<j} |<psi_i, psi_j>| by a plain double loop over matrix entries.
inline double brute_force_mu(const CMatrix& normalized) {
  double mu = 0.0;
  for (std::size_t i = 0; i < normalized.cols(); ++i)
    for (std::size_t j = 0; j < normalized.cols(); ++j) {
      if (i == j) continue;
      Complex acc{};
      for (std::size_t r = 0; r < normalized.rows(); ++r)
        acc += std::conj(normalized(r, i)) * normalized(r, j);
      mu = std::max(mu, std::abs(acc));
    }
  return mu;
}

/// Best k-subset of columns by least-squares residual, by enumeration.
inline std::vector<std::size_t> best_subset(const CMatrix& dict, const CVector& y,
                                            std::size_t k) {
  const std::size_t n = dict.cols();
  std::vector<std::size_t> best;
  double best_res = std::numeric_limits<double>::infinity();
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) subset.push_back(i);
    CMatrix a(dict.rows(), k);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < dict.rows(); ++r) a(r, c) = dict(r, subset[c]);
    const CVector x = normal_equations_lstsq(a, y);
    double res = 0.0;
    for (std::size_t r = 0; r < dict.rows(); ++r) {
      Complex fit{};
      for (std::size_t c = 0; c < k; ++c) fit += a(r, c) * x[c];
      res += std::norm(y[r] - fit);
    }
    if (res < best_res) {
      best_res = res;
      best = subset;
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

/// k distinct indices out of [0, n), ascending.
inline std::vector<std::size_t> random_support(std::size_t n, std::size_t k,
                                               std::mt19937_64& rng) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

/// Identity next to a unitary DFT (m x 2m): every cross pair has coherence
/// exactly 1/sqrt(m). Rows get random unit phases and columns are shuffled,
/// which leaves the coherence structure intact.
inline CMatrix spikes_and_sines(std::size_t m, std::mt19937_64& rng) {
  CMatrix raw(m, 2 * m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t r = 0; r < m; ++r) {
    raw(r, r) = 1.0;
    for (std::size_t c = 0; c < m; ++c)
      raw(r, m + c) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(r * c) /
                                            static_cast<double>(m));
  }
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<std::size_t> perm(2 * m);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  CMatrix out(m, 2 * m);
  for (std::size_t r = 0; r < m; ++r) {
    const Complex phase = std::polar(1.0, u(rng));
    for (std::size_t c = 0; c < 2 * m; ++c) out(r, c) = phase * raw(r, perm[c]);
  }
  return out;
}

}  // namespace ompc::testing

#endif  // OMPC_TESTS_ORACLES_HPP_
