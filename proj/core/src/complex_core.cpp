// SPDX-License-Identifier: Apache-2.0

#include "ompc/complex_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ompc/errors.hpp"

namespace ompc {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("CMatrix: " + std::to_string(data_.size()) +
                         " entries do not fill " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  CMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  CVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void CMatrix::set_column(std::size_t c, std::span<const Complex> values) {
  if (values.size() != rows_) {
    throw DimensionError("set_column: length " + std::to_string(values.size()) +
                         " != rows " + std::to_string(rows_));
  }
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

namespace {

void require_same_length(std::span<const Complex> a, std::span<const Complex> b,
                         const char* op) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(op) + ": length mismatch " +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

Complex hermitian_inner(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_length(a, b, "hermitian_inner");
  Complex acc{};
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

double norm2(std::span<const Complex> v) {
  // Scaled accumulation keeps tiny and huge entries from under/overflowing.
  double scale = 0.0;
  double ssq = 1.0;
  for (const Complex& z : v) {
    for (double part : {z.real(), z.imag()}) {
      if (part == 0.0) continue;
      const double a = std::abs(part);
      if (scale < a) {
        ssq = 1.0 + ssq * (scale / a) * (scale / a);
        scale = a;
      } else {
        ssq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

double norm_inf(std::span<const Complex> v) {
  double m = 0.0;
  for (const Complex& z : v) m = std::max(m, std::abs(z));
  return m;
}

bool all_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CVector subtract(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_length(a, b, "subtract");
  CVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

CVector add(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_length(a, b, "add");
  CVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

CVector scaled(std::span<const Complex> v, Complex factor) {
  CVector out(v.begin(), v.end());
  for (Complex& z : out) z *= factor;
  return out;
}

CVector matvec(const CMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matvec: cols " + std::to_string(a.cols()) + " != len " +
                         std::to_string(x.size()));
  }
  CVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

CVector adjoint_matvec(const CMatrix& a, std::span<const Complex> y) {
  if (a.rows() != y.size()) {
    throw DimensionError("adjoint_matvec: rows " + std::to_string(a.rows()) +
                         " != len " + std::to_string(y.size()));
  }
  CVector out(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] += std::conj(a(r, c)) * y[r];
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) +
                         " and " + std::to_string(b.rows()));
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex ail = a(i, l);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
    }
  return out;
}

namespace {

// Applies H = I - 2 v v^H / (v^H v) to x[offset..), with v stored from offset.
void apply_reflector(const CVector& v, double v_norm_sq, std::size_t offset,
                     CVector& x) {
  Complex w{};
  for (std::size_t i = offset; i < x.size(); ++i) w += std::conj(v[i]) * x[i];
  const Complex f = 2.0 * w / v_norm_sq;
  for (std::size_t i = offset; i < x.size(); ++i) x[i] -= f * v[i];
}

}  // namespace

LstsqResult lstsq(const CMatrix& a, std::span<const Complex> y) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  // A default-constructed (0x0) matrix stands for "no columns".
  if (k == 0 && m == 0) return {{}, CVector(y.begin(), y.end())};
  if (m != y.size()) {
    throw DimensionError("lstsq: rows " + std::to_string(m) + " != len(y) " +
                         std::to_string(y.size()));
  }
  if (k > m) {
    throw DimensionError("lstsq: " + std::to_string(k) + " columns exceed " +
                         std::to_string(m) + " rows");
  }
  if (k == 0) return {{}, CVector(y.begin(), y.end())};

  // Column-major working copy; R ends up in the upper triangle.
  std::vector<CVector> cols(k);
  for (std::size_t c = 0; c < k; ++c) cols[c] = a.column(c);
  std::vector<std::size_t> perm(k);
  for (std::size_t c = 0; c < k; ++c) perm[c] = c;

  std::vector<CVector> reflectors(k);
  std::vector<double> reflector_norm_sq(k);
  CVector qty(y.begin(), y.end());
  double lead = 0.0;

  for (std::size_t j = 0; j < k; ++j) {
    std::size_t pivot = j;
    double best = -1.0;
    for (std::size_t c = j; c < k; ++c) {
      double s = 0.0;
      for (std::size_t i = j; i < m; ++i) s += std::norm(cols[c][i]);
      if (s > best) {
        best = s;
        pivot = c;
      }
    }
    std::swap(cols[j], cols[pivot]);
    std::swap(perm[j], perm[pivot]);

    const double col_norm = norm2(std::span<const Complex>(cols[j]).subspan(j));
    if (j == 0) lead = col_norm;
    if (lead == 0.0 || col_norm < kRankTolerance * lead) {
      throw SingularityError("lstsq: matrix is rank deficient at column " +
                                 std::to_string(perm[j]),
                             perm[j]);
    }

    const Complex x0 = cols[j][j];
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
    const Complex alpha = -phase * col_norm;

    CVector v(m);
    for (std::size_t i = j; i < m; ++i) v[i] = cols[j][i];
    v[j] -= alpha;
    double v_norm_sq = 0.0;
    for (std::size_t i = j; i < m; ++i) v_norm_sq += std::norm(v[i]);

    for (std::size_t c = j + 1; c < k; ++c) apply_reflector(v, v_norm_sq, j, cols[c]);
    apply_reflector(v, v_norm_sq, j, qty);

    cols[j][j] = alpha;
    for (std::size_t i = j + 1; i < m; ++i) cols[j][i] = 0.0;
    reflectors[j] = std::move(v);
    reflector_norm_sq[j] = v_norm_sq;
  }

  CVector z(k);
  for (std::size_t ii = k; ii-- > 0;) {
    Complex acc = qty[ii];
    for (std::size_t l = ii + 1; l < k; ++l) acc -= cols[l][ii] * z[l];
    z[ii] = acc / cols[ii][ii];
  }
  CVector coeffs(k);
  for (std::size_t i = 0; i < k; ++i) coeffs[perm[i]] = z[i];

  // residual = Q [0; (Q^H y)_{k..m}]
  CVector residual = std::move(qty);
  for (std::size_t i = 0; i < k; ++i) residual[i] = 0.0;
  for (std::size_t j = k; j-- > 0;)
    apply_reflector(reflectors[j], reflector_norm_sq[j], j, residual);

  return {std::move(coeffs), std::move(residual)};
}

CVector project_off(const CMatrix& a, std::span<const Complex> y) {
  return lstsq(a, y).residual;
}

std::vector<double> eigenvalues_hermitian(const CMatrix& g) {
  const std::size_t n = g.rows();
  if (g.cols() != n) {
    throw DimensionError("eigenvalues_hermitian: matrix is " + std::to_string(g.rows()) +
                         "x" + std::to_string(g.cols()));
  }
  if (n == 0) return {};

  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return s;
  };
  double total = 0.0;
  for (const Complex& z : a.data()) total += std::norm(z);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal() <= 1e-32 * total) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase_conj = std::conj(apq / mag);

        // Real Jacobi rotation on diag(1, e^{-i phi})^H A diag(1, e^{-i phi}).
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * phase_conj;
        const Complex jqq = c * phase_conj;

        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = arp * jpp + arq * jqp;
          a(r, q) = arp * jpq + arq * jqq;
        }
        for (std::size_t col = 0; col < n; ++col) {
          const Complex apc = a(p, col);
          const Complex aqc = a(q, col);
          a(p, col) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
          a(q, col) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double min_eigen_hermitian(const CMatrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) {
    throw DimensionError("min_eigen_hermitian: matrix is " + std::to_string(g.rows()) +
                         "x" + std::to_string(g.cols()));
  }
  return eigenvalues_hermitian(g).front();
}

}  // namespace ompc
