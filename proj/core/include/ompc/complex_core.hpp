// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_COMPLEX_CORE_HPP_
#define OMPC_COMPLEX_CORE_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ompc {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);

  static CMatrix identity(std::size_t n);
  /// Builds a rows x columns.size() matrix from equal-length columns.
  static CMatrix from_columns(std::span<const CVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  CVector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> values);

  /// Conjugate transpose.
  CMatrix adjoint() const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// sum_k conj(a_k) * b_k.
Complex hermitian_inner(std::span<const Complex> a, std::span<const Complex> b);

double norm2(std::span<const Complex> v);
double norm_inf(std::span<const Complex> v);
bool all_finite(std::span<const Complex> v);

CVector subtract(std::span<const Complex> a, std::span<const Complex> b);
CVector add(std::span<const Complex> a, std::span<const Complex> b);
CVector scaled(std::span<const Complex> v, Complex factor);

CVector matvec(const CMatrix& a, std::span<const Complex> x);
/// A^H * y without forming A^H.
CVector adjoint_matvec(const CMatrix& a, std::span<const Complex> y);
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// Rank tolerance relative to the leading pivot of the QR factorization.
inline constexpr double kRankTolerance = 1e-12;

struct LstsqResult {
  CVector coeffs;
  CVector residual;
};

/// Minimizes ||A c - y||_2 with a column-pivoted Householder QR.
///
/// The residual is assembled from the orthogonal factor, so it is orthogonal
/// to range(A) to working precision regardless of how ill-conditioned A is.
/// A matrix with zero columns is accepted and yields an empty coefficient
/// vector with residual == y.
///
/// Throws DimensionError when rows(A) != len(y) or cols(A) > rows(A), and
/// SingularityError (naming the original column) when a pivot falls below
/// kRankTolerance times the leading pivot.
LstsqResult lstsq(const CMatrix& a, std::span<const Complex> y);

/// (I - P) y where P projects onto range(A); P is never formed.
CVector project_off(const CMatrix& a, std::span<const Complex> y);

/// Smallest eigenvalue of a Hermitian matrix by cyclic Jacobi rotations.
/// The input is symmetrized as (G + G^H) / 2 first.
double min_eigen_hermitian(const CMatrix& g);

/// All eigenvalues of a Hermitian matrix, ascending.
std::vector<double> eigenvalues_hermitian(const CMatrix& g);

}  // namespace ompc

#endif  // OMPC_COMPLEX_CORE_HPP_
