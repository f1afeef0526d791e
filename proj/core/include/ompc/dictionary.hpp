// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_DICTIONARY_HPP_
#define OMPC_DICTIONARY_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "ompc/complex_core.hpp"

namespace ompc {

/// A column-normalized m x n complex matrix. Columns are the atoms.
///
/// Only obtainable through normalize_columns(), so every instance satisfies
/// ||atom(i)||_2 == 1 to rounding.
class Dictionary {
 public:
  std::size_t num_measurements() const noexcept { return matrix_.rows(); }
  std::size_t num_atoms() const noexcept { return matrix_.cols(); }

  const CMatrix& matrix() const noexcept { return matrix_; }
  std::span<const Complex> atom(std::size_t i) const { return atoms_.at(i); }

  /// Physical coordinate per atom (e.g. range in meters); empty if none.
  std::span<const double> labels() const noexcept { return labels_; }

  /// Columns indexed by `indices`, in that order.
  CMatrix submatrix(std::span<const std::size_t> indices) const;

  /// psi_t^H r for every atom.
  CVector correlations(std::span<const Complex> r) const;

  friend Dictionary normalize_columns(const CMatrix& m, std::vector<double> labels);

 private:
  Dictionary(CMatrix matrix, std::vector<CVector> atoms, std::vector<double> labels)
      : matrix_(std::move(matrix)), atoms_(std::move(atoms)), labels_(std::move(labels)) {}

  CMatrix matrix_;
  std::vector<CVector> atoms_;
  std::vector<double> labels_;
};

/// Divides each column by its l2 norm. Throws DegenerateInputError naming the
/// column when a norm is <= 1e-14, DimensionError when m < 1, n < 2, or the
/// label count does not match n.
Dictionary normalize_columns(const CMatrix& m, std::vector<double> labels = {});

struct CoherenceReport {
  double mu = 0.0;
  /// Lexicographically smallest (i, j), i < j, attaining mu.
  std::pair<std::size_t, std::size_t> argmax_pair{0, 1};
  std::size_t n = 0;
  /// |psi_i^H psi_j|, row-major n x n.
  std::vector<double> gram_abs;

  double gram(std::size_t i, std::size_t j) const { return gram_abs[i * n + j]; }
};

/// mu(D) = max_{i != j} |psi_i^H psi_j| together with the full |Gram| matrix.
CoherenceReport mutual_incoherence(const Dictionary& d);

struct CoherenceRow {
  std::size_t i;
  std::size_t j;
  double label_i;
  double label_j;
  double coherence;
};

struct CoherenceSurface {
  /// All n^2 pairs, row-major in (i, j).
  std::vector<CoherenceRow> surface;
  /// (i, reference) for every i.
  std::vector<CoherenceRow> slice;
};

/// Surface and reference-atom slice of |psi_i^H psi_j|. Atoms without labels
/// are labelled by their 1-based index.
CoherenceSurface coherence_surface(const Dictionary& d, std::size_t reference_atom);

/// CSV with header `i,j,label_i,label_j,coherence`; indices are written 1-based.
void write_coherence_csv(std::ostream& out, std::span<const CoherenceRow> rows);

}  // namespace ompc

#endif  // OMPC_DICTIONARY_HPP_
