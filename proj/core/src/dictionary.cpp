// SPDX-License-Identifier: Apache-2.0

#include "ompc/dictionary.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "ompc/errors.hpp"
#include "ompc/io.hpp"

namespace ompc {

Dictionary normalize_columns(const CMatrix& m, std::vector<double> labels) {
  if (m.rows() < 1 || m.cols() < 2) {
    throw DimensionError("dictionary needs m >= 1 and n >= 2, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!labels.empty() && labels.size() != m.cols()) {
    throw DimensionError("dictionary: " + std::to_string(labels.size()) +
                         " labels for " + std::to_string(m.cols()) + " atoms");
  }
  if (!all_finite(m.data())) throw DomainError("dictionary: non-finite entry");

  CMatrix normalized(m.rows(), m.cols());
  std::vector<CVector> atoms(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    CVector col = m.column(c);
    const double nrm = norm2(col);
    if (nrm <= 1e-14) {
      throw DegenerateInputError("dictionary: column " + std::to_string(c + 1) +
                                 " has zero norm");
    }
    for (Complex& z : col) z /= nrm;
    normalized.set_column(c, col);
    atoms[c] = std::move(col);
  }
  return Dictionary(std::move(normalized), std::move(atoms), std::move(labels));
}

CMatrix Dictionary::submatrix(std::span<const std::size_t> indices) const {
  CMatrix out(num_measurements(), indices.size());
  for (std::size_t c = 0; c < indices.size(); ++c) out.set_column(c, atom(indices[c]));
  return out;
}

CVector Dictionary::correlations(std::span<const Complex> r) const {
  if (r.size() != num_measurements()) {
    throw DimensionError("correlations: residual length " + std::to_string(r.size()) +
                         " != " + std::to_string(num_measurements()));
  }
  CVector out(num_atoms());
  for (std::size_t t = 0; t < num_atoms(); ++t) out[t] = hermitian_inner(atoms_[t], r);
  return out;
}

CoherenceReport mutual_incoherence(const Dictionary& d) {
  const std::size_t n = d.num_atoms();
  CoherenceReport report;
  report.n = n;
  report.gram_abs.assign(n * n, 0.0);
  report.mu = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    report.gram_abs[i * n + i] = std::abs(hermitian_inner(d.atom(i), d.atom(i)));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double g = std::abs(hermitian_inner(d.atom(i), d.atom(j)));
      report.gram_abs[i * n + j] = g;
      report.gram_abs[j * n + i] = g;
      if (g > report.mu) {
        report.mu = g;
        report.argmax_pair = {i, j};
      }
    }
  }
  // Rounding can push |<a, b>| of unit vectors a hair above 1.
  report.mu = std::min(report.mu, 1.0);
  return report;
}

CoherenceSurface coherence_surface(const Dictionary& d, std::size_t reference_atom) {
  const std::size_t n = d.num_atoms();
  if (reference_atom >= n) {
    throw DimensionError("coherence_surface: reference atom " +
                         std::to_string(reference_atom + 1) + " out of range");
  }
  const CoherenceReport report = mutual_incoherence(d);
  auto label = [&](std::size_t i) {
    return d.labels().empty() ? static_cast<double>(i + 1) : d.labels()[i];
  };

  CoherenceSurface out;
  out.surface.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.surface.push_back({i, j, label(i), label(j), report.gram(i, j)});
  out.slice.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.slice.push_back({i, reference_atom, label(i), label(reference_atom),
                         report.gram(i, reference_atom)});
  return out;
}

void write_coherence_csv(std::ostream& out, std::span<const CoherenceRow> rows) {
  out << "i,j,label_i,label_j,coherence\n";
  for (const CoherenceRow& row : rows) {
    out << row.i + 1 << ',' << row.j + 1 << ',' << format_double(row.label_i) << ','
        << format_double(row.label_j) << ',' << format_double(row.coherence) << '\n';
  }
  if (!out) throw Error("write_coherence_csv: write failed");
}

}  // namespace ompc
