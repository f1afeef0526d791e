// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_OMP_SOLVER_HPP_
#define OMPC_OMP_SOLVER_HPP_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ompc/complex_core.hpp"
#include "ompc/dictionary.hpp"

namespace ompc {

/// Stop once ||r_i||_2 <= epsilon.
struct ResidualThreshold {
  double epsilon = 0.0;
};

/// Stop once ||r_i||_2 <= b2, where b2 bounds the noise norm.
struct NoiseBound {
  double b2 = 0.0;
};

/// Stop after exactly k selections.
struct FixedIterations {
  std::size_t k = 1;
};

struct StoppingRule {
  std::variant<ResidualThreshold, NoiseBound, FixedIterations> criterion;
  /// Hard cap on the number of selections; 0 means min(m, n).
  std::size_t max_iterations = 0;
};

/// Residual norms within this multiple of ||y||_2 above a threshold still
/// count as reaching it. Without it a residual of exactly b2 can land one ulp
/// above b2, and epsilon = 0 could never fire in floating point.
inline constexpr double kStopAllowance = 64.0 * 2.220446049250313e-16;

/// Throws DomainError unless thresholds are >= 0, FixedIterations::k >= 1 and
/// both k and max_iterations are <= min(m, n).
void validate(const StoppingRule& rule, std::size_t m, std::size_t n);

/// The cap actually used for a dictionary of shape m x n.
std::size_t effective_cap(const StoppingRule& rule, std::size_t m, std::size_t n);

/// Complex coefficients on a support S within an index space of size `length`.
struct SparseSignal {
  std::size_t length = 0;
  std::vector<std::size_t> support;
  std::vector<Complex> values;

  /// Keeps the exactly-nonzero entries of a dense vector.
  static SparseSignal from_dense(std::span<const Complex> dense);
  CVector to_dense() const;
  std::size_t sparsity() const noexcept { return support.size(); }
  /// Throws InconsistencyError on out-of-range or duplicate indices, zero
  /// values, or size mismatch between support and values.
  void validate() const;
};

struct OmpResult {
  /// Selected atoms in selection order.
  std::vector<std::size_t> support;
  SparseSignal coefficients;
  /// ||r_0||, ||r_1||, ..., one more entry than `support`.
  std::vector<double> residual_norms;
  CVector residual;
  bool converged = false;
};

/// Orthogonal Matching Pursuit.
///
/// Each iteration selects the unselected atom maximizing |psi_t^H r| (ties go
/// to the smallest index), re-solves the least-squares fit on the enlarged
/// support from scratch and updates the residual. Threshold rules are also
/// checked against r_0, so a measurement already inside the threshold returns
/// an empty support. An exactly zero residual ends the run as converged.
///
/// When the cap is reached without the rule firing the result is returned
/// with converged == false. A rank-deficient selection raises SingularityError
/// whose column() is the offending atom index.
OmpResult omp_solve(const Dictionary& d, std::span<const Complex> y,
                    const StoppingRule& rule);

struct SweepIndices {
  std::size_t argmax_correlation;
  std::size_t argmin_error;
};

/// Index maximizing |psi_j^H r| and, independently, the index minimizing
/// min_z ||psi_j z - r||_2^2 solved as a one-column least-squares problem.
/// Throws DegenerateInputError on a zero residual.
SweepIndices sweep_equivalence_check(const Dictionary& d, std::span<const Complex> r);

/// Signal/noise split of the correlation at one OMP step.
struct StepDiagnostics {
  std::size_t step = 0;
  /// max over correct atoms of |psi^H s_t|.
  double alpha1 = 0.0;
  /// max over incorrect atoms of |psi^H s_t|.
  double alpha2 = 0.0;
  /// max over all atoms of |psi^H n_t|.
  double beta = 0.0;
  double signal_residual_norm = 0.0;
  double noise_residual_norm = 0.0;
  /// alpha1 - alpha2 > 2 beta.
  bool sufficient_condition_holds = false;
  bool selected_correct = false;
};

struct Diagnosis {
  OmpResult result;
  std::vector<StepDiagnostics> steps;
};

/// Solves y_clean + noise and, for every step t, splits the residual before
/// the t-th selection into s_t = (I - P_t) Psi x and n_t = (I - P_t) n.
/// Throws InconsistencyError when y_clean differs from Psi * truth by more
/// than 1e-9 * max(1, ||y_clean||) or truth does not fit the dictionary.
Diagnosis diagnose(const Dictionary& d, std::span<const Complex> y_clean,
                   std::span<const Complex> noise, const SparseSignal& truth,
                   const StoppingRule& rule);

}  // namespace ompc

#endif  // OMPC_OMP_SOLVER_HPP_
