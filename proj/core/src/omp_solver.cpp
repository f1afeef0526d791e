// SPDX-License-Identifier: Apache-2.0

#include "ompc/omp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ompc/errors.hpp"

namespace ompc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Threshold for the residual-norm rules, nullopt for FixedIterations.
std::optional<double> residual_threshold(const StoppingRule& rule) {
  return std::visit(
      Overloaded{[](const ResidualThreshold& r) -> std::optional<double> { return r.epsilon; },
                 [](const NoiseBound& r) -> std::optional<double> { return r.b2; },
                 [](const FixedIterations&) -> std::optional<double> { return std::nullopt; }},
      rule.criterion);
}

}  // namespace

void validate(const StoppingRule& rule, std::size_t m, std::size_t n) {
  const std::size_t limit = std::min(m, n);
  if (rule.max_iterations > limit) {
    throw DomainError("stopping rule: max_iterations " +
                      std::to_string(rule.max_iterations) + " exceeds min(m, n) = " +
                      std::to_string(limit));
  }
  std::visit(Overloaded{[](const ResidualThreshold& r) {
                          if (!(r.epsilon >= 0.0))
                            throw DomainError("stopping rule: epsilon must be >= 0");
                        },
                        [](const NoiseBound& r) {
                          if (!(r.b2 >= 0.0))
                            throw DomainError("stopping rule: noise bound must be >= 0");
                        },
                        [&](const FixedIterations& r) {
                          if (r.k == 0 || r.k > effective_cap(rule, m, n))
                            throw DomainError("stopping rule: iteration count " +
                                              std::to_string(r.k) + " outside [1, " +
                                              std::to_string(effective_cap(rule, m, n)) +
                                              "]");
                        }},
             rule.criterion);
}

std::size_t effective_cap(const StoppingRule& rule, std::size_t m, std::size_t n) {
  const std::size_t limit = std::min(m, n);
  return rule.max_iterations == 0 ? limit : std::min(rule.max_iterations, limit);
}

SparseSignal SparseSignal::from_dense(std::span<const Complex> dense) {
  SparseSignal s;
  s.length = dense.size();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != Complex{}) {
      s.support.push_back(i);
      s.values.push_back(dense[i]);
    }
  }
  return s;
}

CVector SparseSignal::to_dense() const {
  CVector dense(length);
  for (std::size_t k = 0; k < support.size(); ++k) dense.at(support[k]) = values.at(k);
  return dense;
}

void SparseSignal::validate() const {
  if (support.size() != values.size()) {
    throw InconsistencyError("sparse signal: " + std::to_string(support.size()) +
                             " indices but " + std::to_string(values.size()) + " values");
  }
  std::vector<bool> seen(length, false);
  for (std::size_t k = 0; k < support.size(); ++k) {
    const std::size_t i = support[k];
    if (i >= length) {
      throw InconsistencyError("sparse signal: index " + std::to_string(i + 1) +
                               " outside [1, " + std::to_string(length) + "]");
    }
    if (seen[i]) {
      throw InconsistencyError("sparse signal: duplicate index " + std::to_string(i + 1));
    }
    seen[i] = true;
    if (values[k] == Complex{}) {
      throw InconsistencyError("sparse signal: zero value at index " + std::to_string(i + 1));
    }
  }
}

OmpResult omp_solve(const Dictionary& d, std::span<const Complex> y,
                    const StoppingRule& rule) {
  const std::size_t m = d.num_measurements();
  const std::size_t n = d.num_atoms();
  if (m == 0 || n == 0) throw DimensionError("omp_solve: empty dictionary");
  if (y.size() != m) {
    throw DimensionError("omp_solve: measurement length " + std::to_string(y.size()) +
                         " != " + std::to_string(m));
  }
  if (!all_finite(y)) throw DomainError("omp_solve: non-finite measurement");
  validate(rule, m, n);

  const std::size_t cap = effective_cap(rule, m, n);
  const std::optional<double> threshold = residual_threshold(rule);
  const double allowance = kStopAllowance * norm2(y);
  auto rule_fires = [&](std::size_t iterations, double rnorm) {
    if (threshold) return rnorm <= *threshold + allowance;
    return iterations == std::get<FixedIterations>(rule.criterion).k;
  };

  OmpResult out;
  out.residual.assign(y.begin(), y.end());
  out.residual_norms.push_back(norm2(y));
  CVector coeffs;
  std::vector<bool> selected(n, false);

  out.converged = threshold && rule_fires(0, out.residual_norms.back());
  while (!out.converged && out.support.size() < cap) {
    if (out.residual_norms.back() == 0.0) {
      out.converged = true;
      break;
    }
    const CVector corr = d.correlations(out.residual);
    std::size_t best = n;
    double best_mag = -1.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (selected[t]) continue;
      const double mag = std::abs(corr[t]);
      if (mag > best_mag) {
        best_mag = mag;
        best = t;
      }
    }
    selected[best] = true;
    out.support.push_back(best);

    LstsqResult fit;
    try {
      fit = lstsq(d.submatrix(out.support), y);
    } catch (const SingularityError& e) {
      const std::size_t atom = out.support.at(e.column());
      throw SingularityError("omp_solve: selected atoms are rank deficient at atom " +
                                 std::to_string(atom + 1),
                             atom);
    }
    coeffs = std::move(fit.coeffs);
    out.residual = std::move(fit.residual);
    out.residual_norms.push_back(norm2(out.residual));
    out.converged = rule_fires(out.support.size(), out.residual_norms.back());
  }

  out.coefficients.length = n;
  for (std::size_t k = 0; k < out.support.size(); ++k) {
    if (coeffs[k] == Complex{}) continue;
    out.coefficients.support.push_back(out.support[k]);
    out.coefficients.values.push_back(coeffs[k]);
  }
  return out;
}

SweepIndices sweep_equivalence_check(const Dictionary& d, std::span<const Complex> r) {
  if (norm2(r) == 0.0) throw DegenerateInputError("sweep_equivalence_check: zero residual");
  const CVector corr = d.correlations(r);

  SweepIndices out{0, 0};
  double best_corr = -1.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d.num_atoms(); ++j) {
    const double c = std::abs(corr[j]);
    if (c > best_corr) {
      best_corr = c;
      out.argmax_correlation = j;
    }
    const CVector atom(d.atom(j).begin(), d.atom(j).end());
    const CMatrix single = CMatrix::from_columns(std::span<const CVector>(&atom, 1));
    const double err = std::pow(norm2(lstsq(single, r).residual), 2);
    if (err < best_err) {
      best_err = err;
      out.argmin_error = j;
    }
  }
  return out;
}

Diagnosis diagnose(const Dictionary& d, std::span<const Complex> y_clean,
                   std::span<const Complex> noise, const SparseSignal& truth,
                   const StoppingRule& rule) {
  const std::size_t m = d.num_measurements();
  const std::size_t n = d.num_atoms();
  if (truth.length != n) {
    throw InconsistencyError("diagnose: truth has length " + std::to_string(truth.length) +
                             ", dictionary has " + std::to_string(n) + " atoms");
  }
  truth.validate();
  if (y_clean.size() != m || noise.size() != m) {
    throw DimensionError("diagnose: measurement/noise length does not match m = " +
                         std::to_string(m));
  }
  const CVector psi_x = matvec(d.matrix(), truth.to_dense());
  if (norm2(subtract(y_clean, psi_x)) > 1e-9 * std::max(1.0, norm2(y_clean))) {
    throw InconsistencyError("diagnose: y_clean is not Psi * truth");
  }

  std::vector<bool> correct(n, false);
  for (std::size_t i : truth.support) correct[i] = true;

  Diagnosis out;
  out.result = omp_solve(d, add(y_clean, noise), rule);

  for (std::size_t t = 0; t < out.result.support.size(); ++t) {
    const std::span<const std::size_t> prefix(out.result.support.data(), t);
    const CMatrix selected = t == 0 ? CMatrix(m, 0) : d.submatrix(prefix);
    const CVector s_t = project_off(selected, psi_x);
    const CVector n_t = project_off(selected, noise);
    const CVector cs = d.correlations(s_t);
    const CVector cn = d.correlations(n_t);

    StepDiagnostics step;
    step.step = t + 1;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = std::abs(cs[j]);
      if (correct[j]) {
        step.alpha1 = std::max(step.alpha1, a);
      } else {
        step.alpha2 = std::max(step.alpha2, a);
      }
      step.beta = std::max(step.beta, std::abs(cn[j]));
    }
    step.signal_residual_norm = norm2(s_t);
    step.noise_residual_norm = norm2(n_t);
    step.sufficient_condition_holds = step.alpha1 - step.alpha2 > 2.0 * step.beta;
    step.selected_correct = correct[out.result.support[t]];
    out.steps.push_back(step);
  }
  return out;
}

}  // namespace ompc
