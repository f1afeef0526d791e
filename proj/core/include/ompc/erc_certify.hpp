// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_ERC_CERTIFY_HPP_
#define OMPC_ERC_CERTIFY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "ompc/complex_core.hpp"
#include "ompc/dictionary.hpp"
#include "ompc/omp_solver.hpp"

namespace ompc {

/// Largest k with k < (1 + 1/mu) / 2, or unbounded when mu == 0.
struct SparsityBound {
  std::optional<std::size_t> limit;

  bool unbounded() const noexcept { return !limit.has_value(); }
  bool admits(std::size_t k) const noexcept { return !limit || k <= *limit; }
};

SparsityBound max_recoverable_sparsity(double mu);

/// mu < 1 / (2k - 1), evaluated as (2k - 1) mu < 1.
bool mip_condition(double mu, std::size_t k);

enum class RegimeKind { Noiseless, BoundedNoise, CawgnB1, CawgnB2 };
enum class CawgnVariant { B1, B2 };

struct Regime {
  RegimeKind kind = RegimeKind::Noiseless;
  /// b2 for BoundedNoise, sigma for the CAWGN regimes, 0 otherwise.
  double parameter = 0.0;
};

struct ErcReport {
  double mu = 0.0;
  std::size_t k = 0;
  Regime regime;
  bool mip_condition_holds = false;
  double coefficient_threshold = 0.0;
  double stopping_radius = 0.0;
  double success_probability_lower_bound = 1.0;
  bool certified = false;
  /// Clause that failed when certified == false.
  std::optional<std::string> failed_clause;
};

/// Certified iff k fits under max_recoverable_sparsity(mu(D)).
ErcReport certify_noiseless(const Dictionary& d, std::size_t k);
ErcReport certify_noiseless(double mu, std::size_t k);

/// 2 b2 / (1 - (2k - 1) mu). Throws CertificateInapplicableError when the
/// incoherence condition fails and DomainError when b2 < 0.
double bounded_noise_threshold(double mu, std::size_t k, double b2);

/// Bounded-noise certificate. Coefficients must exceed the threshold strictly;
/// with no magnitudes supplied the report certifies any signal that does.
ErcReport certify_bounded_noise(double mu, std::size_t k, double b2,
                                std::span<const double> magnitudes = {});

/// sigma * sqrt(m + sqrt(2m ln 2m)).
double b1_radius(double sigma, std::size_t m);
/// sigma * sqrt(m + 0.5 sqrt(m ln m)); needs m >= 2.
double b2_radius(double sigma, std::size_t m);
/// 1 - 1 / (2 sqrt(pi ln 2m)), clamped to [0, 1].
double prob_lower_bound_b1(std::size_t m);
/// 1 - sqrt(2 / (pi ln m)), clamped to [0, 1].
double prob_lower_bound_b2(std::size_t m);

/// CAWGN certificate for a known signal: the MIP gate plus |x_i| >= threshold
/// for every nonzero, where threshold = 2 radius / (1 - (2k - 1) mu).
ErcReport certify_cawgn(const Dictionary& d, const SparseSignal& x, double sigma,
                        CawgnVariant variant);
/// Same with mu and m given directly; empty magnitudes certify any signal
/// meeting coefficient_threshold.
ErcReport certify_cawgn(double mu, std::size_t m, std::size_t k, double sigma,
                        CawgnVariant variant, std::span<const double> magnitudes = {});

struct EigenGap {
  double lam_full;
  double lam_deflated;
};

/// lam_full = lambda_min(Psi(S)^H Psi(S)); lam_deflated =
/// lambda_min(Psi(u)^H (I - P_c) Psi(u)) with u = S \ c in the order of S.
/// Requires c to be a proper subset of S.
EigenGap deflation_eigen_gap(const Dictionary& d, std::span<const std::size_t> support,
                          std::span<const std::size_t> selected);

/// min(1, 1 / (lam sqrt(2 pi m))), an upper bound on P(Y > (1 + lam) 2m) for
/// Y ~ chi^2(2m). Throws DomainError when lam <= 0.
double chi_square_tail_bound(std::size_t m, double lam);

const char* to_string(RegimeKind kind);

}  // namespace ompc

#endif  // OMPC_ERC_CERTIFY_HPP_
