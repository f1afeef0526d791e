// SPDX-License-Identifier: Apache-2.0

#include "ompc/erc_certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ompc/errors.hpp"

namespace ompc {

namespace {

void require_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw DomainError("mutual incoherence " + std::to_string(mu) + " outside [0, 1]");
  }
}

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("sigma must be positive and finite, got " + std::to_string(sigma));
  }
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

std::vector<double> magnitudes_of(const SparseSignal& x) {
  std::vector<double> mags;
  mags.reserve(x.values.size());
  for (const Complex& v : x.values) mags.push_back(std::abs(v));
  return mags;
}

}  // namespace

SparsityBound max_recoverable_sparsity(double mu) {
  require_mu(mu);
  if (mu == 0.0) return {};
  // k < (1 + 1/mu) / 2  <=>  (2k - 1) mu < 1; search upward from k = 1.
  std::size_t k = 0;
  while (mip_condition(mu, k + 1)) ++k;
  return {k};
}

bool mip_condition(double mu, std::size_t k) {
  if (k == 0) return true;
  return (2.0 * static_cast<double>(k) - 1.0) * mu < 1.0;
}

ErcReport certify_noiseless(double mu, std::size_t k) {
  require_mu(mu);
  if (k == 0) throw DomainError("certify_noiseless: k must be >= 1");
  ErcReport report;
  report.mu = mu;
  report.k = k;
  report.regime = {RegimeKind::Noiseless, 0.0};
  report.mip_condition_holds = mip_condition(mu, k);
  report.coefficient_threshold = 0.0;
  report.stopping_radius = 0.0;
  report.success_probability_lower_bound = 1.0;
  report.certified = max_recoverable_sparsity(mu).admits(k);
  if (!report.certified) report.failed_clause = "mip: mu >= 1/(2k-1)";
  return report;
}

ErcReport certify_noiseless(const Dictionary& d, std::size_t k) {
  if (k > d.num_atoms()) {
    throw DomainError("certify_noiseless: k = " + std::to_string(k) + " exceeds n = " +
                      std::to_string(d.num_atoms()));
  }
  return certify_noiseless(mutual_incoherence(d).mu, k);
}

double bounded_noise_threshold(double mu, std::size_t k, double b2) {
  require_mu(mu);
  if (!(b2 >= 0.0)) throw DomainError("noise bound must be >= 0");
  if (k == 0) throw DomainError("bounded_noise_threshold: k must be >= 1");
  if (!mip_condition(mu, k)) {
    throw CertificateInapplicableError("bounded_noise_threshold: mu = " + std::to_string(mu) +
                                       " is not below 1/(2k-1) for k = " + std::to_string(k));
  }
  return 2.0 * b2 / (1.0 - (2.0 * static_cast<double>(k) - 1.0) * mu);
}

ErcReport certify_bounded_noise(double mu, std::size_t k, double b2,
                                std::span<const double> magnitudes) {
  require_mu(mu);
  if (k == 0) throw DomainError("certify_bounded_noise: k must be >= 1");
  ErcReport report;
  report.mu = mu;
  report.k = k;
  report.regime = {RegimeKind::BoundedNoise, b2};
  report.stopping_radius = b2;
  report.success_probability_lower_bound = 1.0;
  report.mip_condition_holds = mip_condition(mu, k);
  if (!report.mip_condition_holds) {
    report.coefficient_threshold = std::numeric_limits<double>::infinity();
    report.failed_clause = "mip: mu >= 1/(2k-1)";
    return report;
  }
  report.coefficient_threshold = bounded_noise_threshold(mu, k, b2);
  // Strict inequality for the deterministic bounded-noise statement.
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (!(magnitudes[i] > report.coefficient_threshold)) {
      report.failed_clause = "coefficient: |x_i| <= threshold for nonzero #" +
                             std::to_string(i + 1);
      return report;
    }
  }
  report.certified = true;
  return report;
}

double b1_radius(double sigma, std::size_t m) {
  require_sigma(sigma);
  if (m < 1) throw DomainError("b1_radius: m must be >= 1");
  const double md = static_cast<double>(m);
  return sigma * std::sqrt(md + std::sqrt(2.0 * md * std::log(2.0 * md)));
}

double b2_radius(double sigma, std::size_t m) {
  require_sigma(sigma);
  if (m < 2) throw DomainError("b2_radius: m must be >= 2");
  const double md = static_cast<double>(m);
  return sigma * std::sqrt(md + 0.5 * std::sqrt(md * std::log(md)));
}

double prob_lower_bound_b1(std::size_t m) {
  if (m < 1) throw DomainError("prob_lower_bound_b1: m must be >= 1");
  const double md = static_cast<double>(m);
  return clamp01(1.0 - 1.0 / (2.0 * std::sqrt(std::numbers::pi * std::log(2.0 * md))));
}

double prob_lower_bound_b2(std::size_t m) {
  if (m < 2) throw DomainError("prob_lower_bound_b2: m must be >= 2");
  const double md = static_cast<double>(m);
  return clamp01(1.0 - std::sqrt(2.0 / (std::numbers::pi * std::log(md))));
}

ErcReport certify_cawgn(double mu, std::size_t m, std::size_t k, double sigma,
                        CawgnVariant variant, std::span<const double> magnitudes) {
  require_mu(mu);
  if (k == 0) throw DomainError("certify_cawgn: signal has empty support");
  const bool b1 = variant == CawgnVariant::B1;

  ErcReport report;
  report.mu = mu;
  report.k = k;
  report.regime = {b1 ? RegimeKind::CawgnB1 : RegimeKind::CawgnB2, sigma};
  report.stopping_radius = b1 ? b1_radius(sigma, m) : b2_radius(sigma, m);
  report.success_probability_lower_bound =
      b1 ? prob_lower_bound_b1(m) : prob_lower_bound_b2(m);
  report.mip_condition_holds = mip_condition(mu, k);
  if (!report.mip_condition_holds) {
    report.coefficient_threshold = std::numeric_limits<double>::infinity();
    report.failed_clause = "mip: mu >= 1/(2k-1)";
    return report;
  }
  report.coefficient_threshold =
      2.0 * report.stopping_radius / (1.0 - (2.0 * static_cast<double>(k) - 1.0) * mu);
  // Non-strict inequality, as in the Gaussian-noise statements.
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (!(magnitudes[i] >= report.coefficient_threshold)) {
      report.failed_clause = "coefficient: |x_i| < threshold for nonzero #" +
                             std::to_string(i + 1);
      return report;
    }
  }
  report.certified = true;
  return report;
}

ErcReport certify_cawgn(const Dictionary& d, const SparseSignal& x, double sigma,
                        CawgnVariant variant) {
  if (x.length != d.num_atoms()) {
    throw InconsistencyError("certify_cawgn: signal length " + std::to_string(x.length) +
                             " != " + std::to_string(d.num_atoms()) + " atoms");
  }
  x.validate();
  const std::vector<double> mags = magnitudes_of(x);
  return certify_cawgn(mutual_incoherence(d).mu, d.num_measurements(), x.sparsity(),
                       sigma, variant, mags);
}

EigenGap deflation_eigen_gap(const Dictionary& d, std::span<const std::size_t> support,
                          std::span<const std::size_t> selected) {
  const std::size_t n = d.num_atoms();
  std::vector<bool> in_support(n, false);
  for (std::size_t i : support) {
    if (i >= n || in_support[i]) throw DomainError("deflation_eigen_gap: invalid support S");
    in_support[i] = true;
  }
  std::vector<bool> in_selected(n, false);
  for (std::size_t i : selected) {
    if (i >= n || !in_support[i] || in_selected[i]) {
      throw DomainError("deflation_eigen_gap: selected set is not a subset of S");
    }
    in_selected[i] = true;
  }
  if (selected.size() >= support.size()) {
    throw DomainError("deflation_eigen_gap: selected set must be a proper subset of S");
  }

  const CMatrix psi_s = d.submatrix(support);
  // Surfaces SingularityError for a rank-deficient Psi(S).
  (void)lstsq(psi_s, CVector(d.num_measurements()));

  std::vector<std::size_t> remaining;
  for (std::size_t i : support)
    if (!in_selected[i]) remaining.push_back(i);

  const CMatrix psi_c = selected.empty() ? CMatrix(d.num_measurements(), 0)
                                         : d.submatrix(selected);
  CMatrix deflated(d.num_measurements(), remaining.size());
  for (std::size_t c = 0; c < remaining.size(); ++c)
    deflated.set_column(c, project_off(psi_c, d.atom(remaining[c])));

  const CMatrix psi_u = d.submatrix(remaining);
  EigenGap gap;
  gap.lam_full = min_eigen_hermitian(matmul(psi_s.adjoint(), psi_s));
  gap.lam_deflated = min_eigen_hermitian(matmul(psi_u.adjoint(), deflated));
  return gap;
}

double chi_square_tail_bound(std::size_t m, double lam) {
  if (!(lam > 0.0)) throw DomainError("chi_square_tail_bound: lambda must be > 0");
  if (m < 1) throw DomainError("chi_square_tail_bound: m must be >= 1");
  const double md = static_cast<double>(m);
  return std::min(1.0, 1.0 / (lam * std::sqrt(2.0 * std::numbers::pi * md)));
}

const char* to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::Noiseless:
      return "Noiseless";
    case RegimeKind::BoundedNoise:
      return "BoundedNoise";
    case RegimeKind::CawgnB1:
      return "CawgnB1";
    case RegimeKind::CawgnB2:
      return "CawgnB2";
  }
  return "Unknown";
}

}  // namespace ompc
