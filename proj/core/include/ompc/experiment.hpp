// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_EXPERIMENT_HPP_
#define OMPC_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "ompc/gtd_model.hpp"

namespace ompc {

/// How each trial's solver stops.
struct SolverSpec {
  enum class Kind {
    FixedK,      ///< FixedIterations(k) with the trial's k
    Residual,    ///< ResidualThreshold(value)
    NoiseBound,  ///< NoiseBound(value)
    CawgnB1,     ///< NoiseBound(b1_radius(sigma, m)) with the trial's sigma
    CawgnB2,     ///< NoiseBound(b2_radius(sigma, m))
  };
  Kind kind = Kind::FixedK;
  double value = 0.0;
  std::size_t max_iterations = 0;
};

enum class Placement {
  Candidates,   ///< k distinct ranges out of candidate_ranges
  GridUniform,  ///< k distinct grid points
};

struct ExperimentConfig {
  GtdScene scene = reference_preset();
  std::vector<std::size_t> k_values{1, 2, 3, 4, 5};
  std::size_t num_trials = 1000;
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t base_seed = 0;
  SolverSpec stopping;
  Placement placement = Placement::Candidates;
  std::vector<double> candidate_ranges{0.3, 0.85, 2.25, 4.0, 4.75};
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Throws DomainError on an invalid scene, empty or out-of-range k values,
  /// zero trials, or k above the number of candidate locations.
  void validate() const;
};

struct TrialRecord {
  std::size_t trial_id = 0;
  std::size_t k = 0;
  /// Ascending grid indices.
  std::vector<std::size_t> planted_support;
  /// Ascending grid indices.
  std::vector<std::size_t> recovered_support;
  bool support_exact = false;
  /// ||x_hat - x||_2 over all atoms, normalized-dictionary units.
  double coeff_error_l2 = 0.0;
  double residual_final = 0.0;
  bool certified_noiseless = false;
  bool certified_cawgn = false;
  double noise_norm = 0.0;
  /// B1 radius of the trial's noise level (0 when noiseless).
  double cawgn_radius = 0.0;
};

struct KSummary {
  std::size_t k = 0;
  std::size_t num_trials = 0;
  double success_rate = 0.0;
  double mean_error = 0.0;
  double median_error = 0.0;
  double mean_residual = 0.0;
};

struct ExperimentResult {
  /// Sorted by (k, trial_id).
  std::vector<TrialRecord> records;
  std::vector<KSummary> summaries;
  double mu = 0.0;
};

/// Runs every (k, trial) pair. Trial t at sparsity k draws from
/// RandomStream(trial_seed(base_seed, k, t)) in this order:
///   1. k locations by partial Fisher-Yates over the candidate list (or the
///      grid): position i swaps with i + below(count - i);
///   2. one phase 2 pi uniform() per chosen location, amplitude exp(j phase);
///   3. one next_u64() used as the add_cawgn seed.
/// Trials are independent and may run on several threads; results do not
/// depend on the thread count.
ExperimentResult run_monte_carlo(const ExperimentConfig& cfg);

/// Runs a single trial in isolation.
TrialRecord run_trial(const ExperimentConfig& cfg, const Dictionary& dict, double mu,
                      std::size_t k, std::size_t trial_id);

std::vector<KSummary> summarize(std::span<const TrialRecord> records);

/// Nearest-rank quantile of an ascending sample: sorted[ceil(q N) - 1].
double nearest_rank_quantile(std::span<const double> sorted, double q);

struct CdeRow {
  std::size_t k;
  double error_value;
  double cum_fraction;
};

struct CdeQuantiles {
  std::size_t k;
  double q50;
  double q90;
  double q99;
};

struct CdeExport {
  std::vector<CdeRow> rows;
  std::vector<CdeQuantiles> quantiles;
};

/// Empirical CDF of coeff_error_l2 per k: the i-th smallest of N errors gets
/// cumulative fraction i / N. Throws DomainError on empty input.
CdeExport cde_export(std::span<const TrialRecord> records);

/// trial_id,k,planted_support,recovered_support,support_exact,coeff_error_l2,residual_final
/// Supports are written as ';'-separated 1-based atom indices.
void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records);
/// k,num_trials,success_rate,mean_error,median_error
void write_summary_csv(std::ostream& out, std::span<const KSummary> summaries);
/// k,error_value,cum_fraction
void write_cde_csv(std::ostream& out, std::span<const CdeRow> rows);

/// Writes trials.csv, summary.csv and cde.csv into `dir`, creating it.
void write_experiment_outputs(const ExperimentResult& result,
                              const std::filesystem::path& dir);

}  // namespace ompc

#endif  // OMPC_EXPERIMENT_HPP_
