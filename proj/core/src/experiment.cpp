// SPDX-License-Identifier: Apache-2.0

#include "ompc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>

#include "ompc/erc_certify.hpp"
#include "ompc/errors.hpp"
#include "ompc/io.hpp"
#include "ompc/noise.hpp"

namespace ompc {

void ExperimentConfig::validate() const {
  scene.validate();
  if (k_values.empty()) throw DomainError("experiment: k_values is empty");
  if (num_trials < 1) throw DomainError("experiment: num_trials must be >= 1");
  const std::size_t pool =
      placement == Placement::Candidates ? candidate_ranges.size() : scene.range_grid.size();
  const std::size_t cap = std::min(scene.num_freqs, scene.range_grid.size());
  for (std::size_t k : k_values) {
    if (k < 1 || k > scene.range_grid.size()) {
      throw DomainError("experiment: k = " + std::to_string(k) + " outside [1, " +
                        std::to_string(scene.range_grid.size()) + "]");
    }
    if (k > pool) {
      throw DomainError("experiment: k = " + std::to_string(k) + " exceeds the " +
                        std::to_string(pool) + " available locations");
    }
    if (k > cap) {
      throw DomainError("experiment: k = " + std::to_string(k) + " exceeds min(m, n)");
    }
  }
  for (double r : candidate_ranges) (void)scene.grid_index(r);
  if (std::isnan(snr_db)) throw DomainError("experiment: snr_db is NaN");
  if (stopping.kind != SolverSpec::Kind::FixedK && !(stopping.value >= 0.0)) {
    throw DomainError("experiment: stopping value must be >= 0");
  }
}

namespace {

bool noiseless(double snr_db) { return std::isinf(snr_db) && snr_db > 0.0; }

StoppingRule make_rule(const SolverSpec& spec, std::size_t k, double sigma, std::size_t m) {
  StoppingRule rule;
  rule.max_iterations = spec.max_iterations;
  switch (spec.kind) {
    case SolverSpec::Kind::FixedK:
      rule.criterion = FixedIterations{k};
      break;
    case SolverSpec::Kind::Residual:
      rule.criterion = ResidualThreshold{spec.value};
      break;
    case SolverSpec::Kind::NoiseBound:
      rule.criterion = NoiseBound{spec.value};
      break;
    case SolverSpec::Kind::CawgnB1:
      rule.criterion = NoiseBound{sigma > 0.0 ? b1_radius(sigma, m) : 0.0};
      break;
    case SolverSpec::Kind::CawgnB2:
      rule.criterion = NoiseBound{sigma > 0.0 ? b2_radius(sigma, m) : 0.0};
      break;
  }
  return rule;
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, const Dictionary& dict, double mu,
                      std::size_t k, std::size_t trial_id) {
  RandomStream rng(trial_seed(cfg.base_seed, k, trial_id));

  std::vector<double> pool;
  if (cfg.placement == Placement::Candidates) {
    pool = cfg.candidate_ranges;
  } else {
    pool = cfg.scene.range_grid;
  }
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);

  GtdScene scene = cfg.scene;
  scene.scatterers.clear();
  for (std::size_t i = 0; i < k; ++i) {
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    scene.scatterers.push_back({pool[i], std::polar(1.0, phase)});
  }
  const std::uint64_t noise_seed = rng.next_u64();

  const SparseSignal truth = planted_signal(scene, /*normalized=*/true);
  const CVector clean = synthesize_measurement(scene);
  const NoisyMeasurement measured = add_cawgn(clean, cfg.snr_db, noise_seed);
  const std::size_t m = dict.num_measurements();

  const OmpResult result =
      omp_solve(dict, measured.noisy, make_rule(cfg.stopping, k, measured.sigma, m));

  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.k = k;
  rec.planted_support = truth.support;
  rec.recovered_support = result.support;
  std::sort(rec.recovered_support.begin(), rec.recovered_support.end());
  rec.support_exact = rec.recovered_support == rec.planted_support;
  rec.coeff_error_l2 = norm2(subtract(result.coefficients.to_dense(), truth.to_dense()));
  rec.residual_final = result.residual_norms.back();
  rec.noise_norm = norm2(measured.noise);

  std::vector<double> mags;
  for (const Complex& v : truth.values) mags.push_back(std::abs(v));
  if (noiseless(cfg.snr_db)) {
    rec.certified_noiseless = certify_noiseless(mu, truth.sparsity()).certified;
  } else {
    rec.cawgn_radius = b1_radius(measured.sigma, m);
    rec.certified_cawgn =
        certify_cawgn(mu, m, truth.sparsity(), measured.sigma, CawgnVariant::B1, mags).certified;
  }
  return rec;
}

ExperimentResult run_monte_carlo(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dictionary dict = build_gtd_dictionary(cfg.scene);
  ExperimentResult out;
  out.mu = mutual_incoherence(dict).mu;

  std::vector<std::size_t> ks = cfg.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  const std::size_t total = ks.size() * cfg.num_trials;
  out.records.resize(total);

  unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, 64u);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    try {
      for (std::size_t idx = next++; idx < total && !failed; idx = next++) {
        const std::size_t k = ks[idx / cfg.num_trials];
        out.records[idx] = run_trial(cfg, dict, out.mu, k, idx % cfg.num_trials);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  out.summaries = summarize(out.records);
  return out;
}

double nearest_rank_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

namespace {

std::map<std::size_t, std::vector<const TrialRecord*>> group_by_k(
    std::span<const TrialRecord> records) {
  std::map<std::size_t, std::vector<const TrialRecord*>> groups;
  for (const TrialRecord& r : records) groups[r.k].push_back(&r);
  return groups;
}

std::vector<double> sorted_errors(const std::vector<const TrialRecord*>& group) {
  std::vector<double> e;
  e.reserve(group.size());
  for (const TrialRecord* r : group) e.push_back(r->coeff_error_l2);
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

std::vector<KSummary> summarize(std::span<const TrialRecord> records) {
  std::vector<KSummary> out;
  for (const auto& [k, group] : group_by_k(records)) {
    KSummary s;
    s.k = k;
    s.num_trials = group.size();
    double successes = 0.0;
    double err = 0.0;
    double res = 0.0;
    for (const TrialRecord* r : group) {
      successes += r->support_exact ? 1.0 : 0.0;
      err += r->coeff_error_l2;
      res += r->residual_final;
    }
    const auto n = static_cast<double>(group.size());
    s.success_rate = successes / n;
    s.mean_error = err / n;
    s.mean_residual = res / n;
    s.median_error = nearest_rank_quantile(sorted_errors(group), 0.5);
    out.push_back(s);
  }
  return out;
}

CdeExport cde_export(std::span<const TrialRecord> records) {
  if (records.empty()) throw DomainError("cde_export: no trial records");
  CdeExport out;
  for (const auto& [k, group] : group_by_k(records)) {
    const std::vector<double> e = sorted_errors(group);
    const auto n = static_cast<double>(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      out.rows.push_back({k, e[i], static_cast<double>(i + 1) / n});
    out.quantiles.push_back({k, nearest_rank_quantile(e, 0.5), nearest_rank_quantile(e, 0.9),
                             nearest_rank_quantile(e, 0.99)});
  }
  return out;
}

namespace {

std::string join_support(const std::vector<std::size_t>& support) {
  std::string s;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(support[i] + 1);
  }
  return s;
}

}  // namespace

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << "trial_id,k,planted_support,recovered_support,support_exact,coeff_error_l2,"
         "residual_final\n";
  for (const TrialRecord& r : records) {
    out << r.trial_id << ',' << r.k << ',' << join_support(r.planted_support) << ','
        << join_support(r.recovered_support) << ',' << (r.support_exact ? 1 : 0) << ','
        << format_double(r.coeff_error_l2) << ',' << format_double(r.residual_final) << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const KSummary> summaries) {
  out << "k,num_trials,success_rate,mean_error,median_error\n";
  for (const KSummary& s : summaries) {
    out << s.k << ',' << s.num_trials << ',' << format_double(s.success_rate) << ','
        << format_double(s.mean_error) << ',' << format_double(s.median_error) << '\n';
  }
}

void write_cde_csv(std::ostream& out, std::span<const CdeRow> rows) {
  out << "k,error_value,cum_fraction\n";
  for (const CdeRow& r : rows) {
    out << r.k << ',' << format_double(r.error_value) << ',' << format_double(r.cum_fraction)
        << '\n';
  }
}

void write_experiment_outputs(const ExperimentResult& result,
                              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

  auto write = [&](const char* name, auto&& body) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + (dir / name).string() + " for writing");
    body(f);
    f.flush();
    if (!f) throw Error("write failed for " + (dir / name).string());
  };
  write("trials.csv", [&](std::ostream& f) { write_trials_csv(f, result.records); });
  write("summary.csv", [&](std::ostream& f) { write_summary_csv(f, result.summaries); });
  write("cde.csv", [&](std::ostream& f) { write_cde_csv(f, cde_export(result.records).rows); });
}

}  // namespace ompc
