// SPDX-License-Identifier: Apache-2.0
//
// ompc: command-line front end for OMP solves, coherence analysis, recovery
// certificates and the GTD Monte Carlo harness.
//
// Exit codes: 0 success, 2 usage error, 3 data error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ompc/dictionary.hpp"
#include "ompc/erc_certify.hpp"
#include "ompc/errors.hpp"
#include "ompc/experiment.hpp"
#include "ompc/gtd_model.hpp"
#include "ompc/io.hpp"
#include "ompc/omp_solver.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ompc::Error("cannot open " + path + " for writing");
  return f;
}

int run_mu(const std::string& matrix_path) {
  const ompc::Dictionary d = ompc::normalize_columns(ompc::read_complex_matrix(matrix_path));
  const ompc::CoherenceReport r = ompc::mutual_incoherence(d);
  std::cout << "mu " << ompc::format_double(r.mu) << '\n'
            << "argmax_pair " << r.argmax_pair.first + 1 << ' ' << r.argmax_pair.second + 1
            << '\n';
  return 0;
}

int run_coherence(const std::string& scene_path, const std::string& out_path,
                  const std::string& slice_path, std::optional<std::size_t> reference) {
  const ompc::SceneConfig cfg = ompc::parse_scene_config(ompc::read_text_file(scene_path));
  const ompc::Dictionary d = ompc::build_gtd_dictionary(cfg.scene);
  const std::size_t ref = reference ? *reference : d.num_atoms() / 2 + 1;
  if (ref < 1 || ref > d.num_atoms()) throw UsageError("--ref outside [1, n]");
  const ompc::CoherenceSurface s = ompc::coherence_surface(d, ref - 1);
  {
    std::ofstream f = open_output(out_path);
    ompc::write_coherence_csv(f, s.surface);
  }
  if (!slice_path.empty()) {
    std::ofstream f = open_output(slice_path);
    ompc::write_coherence_csv(f, s.slice);
  }
  return 0;
}

int run_solve(const std::string& matrix_path, const std::string& y_path,
              std::optional<double> eps, std::optional<double> noise_bound,
              std::optional<std::size_t> iters, std::size_t max_iters,
              const std::string& out_path) {
  const int chosen = int(eps.has_value()) + int(noise_bound.has_value()) + int(iters.has_value());
  if (chosen > 1) throw UsageError("choose at most one of --eps, --noise-bound, --iters");

  ompc::StoppingRule rule;
  rule.max_iterations = max_iters;
  if (noise_bound) {
    rule.criterion = ompc::NoiseBound{*noise_bound};
  } else if (iters) {
    rule.criterion = ompc::FixedIterations{*iters};
  } else {
    rule.criterion = ompc::ResidualThreshold{eps.value_or(0.0)};
  }

  const ompc::Dictionary d = ompc::normalize_columns(ompc::read_complex_matrix(matrix_path));
  const ompc::CVector y = ompc::read_complex_vector(y_path);
  const ompc::OmpResult result = ompc::omp_solve(d, y, rule);
  const std::string text = ompc::to_json(result) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream f = open_output(out_path);
    f << text;
  }
  return 0;
}

int run_certify(const std::string& matrix_path, std::optional<std::size_t> k,
                const std::string& x_path, std::optional<double> sigma,
                const std::string& variant, std::optional<double> noise_bound) {
  if (k.has_value() == !x_path.empty()) throw UsageError("give exactly one of --k, --x");
  if (sigma && noise_bound) throw UsageError("--sigma and --noise-bound are exclusive");

  const ompc::Dictionary d = ompc::normalize_columns(ompc::read_complex_matrix(matrix_path));
  const double mu = ompc::mutual_incoherence(d).mu;

  std::vector<double> mags;
  std::size_t sparsity = k.value_or(0);
  if (!x_path.empty()) {
    const ompc::CVector x = ompc::read_complex_vector(x_path);
    if (x.size() != d.num_atoms()) {
      throw ompc::InconsistencyError("--x has " + std::to_string(x.size()) +
                                     " entries, dictionary has " +
                                     std::to_string(d.num_atoms()) + " atoms");
    }
    const ompc::SparseSignal s = ompc::SparseSignal::from_dense(x);
    for (const ompc::Complex& v : s.values) mags.push_back(std::abs(v));
    sparsity = s.sparsity();
  }
  if (sparsity < 1 || sparsity > d.num_atoms()) throw UsageError("sparsity outside [1, n]");

  ompc::ErcReport report;
  if (sigma) {
    ompc::CawgnVariant v;
    if (variant == "b1") {
      v = ompc::CawgnVariant::B1;
    } else if (variant == "b2") {
      v = ompc::CawgnVariant::B2;
    } else {
      throw UsageError("--variant must be b1 or b2");
    }
    report = ompc::certify_cawgn(mu, d.num_measurements(), sparsity, *sigma, v, mags);
  } else if (noise_bound) {
    report = ompc::certify_bounded_noise(mu, sparsity, *noise_bound, mags);
  } else {
    report = ompc::certify_noiseless(mu, sparsity);
  }
  std::cout << ompc::to_json(report) << '\n';
  return 0;
}

int run_gtd_sim(const std::string& config_path, const std::string& out_dir,
                std::optional<unsigned> threads) {
  ompc::ExperimentConfig cfg = ompc::parse_experiment_config(ompc::read_text_file(config_path));
  if (threads) cfg.threads = *threads;
  const ompc::ExperimentResult result = ompc::run_monte_carlo(cfg);
  ompc::write_experiment_outputs(result, out_dir);

  std::cout << "mu " << ompc::format_double(result.mu) << '\n';
  std::cout << "k,num_trials,success_rate,median_error,q90_error,q99_error\n";
  const ompc::CdeExport cde = ompc::cde_export(result.records);
  for (std::size_t i = 0; i < result.summaries.size(); ++i) {
    const ompc::KSummary& s = result.summaries[i];
    const ompc::CdeQuantiles& q = cde.quantiles[i];
    std::cout << s.k << ',' << s.num_trials << ',' << ompc::format_double(s.success_rate) << ','
              << ompc::format_double(q.q50) << ',' << ompc::format_double(q.q90) << ','
              << ompc::format_double(q.q99) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex orthogonal matching pursuit toolkit"};
  app.require_subcommand(1);

  std::string matrix_path;
  std::string out_path;

  auto* mu_cmd = app.add_subcommand("mu", "Mutual incoherence of a complex matrix file");
  mu_cmd->add_option("--matrix", matrix_path, "Complex matrix file")->required();

  std::string scene_path;
  std::string slice_path;
  std::optional<std::size_t> reference;
  auto* coh_cmd = app.add_subcommand("coherence", "Coherence surface of a GTD scene dictionary");
  coh_cmd->add_option("--scene", scene_path, "Scene config JSON")->required();
  coh_cmd->add_option("--out", out_path, "Surface CSV (all atom pairs)")->required();
  coh_cmd->add_option("--slice", slice_path, "Optional CSV for one reference atom");
  coh_cmd->add_option("--ref", reference, "1-based reference atom (default: middle atom)");

  std::string y_path;
  std::optional<double> eps;
  std::optional<double> noise_bound;
  std::optional<std::size_t> iters;
  std::size_t max_iters = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Run OMP and write the result as JSON");
  solve_cmd->add_option("--matrix", matrix_path, "Complex matrix file")->required();
  solve_cmd->add_option("--y", y_path, "Complex measurement vector file")->required();
  solve_cmd->add_option("--eps", eps, "Stop when ||r||_2 <= eps (default 0)");
  solve_cmd->add_option("--noise-bound", noise_bound, "Stop when ||r||_2 <= b2");
  solve_cmd->add_option("--iters", iters, "Stop after exactly K selections");
  solve_cmd->add_option("--max-iters", max_iters, "Hard iteration cap (default min(m, n))");
  solve_cmd->add_option("--out", out_path, "Output JSON file ('-' for stdout)")->required();

  std::optional<std::size_t> k;
  std::string x_path;
  std::optional<double> sigma;
  std::string variant = "b1";
  std::optional<double> cert_noise_bound;
  auto* cert_cmd = app.add_subcommand("certify", "Exact-recovery certificate as JSON");
  cert_cmd->add_option("--matrix", matrix_path, "Complex matrix file")->required();
  cert_cmd->add_option("--k", k, "Sparsity");
  cert_cmd->add_option("--x", x_path, "Complex coefficient vector file (length n)");
  cert_cmd->add_option("--sigma", sigma, "CAWGN standard deviation");
  cert_cmd->add_option("--variant", variant, "CAWGN ball: b1 or b2");
  cert_cmd->add_option("--noise-bound", cert_noise_bound, "l2 noise bound b2");

  std::string config_path;
  std::optional<unsigned> threads;
  auto* sim_cmd = app.add_subcommand("gtd-sim", "GTD Monte Carlo experiment");
  sim_cmd->add_option("--config", config_path, "Experiment config JSON")->required();
  sim_cmd->add_option("--out", out_path, "Output directory")->required();
  sim_cmd->add_option("--threads", threads, "Worker threads (default: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*mu_cmd) return run_mu(matrix_path);
    if (*coh_cmd) return run_coherence(scene_path, out_path, slice_path, reference);
    if (*solve_cmd)
      return run_solve(matrix_path, y_path, eps, noise_bound, iters, max_iters, out_path);
    if (*cert_cmd) return run_certify(matrix_path, k, x_path, sigma, variant, cert_noise_bound);
    if (*sim_cmd) return run_gtd_sim(config_path, out_path, threads);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ompc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
