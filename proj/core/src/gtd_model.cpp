// SPDX-License-Identifier: Apache-2.0

#include "ompc/gtd_model.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ompc/errors.hpp"
#include "ompc/noise.hpp"

namespace ompc {

namespace {

constexpr std::array<double, 5> kReferenceRanges = {0.3, 0.85, 2.25, 4.0, 4.75};
constexpr double kGridMatchTolerance = 1e-12;

}  // namespace

std::vector<double> GtdScene::frequencies() const {
  std::vector<double> f(num_freqs);
  for (std::size_t l = 0; l < num_freqs; ++l) f[l] = f0_hz + static_cast<double>(l) * df_hz;
  return f;
}

void GtdScene::validate() const {
  if (num_freqs < 1) throw DomainError("gtd scene: need at least one frequency");
  if (num_freqs > 1 && !(df_hz > 0.0)) {
    throw DomainError("gtd scene: frequency step must be positive");
  }
  if (!(speed_mps > 0.0)) throw DomainError("gtd scene: propagation speed must be positive");
  if (range_grid.size() < 2) throw DomainError("gtd scene: range grid needs >= 2 points");
  for (std::size_t i = 1; i < range_grid.size(); ++i) {
    if (!(range_grid[i] > range_grid[i - 1])) {
      throw DomainError("gtd scene: range grid not strictly increasing at index " +
                        std::to_string(i));
    }
  }
  for (const Scatterer& s : scatterers) (void)grid_index(s.range_m);
}

std::size_t GtdScene::grid_index(double range_m) const {
  for (std::size_t i = 0; i < range_grid.size(); ++i) {
    if (std::abs(range_grid[i] - range_m) <= kGridMatchTolerance) return i;
  }
  throw InconsistencyError("gtd scene: scatterer range " + std::to_string(range_m) +
                           " m is not on the range grid");
}

std::vector<double> make_range_grid(double min_m, double step_m, double max_m) {
  if (!(step_m > 0.0) || !(max_m >= min_m)) {
    throw DomainError("range grid: need step > 0 and max >= min");
  }
  const auto count = static_cast<std::size_t>(std::llround((max_m - min_m) / step_m)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = min_m + static_cast<double>(i) * step_m;
  return grid;
}

GtdScene reference_preset() {
  GtdScene scene;
  scene.f0_hz = 1e9;
  scene.df_hz = 10e6;
  scene.num_freqs = 30;
  scene.speed_mps = 3e8;
  scene.range_grid = make_range_grid(0.0, 0.05, 5.0);
  return scene;
}

std::span<const double> reference_scatterer_ranges() { return kReferenceRanges; }

CMatrix build_raw_gtd_matrix(const GtdScene& scene) {
  scene.validate();
  const std::vector<double> f = scene.frequencies();
  CMatrix raw(scene.num_freqs, scene.range_grid.size());
  for (std::size_t p = 0; p < scene.range_grid.size(); ++p) {
    const double tau = 2.0 * scene.range_grid[p] / scene.speed_mps;
    for (std::size_t l = 0; l < f.size(); ++l)
      raw(l, p) = std::polar(1.0, -2.0 * std::numbers::pi * f[l] * tau);
  }
  return raw;
}

Dictionary build_gtd_dictionary(const GtdScene& scene) {
  return normalize_columns(build_raw_gtd_matrix(scene), scene.range_grid);
}

CVector synthesize_measurement(const GtdScene& scene) {
  scene.validate();
  const std::vector<double> f = scene.frequencies();
  CVector y(scene.num_freqs);
  for (std::size_t l = 0; l < f.size(); ++l) {
    Complex acc{};
    for (const Scatterer& s : scene.scatterers)
      acc += s.amplitude *
             std::polar(1.0, -4.0 * std::numbers::pi * f[l] * s.range_m / scene.speed_mps);
    y[l] = acc;
  }
  return y;
}

SparseSignal planted_signal(const GtdScene& scene, bool normalized) {
  scene.validate();
  const double scale = normalized ? std::sqrt(static_cast<double>(scene.num_freqs)) : 1.0;
  CVector dense(scene.range_grid.size());
  for (const Scatterer& s : scene.scatterers) dense[scene.grid_index(s.range_m)] += scale * s.amplitude;
  return SparseSignal::from_dense(dense);
}

NoisyMeasurement add_cawgn(std::span<const Complex> y, double snr_db, std::uint64_t seed) {
  NoisyMeasurement out;
  out.noisy.assign(y.begin(), y.end());
  out.noise.assign(y.size(), Complex{});
  if (std::isinf(snr_db) && snr_db > 0.0) return out;
  if (std::isnan(snr_db) || std::isinf(snr_db)) throw DomainError("add_cawgn: invalid SNR");

  const double power = std::pow(norm2(y), 2);
  if (power == 0.0) throw DegenerateInputError("add_cawgn: zero signal at finite SNR");
  out.sigma = std::sqrt(power / (static_cast<double>(y.size()) * std::pow(10.0, snr_db / 10.0)));

  RandomStream rng(seed);
  out.noise = cawgn(y.size(), out.sigma, rng);
  out.noisy = add(y, out.noise);
  return out;
}

}  // namespace ompc
