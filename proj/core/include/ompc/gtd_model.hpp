// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_GTD_MODEL_HPP_
#define OMPC_GTD_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ompc/complex_core.hpp"
#include "ompc/dictionary.hpp"
#include "ompc/omp_solver.hpp"

namespace ompc {

struct Scatterer {
  double range_m = 0.0;
  Complex amplitude{1.0, 0.0};
};

/// Stepped-frequency point-scatterer scene. Atom p is the echo of a point at
/// range_grid[p]; its delay is 2 r / s.
struct GtdScene {
  double f0_hz = 0.0;
  double df_hz = 0.0;
  std::size_t num_freqs = 0;
  double speed_mps = 0.0;
  std::vector<double> range_grid;
  std::vector<Scatterer> scatterers;

  /// f_l = f0 + l * df, l = 0 .. num_freqs - 1.
  std::vector<double> frequencies() const;
  /// Throws DomainError on non-increasing grids or frequencies, non-positive
  /// speed, or fewer than two atoms; InconsistencyError on off-grid scatterers.
  void validate() const;
  /// Grid index of `range_m` (within 1e-12 m), else InconsistencyError.
  std::size_t grid_index(double range_m) const;
};

/// Grid min, min + step, ... up to max (inclusive, to rounding).
std::vector<double> make_range_grid(double min_m, double step_m, double max_m);

/// 1 GHz start, 10 MHz step, 30 samples, s = 3e8 m/s, ranges 0..5 m in 5 cm
/// steps (101 atoms). No scatterers.
GtdScene reference_preset();

/// Scatterer locations of the reference scene: 0.3, 0.85, 2.25, 4.0, 4.75 m.
std::span<const double> reference_scatterer_ranges();

/// Unnormalized transform matrix, entry (l, p) = exp(-j 2 pi f_l tau_p).
CMatrix build_raw_gtd_matrix(const GtdScene& scene);

/// build_raw_gtd_matrix divided by sqrt(m) per column; labels = range grid.
Dictionary build_gtd_dictionary(const GtdScene& scene);

/// y_l = sum_p A_p exp(-j 4 pi f_l r_p / s).
CVector synthesize_measurement(const GtdScene& scene);

/// Scatterer amplitudes placed at their grid indices. With `normalized` the
/// values are scaled by sqrt(m), matching the column-normalized dictionary.
SparseSignal planted_signal(const GtdScene& scene, bool normalized);

struct NoisyMeasurement {
  CVector noisy;
  CVector noise;
  double sigma = 0.0;
};

/// Adds CN(0, sigma^2 I) noise with sigma^2 = ||y||^2 / (m 10^(snr_db / 10)),
/// drawn from RandomStream(seed). snr_db = +inf returns y unchanged with
/// sigma = 0. Throws DegenerateInputError for a zero y at finite SNR.
NoisyMeasurement add_cawgn(std::span<const Complex> y, double snr_db, std::uint64_t seed);

}  // namespace ompc

#endif  // OMPC_GTD_MODEL_HPP_
