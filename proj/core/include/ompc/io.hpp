// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_IO_HPP_
#define OMPC_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ompc/complex_core.hpp"
#include "ompc/erc_certify.hpp"
#include "ompc/experiment.hpp"
#include "ompc/gtd_model.hpp"
#include "ompc/omp_solver.hpp"

namespace ompc {

/// Shortest round-trip text: 17 significant digits, "inf"/"-inf"/"nan".
std::string format_double(double v);

/// Complex matrix file:
///
///   # complex interleaved, rows=R cols=C
///   re(0,0),im(0,0),re(0,1),im(0,1),...
///
/// one line per row, 2C numeric cells. Blank lines are ignored. Errors throw
/// ParseError with the 1-based line number and the offending field.
CMatrix read_complex_matrix(std::istream& in);
CMatrix read_complex_matrix(const std::filesystem::path& path);
void write_complex_matrix(std::ostream& out, const CMatrix& m);

/// A vector is a matrix file with one column (or one row).
CVector read_complex_vector(std::istream& in);
CVector read_complex_vector(const std::filesystem::path& path);
void write_complex_vector(std::ostream& out, std::span<const Complex> v);

/// {"support": [...], "coefficients": [{"index", "re", "im"}], "residual_norms",
/// "converged", "iterations"}; atom indices are 1-based.
std::string to_json(const OmpResult& result);

/// Field names follow ErcReport. `regime` is {"kind": ..., "b2" | "sigma": ...};
/// an undefined (infinite) coefficient_threshold is written as null.
std::string to_json(const ErcReport& report);

struct SceneConfig {
  GtdScene scene;
  double snr_db = 0.0;
};

/// Keys: f0_hz, df_hz, num_freqs, speed_mps, range_min_m, range_step_m,
/// range_max_m, scatterers, snr_db (number or "inf"), seed. Absent scene keys
/// take the reference-preset values. A scatterer is {range_m, amp_re, amp_im}
/// or {range_m, "random_phase": true}; random phases are drawn from
/// RandomStream(seed) in list order.
SceneConfig parse_scene_config(std::string_view json_text);

/// Scene keys as above plus k_values, num_trials, base_seed, threads,
/// placement ("candidates" | "grid"), candidate_ranges_m, and
/// stopping {"rule": "fixed" | "eps" | "noise_bound" | "cawgn_b1" | "cawgn_b2",
/// "value", "max_iterations"}. Candidate ranges default to the scene's
/// scatterer ranges, or the reference five locations when none are given.
ExperimentConfig parse_experiment_config(std::string_view json_text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace ompc

#endif  // OMPC_IO_HPP_
