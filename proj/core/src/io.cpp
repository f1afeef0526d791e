// SPDX-License-Identifier: Apache-2.0

#include "ompc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <nlohmann/json.hpp>
#include <ostream>
#include <regex>
#include <sstream>

#include "ompc/errors.hpp"
#include "ompc/noise.hpp"

namespace ompc {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view cell, std::size_t line, std::size_t field) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ", field " + std::to_string(field) +
                         ": not a finite number: '" + std::string(cell) + "'",
                     line);
  }
  return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string());
  return f;
}

}  // namespace

CMatrix read_complex_matrix(std::istream& in) {
  static const std::regex header_re(
      R"(^#\s*complex\s+interleaved\s*,\s*rows\s*=\s*(\d+)\s*,?\s*cols\s*=\s*(\d+)\s*$)");
  std::string raw;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line(trim(raw));
    if (line.empty()) continue;
    std::smatch m;
    if (!std::regex_match(line, m, header_re)) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected header '# complex interleaved, rows=R cols=C'",
                       line_no);
    }
    rows = std::stoul(m[1].str());
    cols = std::stoul(m[2].str());
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError("missing header line", line_no);
  if (rows == 0 || cols == 0) throw ParseError("header declares an empty matrix", line_no);

  std::vector<Complex> data;
  data.reserve(rows * cols);
  std::size_t row = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (row == rows) {
      throw ParseError("line " + std::to_string(line_no) + ": more than " +
                           std::to_string(rows) + " data rows",
                       line_no);
    }
    std::vector<double> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto cell = line.substr(start, comma == std::string_view::npos ? line.npos
                                                                            : comma - start);
      cells.push_back(parse_number(cell, line_no, cells.size() + 1));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 2 * cols) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(2 * cols) + " fields, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    for (std::size_t c = 0; c < cols; ++c) data.emplace_back(cells[2 * c], cells[2 * c + 1]);
    ++row;
  }
  if (row != rows) {
    throw ParseError("expected " + std::to_string(rows) + " data rows, found " +
                         std::to_string(row),
                     line_no);
  }
  return CMatrix(rows, cols, std::move(data));
}

CMatrix read_complex_matrix(const std::filesystem::path& path) {
  std::ifstream f = open_input(path);
  return read_complex_matrix(f);
}

void write_complex_matrix(std::ostream& out, const CMatrix& m) {
  out << "# complex interleaved, rows=" << m.rows() << " cols=" << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag());
    }
    out << '\n';
  }
}

CVector read_complex_vector(std::istream& in) {
  const CMatrix m = read_complex_matrix(in);
  if (m.cols() != 1 && m.rows() != 1) {
    throw ParseError("expected a vector, got a " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix",
                     0);
  }
  return CVector(m.data().begin(), m.data().end());
}

CVector read_complex_vector(const std::filesystem::path& path) {
  std::ifstream f = open_input(path);
  return read_complex_vector(f);
}

void write_complex_vector(std::ostream& out, std::span<const Complex> v) {
  write_complex_matrix(out, CMatrix(v.size(), 1, CVector(v.begin(), v.end())));
}

std::string to_json(const OmpResult& result) {
  json j;
  json support = json::array();
  for (std::size_t i : result.support) support.push_back(i + 1);
  j["support"] = support;
  json coeffs = json::array();
  for (std::size_t k = 0; k < result.coefficients.support.size(); ++k) {
    coeffs.push_back({{"index", result.coefficients.support[k] + 1},
                      {"re", result.coefficients.values[k].real() + 0.0},
                      {"im", result.coefficients.values[k].imag() + 0.0}});
  }
  j["coefficients"] = coeffs;
  j["residual_norms"] = result.residual_norms;
  j["converged"] = result.converged;
  j["iterations"] = result.support.size();
  return j.dump(2);
}

std::string to_json(const ErcReport& report) {
  json regime = {{"kind", to_string(report.regime.kind)}};
  switch (report.regime.kind) {
    case RegimeKind::Noiseless:
      break;
    case RegimeKind::BoundedNoise:
      regime["b2"] = report.regime.parameter;
      break;
    case RegimeKind::CawgnB1:
    case RegimeKind::CawgnB2:
      regime["sigma"] = report.regime.parameter;
      break;
  }
  auto finite_or_null = [](double v) -> json { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["mu"] = report.mu;
  j["k"] = report.k;
  j["regime"] = regime;
  j["mip_condition_holds"] = report.mip_condition_holds;
  j["coefficient_threshold"] = finite_or_null(report.coefficient_threshold);
  j["stopping_radius"] = report.stopping_radius;
  j["success_probability_lower_bound"] = report.success_probability_lower_bound;
  j["certified"] = report.certified;
  j["failed_clause"] = report.failed_clause ? json(*report.failed_clause) : json(nullptr);
  return j.dump(2);
}

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
}

template <class T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config field '") + key + "': " + e.what(), 0);
  }
}

double snr_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw ParseError(std::string("config field '") + key + "': expected a number or \"inf\"", 0);
  }
  if (!v.is_number()) {
    throw ParseError(std::string("config field '") + key + "': expected a number or \"inf\"", 0);
  }
  return v.get<double>();
}

GtdScene scene_from_json(const json& j) {
  const GtdScene preset = reference_preset();
  GtdScene scene;
  scene.f0_hz = field(j, "f0_hz", preset.f0_hz);
  scene.df_hz = field(j, "df_hz", preset.df_hz);
  scene.num_freqs = field<std::size_t>(j, "num_freqs", preset.num_freqs);
  scene.speed_mps = field(j, "speed_mps", preset.speed_mps);
  const double rmin = field(j, "range_min_m", 0.0);
  const double rstep = field(j, "range_step_m", 0.05);
  const double rmax = field(j, "range_max_m", 5.0);
  try {
    scene.range_grid = make_range_grid(rmin, rstep, rmax);
  } catch (const DomainError& e) {
    throw ParseError(std::string("config fields 'range_*_m': ") + e.what(), 0);
  }

  RandomStream rng(field<std::uint64_t>(j, "seed", 0));
  if (j.contains("scatterers")) {
    const json& list = j.at("scatterers");
    if (!list.is_array()) throw ParseError("config field 'scatterers': expected a list", 0);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const json& s = list[i];
      const std::string where = "config field 'scatterers[" + std::to_string(i) + "]'";
      if (!s.is_object() || !s.contains("range_m")) {
        throw ParseError(where + ": expected an object with range_m", 0);
      }
      Scatterer sc;
      sc.range_m = field(s, "range_m", 0.0);
      if (field(s, "random_phase", false)) {
        sc.amplitude = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
      } else {
        sc.amplitude = Complex(field(s, "amp_re", 1.0), field(s, "amp_im", 0.0));
      }
      scene.scatterers.push_back(sc);
    }
  }
  try {
    scene.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  return scene;
}

}  // namespace

SceneConfig parse_scene_config(std::string_view json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) throw ParseError("config: expected a JSON object", 0);
  SceneConfig cfg;
  cfg.scene = scene_from_json(j);
  cfg.snr_db = snr_field(j, "snr_db", std::numeric_limits<double>::infinity());
  return cfg;
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) throw ParseError("config: expected a JSON object", 0);
  ExperimentConfig cfg;
  cfg.scene = scene_from_json(j);
  cfg.snr_db = snr_field(j, "snr_db", std::numeric_limits<double>::infinity());
  cfg.k_values = field(j, "k_values", cfg.k_values);
  cfg.num_trials = field(j, "num_trials", cfg.num_trials);
  cfg.base_seed = field(j, "base_seed", cfg.base_seed);
  cfg.threads = field(j, "threads", cfg.threads);

  if (!cfg.scene.scatterers.empty()) {
    cfg.candidate_ranges.clear();
    for (const Scatterer& s : cfg.scene.scatterers) cfg.candidate_ranges.push_back(s.range_m);
    cfg.scene.scatterers.clear();
  }
  cfg.candidate_ranges = field(j, "candidate_ranges_m", cfg.candidate_ranges);

  const std::string placement = field<std::string>(j, "placement", "candidates");
  if (placement == "candidates") {
    cfg.placement = Placement::Candidates;
  } else if (placement == "grid") {
    cfg.placement = Placement::GridUniform;
  } else {
    throw ParseError("config field 'placement': expected \"candidates\" or \"grid\"", 0);
  }

  if (j.contains("stopping")) {
    const json& s = j.at("stopping");
    if (!s.is_object()) throw ParseError("config field 'stopping': expected an object", 0);
    const std::string rule = field<std::string>(s, "rule", "fixed");
    if (rule == "fixed") {
      cfg.stopping.kind = SolverSpec::Kind::FixedK;
    } else if (rule == "eps") {
      cfg.stopping.kind = SolverSpec::Kind::Residual;
    } else if (rule == "noise_bound") {
      cfg.stopping.kind = SolverSpec::Kind::NoiseBound;
    } else if (rule == "cawgn_b1") {
      cfg.stopping.kind = SolverSpec::Kind::CawgnB1;
    } else if (rule == "cawgn_b2") {
      cfg.stopping.kind = SolverSpec::Kind::CawgnB2;
    } else {
      throw ParseError("config field 'stopping.rule': unknown rule '" + rule + "'", 0);
    }
    cfg.stopping.value = field(s, "value", 0.0);
    cfg.stopping.max_iterations = field<std::size_t>(s, "max_iterations", 0);
  }

  try {
    cfg.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  return cfg;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f = open_input(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace ompc
