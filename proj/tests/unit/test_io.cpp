// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "ompc/errors.hpp"
#include "ompc/io.hpp"
#include "oracles.hpp"

using namespace ompc;
using nlohmann::json;

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g(0.0, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = g(rng);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("complex matrix files round-trip bit-exactly") {
  std::mt19937_64 rng(62);
  const CMatrix m = ompc::testing::random_cmatrix(4, 3, rng);
  std::stringstream s;
  write_complex_matrix(s, m);
  CHECK(s.str().rfind("# complex interleaved, rows=4 cols=3\n", 0) == 0);
  CHECK(read_complex_matrix(s) == m);
}

TEST_CASE("fixture files") {
  const CMatrix id = read_complex_matrix(std::filesystem::path(OMPC_TEST_DATA_DIR) / "identity3.csv");
  CHECK(id == CMatrix::identity(3));
  const CVector y = read_complex_vector(std::filesystem::path(OMPC_TEST_DATA_DIR) / "y_e3_5.csv");
  CHECK(y == CVector{0.0, 0.0, 5.0});
}

TEST_CASE("vectors may be stored as one row") {
  std::istringstream s("# complex interleaved, rows=1 cols=2\n1,2,3,4\n");
  CHECK(read_complex_vector(s) == CVector{{1.0, 2.0}, {3.0, 4.0}});
  std::istringstream mat("# complex interleaved, rows=2 cols=2\n1,0,0,0\n0,0,1,0\n");
  CHECK_THROWS_AS(read_complex_vector(mat), ParseError);
}

TEST_CASE("parse errors name the line and field") {
  auto fails_at = [](const std::string& text, std::size_t line, const std::string& needle) {
    std::istringstream s(text);
    try {
      (void)read_complex_matrix(s);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  fails_at("1,0\n", 1, "header");
  fails_at("", 0, "missing header");
  fails_at("# complex interleaved, rows=1 cols=1\n1,abc\n", 2, "field 2");
  fails_at("# complex interleaved, rows=1 cols=2\n1,0,0\n", 2, "expected 4 fields");
  fails_at("# complex interleaved, rows=2 cols=1\n1,0\n", 2, "expected 2 data rows");
  fails_at("# complex interleaved, rows=1 cols=1\n1,0\n2,0\n", 3, "more than 1");
  fails_at("# complex interleaved, rows=1 cols=1\n1,inf\n", 2, "field 2");
}

TEST_CASE("OmpResult JSON uses 1-based indices") {
  OmpResult r;
  r.support = {2};
  r.coefficients = {3, {2}, {Complex{5.0, -0.0}}};
  r.residual_norms = {5.0, 0.0};
  r.converged = true;
  const json j = json::parse(to_json(r));
  CHECK(j["support"] == json::array({3}));
  CHECK(j["coefficients"][0]["index"] == 3);
  CHECK(j["coefficients"][0]["re"] == 5.0);
  CHECK(to_json(r).find("-0") == std::string::npos);
  CHECK(j["residual_norms"] == json::array({5.0, 0.0}));
  CHECK(j["converged"] == true);
  CHECK(j["iterations"] == 1);
}

TEST_CASE("ErcReport JSON") {
  const json ok = json::parse(to_json(certify_cawgn(0.5, 30, 1, 0.1, CawgnVariant::B1)));
  CHECK(ok["regime"]["kind"] == "CawgnB1");
  CHECK(ok["regime"]["sigma"] == 0.1);
  CHECK(ok["coefficient_threshold"].get<double>() == doctest::Approx(2.703289).epsilon(1e-6));
  CHECK(ok["failed_clause"].is_null());

  const json gated = json::parse(to_json(certify_bounded_noise(0.4, 2, 1.0)));
  CHECK(gated["regime"]["b2"] == 1.0);
  CHECK(gated["coefficient_threshold"].is_null());
  CHECK(gated["certified"] == false);
  CHECK(gated["failed_clause"].is_string());
}

TEST_CASE("scene config") {
  const SceneConfig c = parse_scene_config(R"({
    "num_freqs": 20,
    "scatterers": [{"range_m": 0.3, "amp_re": 2.0, "amp_im": -1.0},
                   {"range_m": 0.85, "random_phase": true}],
    "snr_db": "inf", "seed": 5})");
  CHECK(c.scene.num_freqs == 20);
  CHECK(c.scene.f0_hz == 1e9);
  CHECK(c.scene.range_grid.size() == 101);
  REQUIRE(c.scene.scatterers.size() == 2);
  CHECK(c.scene.scatterers[0].amplitude == Complex{2.0, -1.0});
  CHECK(std::abs(c.scene.scatterers[1].amplitude) == doctest::Approx(1.0));
  CHECK(std::isinf(c.snr_db));

  const SceneConfig again = parse_scene_config(R"({
    "num_freqs": 20, "snr_db": "inf", "seed": 5,
    "scatterers": [{"range_m": 0.3, "amp_re": 2.0, "amp_im": -1.0},
                   {"range_m": 0.85, "random_phase": true}]})");
  CHECK(again.scene.scatterers[1].amplitude == c.scene.scatterers[1].amplitude);

  CHECK_THROWS_AS(parse_scene_config("{"), ParseError);
  CHECK_THROWS_AS(parse_scene_config(R"({"num_freqs": "many"})"), ParseError);
  CHECK_THROWS_AS(parse_scene_config(R"({"snr_db": "loud"})"), ParseError);
  CHECK_THROWS_AS(parse_scene_config(R"({"scatterers": [{"amp_re": 1}]})"), ParseError);
}

TEST_CASE("experiment config") {
  const ExperimentConfig c = parse_experiment_config(R"({
    "k_values": [1, 2], "num_trials": 10, "base_seed": 9, "snr_db": 20,
    "placement": "grid",
    "stopping": {"rule": "cawgn_b2", "max_iterations": 4}})");
  CHECK(c.k_values == std::vector<std::size_t>{1, 2});
  CHECK(c.num_trials == 10);
  CHECK(c.base_seed == 9);
  CHECK(c.snr_db == 20.0);
  CHECK(c.placement == Placement::GridUniform);
  CHECK(c.stopping.kind == SolverSpec::Kind::CawgnB2);
  CHECK(c.stopping.max_iterations == 4);

  const ExperimentConfig from_scene = parse_experiment_config(
      R"({"k_values": [1], "scatterers": [{"range_m": 1.0, "random_phase": true}, {"range_m": 2.0, "random_phase": true}]})");
  CHECK(from_scene.candidate_ranges == std::vector<double>{1.0, 2.0});

  CHECK_THROWS_AS(parse_experiment_config(R"({"placement": "sky"})"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"stopping": {"rule": "never"}})"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("[]"), ParseError);
}

TEST_CASE("bundled configs parse and validate") {
  for (const char* name : {"preset_noiseless.json", "preset_20db.json"}) {
    const ExperimentConfig c = parse_experiment_config(
        read_text_file(std::filesystem::path(OMPC_TEST_DATA_DIR) / ".." / ".." / "configs" / name));
    CHECK_NOTHROW(c.validate());
    CHECK(c.num_trials == 1000);
    CHECK(c.k_values == std::vector<std::size_t>{1, 2, 3, 4, 5});
    CHECK(c.candidate_ranges.size() == 5);
  }
}
