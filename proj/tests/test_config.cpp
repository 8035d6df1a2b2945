/**********
 *   Copyright 2026 The radpol Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
\**********/

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "radpol/config.hpp"
#include "radpol/polarimetry.hpp"

using namespace radpol;

TEST_CASE("minimal chain config parses with defaults", "[config]") {
  const ExperimentConfig cfg =
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 22.5}]})");
  REQUIRE_FALSE(cfg.is_ensemble);
  REQUIRE(cfg.chain.size() == 1);
  REQUIRE(cfg.chain[0].type == ElementType::half_wave);
  REQUIRE(cfg.chain[0].theta == Catch::Approx(kPi / 8.0).margin(1e-15));
  REQUIRE(cfg.scheme == Scheme::all);
  REQUIRE(cfg.trials == 1);
  REQUIRE(cfg.seed == 1);
  REQUIRE_FALSE(cfg.noise.has_value());
  REQUIRE_FALSE(cfg.render.has_value());
  REQUIRE(cfg.config_hash.size() == 16);
  REQUIRE(max_abs_diff(cfg.jones(), half_wave(kPi / 8.0)) < 1e-15);
}

TEST_CASE("angles can be given in radians", "[config]") {
  const ExperimentConfig cfg =
      parse_config(R"({"sample": [{"kind": "rotator", "theta_rad": 0.5}]})");
  REQUIRE(cfg.chain[0].theta == 0.5);
}

TEST_CASE("bare theta is rejected as ambiguous", "[config]") {
  REQUIRE_THROWS_AS(parse_config(R"({"sample": [{"kind": "hwp", "theta": 22.5}]})"),
                    ValidationError);
}

TEST_CASE("exactly one angle unit must be present", "[config]") {
  REQUIRE_THROWS_AS(parse_config(R"({"sample": [{"kind": "hwp"}]})"), ValidationError);
  REQUIRE_THROWS_AS(
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 10, "theta_rad": 0.1}]})"),
      ValidationError);
}

TEST_CASE("unknown keys and kinds are rejected", "[config]") {
  REQUIRE_THROWS_AS(parse_config(R"({"sample": [{"kind": "prism", "theta_deg": 1}]})"),
                    ValidationError);
  REQUIRE_THROWS_AS(
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 1, "color": "red"}]})"),
      ValidationError);
  REQUIRE_THROWS_AS(
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 1}], "bogus": 1})"),
      ValidationError);
}

TEST_CASE("custom elements need a well-formed matrix", "[config]") {
  const ExperimentConfig cfg = parse_config(
      R"({"sample": [{"kind": "custom",
                      "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}]})");
  REQUIRE(cfg.chain[0].type == ElementType::custom);
  REQUIRE(cfg.chain[0].custom.e[0][1] == cplx(1.0, 0.0));

  REQUIRE_THROWS_AS(parse_config(R"({"sample": [{"kind": "custom"}]})"), ValidationError);
  REQUIRE_THROWS_AS(
      parse_config(R"({"sample": [{"kind": "custom", "matrix": [[1, 0], [0, 1]]}]})"),
      ValidationError);
  REQUIRE_THROWS_AS(
      parse_config(
          R"({"sample": [{"kind": "custom", "matrix": [[[0], [1, 0]], [[1, 0], [0, 0]]]}]})"),
      ValidationError);
}

TEST_CASE("malformed JSON is a parse error, not a validation error", "[config]") {
  REQUIRE_THROWS_AS(parse_config("{\"sample\": ["), ParseError);
  REQUIRE_THROWS_AS(parse_config("not json at all"), ParseError);
}

TEST_CASE("empty chains and bad sample shapes are rejected", "[config]") {
  REQUIRE_THROWS_AS(parse_config(R"({"sample": []})"), ValidationError);
  REQUIRE_THROWS_AS(parse_config(R"({"sample": 7})"), ValidationError);
  REQUIRE_THROWS_AS(parse_config(R"({"scheme": "all"})"), ValidationError);
}

TEST_CASE("ensembles parse and enforce normalized weights", "[config]") {
  const char* good = R"({
    "sample": {"ensemble": [
      {"weight": 0.5, "element": {"kind": "custom",
        "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}},
      {"weight": 0.5, "element": {"kind": "custom",
        "matrix": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}}
    ]}
  })";
  const ExperimentConfig cfg = parse_config(good);
  REQUIRE(cfg.is_ensemble);
  REQUIRE(cfg.ensemble.members.size() == 2);
  REQUIRE(cfg.ensemble.members[1].jones.e[1][1] == cplx(-1.0, 0.0));
  REQUIRE_THROWS_AS(cfg.jones(), ValidationError);
  REQUIRE(cfg.effective_ensemble().members.size() == 2);

  const char* bad = R"({
    "sample": {"ensemble": [
      {"weight": 0.6, "element": {"kind": "hwp", "theta_deg": 0}},
      {"weight": 0.5, "element": {"kind": "hwp", "theta_deg": 45}}
    ]}
  })";
  REQUIRE_THROWS_AS(parse_config(bad), ValidationError);
  REQUIRE_THROWS_AS(parse_config(R"({"sample": {"ensemble": []}})"), ValidationError);
}

TEST_CASE("scheme names parse and default to all", "[config]") {
  const char* base = R"({"sample": [{"kind": "hwp", "theta_deg": 0}], "scheme": ")";
  REQUIRE(parse_config(base + std::string("oracle\"}")).scheme == Scheme::oracle);
  REQUIRE(parse_config(base + std::string("conventional\"}")).scheme == Scheme::conventional);
  REQUIRE(parse_config(base + std::string("two_dof_bench\"}")).scheme == Scheme::two_dof_bench);
  REQUIRE(parse_config(base + std::string("all\"}")).scheme == Scheme::all);
  REQUIRE_THROWS_AS(parse_config(base + std::string("fancy\"}")), ValidationError);
  REQUIRE(scheme_from_name(scheme_name(Scheme::two_dof_bench)) == Scheme::two_dof_bench);
}

TEST_CASE("noise block parses with null meaning off", "[config]") {
  const ExperimentConfig cfg = parse_config(R"({
    "sample": [{"kind": "hwp", "theta_deg": 0}],
    "noise": {"sigma_rel": 1e-3, "dark": 1e-6, "poisson_photons": null}
  })");
  REQUIRE(cfg.noise.has_value());
  REQUIRE(cfg.noise->sigma_rel == 1e-3);
  REQUIRE(cfg.noise->dark == 1e-6);
  REQUIRE(cfg.noise->poisson_photons == 0.0);

  REQUIRE_THROWS_AS(parse_config(R"({
    "sample": [{"kind": "hwp", "theta_deg": 0}],
    "noise": {"sigma_rel": -0.5}
  })"),
                    ValidationError);
}

TEST_CASE("trials and seed are validated integers", "[config]") {
  const ExperimentConfig cfg = parse_config(
      R"({"sample": [{"kind": "hwp", "theta_deg": 0}], "trials": 50, "seed": 987654321})");
  REQUIRE(cfg.trials == 50);
  REQUIRE(cfg.seed == 987654321ull);
  REQUIRE_THROWS_AS(
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 0}], "trials": 0})"),
      ValidationError);
  REQUIRE_THROWS_AS(
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 0}], "trials": 2.5})"),
      ValidationError);
  REQUIRE_THROWS_AS(
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 0}], "seed": "abc"})"),
      ValidationError);
}

TEST_CASE("render block fills grid defaults and validates", "[config]") {
  const ExperimentConfig cfg = parse_config(
      R"({"sample": [{"kind": "hwp", "theta_deg": 0}], "render": {"nx": 64, "ny": 32}})");
  REQUIRE(cfg.render.has_value());
  REQUIRE(cfg.render->nx == 64);
  REQUIRE(cfg.render->ny == 32);
  REQUIRE(cfg.render->extent == 3.0);
  REQUIRE(cfg.render->waist == 1.0);
  REQUIRE_THROWS_AS(
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 0}], "render": {"nx": 1}})"),
      ValidationError);
}

TEST_CASE("config hash ignores formatting but tracks content", "[config]") {
  const ExperimentConfig a =
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 22.5}], "seed": 5})");
  const ExperimentConfig b = parse_config(
      "{\n  \"seed\": 5,\n  \"sample\": [ { \"theta_deg\": 22.5, \"kind\": \"hwp\" } ]\n}\n");
  REQUIRE(a.config_hash == b.config_hash);

  // The canonical form stores radians, so the unit key never reaches the hash.
  const ExperimentConfig c = parse_config(
      R"({"sample": [{"kind": "hwp", "theta_rad": 0.39269908169872414}], "seed": 5})");
  REQUIRE(c.chain[0].theta == Catch::Approx(a.chain[0].theta).margin(1e-15));

  const ExperimentConfig d =
      parse_config(R"({"sample": [{"kind": "hwp", "theta_deg": 22.5}], "seed": 6})");
  REQUIRE(a.config_hash != d.config_hash);

  const ExperimentConfig e =
      parse_config(R"({"sample": [{"kind": "qwp", "theta_deg": 22.5}], "seed": 5})");
  REQUIRE(a.config_hash != e.config_hash);
}

TEST_CASE("load_config reports missing files as IoError", "[config]") {
  REQUIRE_THROWS_AS(load_config("definitely_not_here.json"), IoError);
}
