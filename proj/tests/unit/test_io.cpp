#include "doctest.h"

#include "fracext/error.hpp"
#include "fracext/io.hpp"

#include <filesystem>
#include <fstream>

using namespace fracext;

namespace {
std::string schema_path(const Json& j, bool knapp) {
  try {
    if (knapp)
      knapp_params_from_json(j);
    else
      ifs_from_json(j);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<none>";
}
}  // namespace

TEST_CASE("IFS schema") {
  const auto good = Json::parse(R"({"maps":[{"ratio":"1/3","translation":0},{"ratio":"1/3","translation":"2/3"}],
                                    "probs":["1/2","1/2"]})");
  const auto ifs = ifs_from_json(good);
  CHECK(ifs.size() == 2);
  CHECK(ifs.maps()[1].translation == Rational(2, 3));
  CHECK(ifs_to_json(ifs)["maps"][0]["ratio"] == "1/3");
  CHECK(ifs_from_json(ifs_to_json(ifs)).probs() == ifs.probs());

  CHECK(schema_path(Json::parse(R"({"probs":[1]})"), false) == "/maps");
  CHECK(schema_path(Json::parse(R"({"maps":[{"ratio":"x"}],"probs":[1]})"), false) == "/maps/0/ratio");
  CHECK(schema_path(Json::parse(R"({"maps":[{"ratio":"1/2"}],"probs":[1]})"), false) == "/maps/0/translation");
  CHECK(schema_path(Json::parse(R"({"maps":[{"ratio":"1/2","translation":0}],"probs":[true]})"), false) == "/probs/0");
  // probabilities not summing to one are reported at the object
  CHECK(schema_path(Json::parse(R"({"maps":[{"ratio":"1/2","translation":0}],"probs":["1/2"]})"), false) == "/");
}

TEST_CASE("Knapp schema") {
  const auto p = knapp_params_from_json(Json::parse(R"({"alphas":[0.4,"2/5"],"betas":[0.4,0.4],"n_max":3,"seed":7})"));
  CHECK(p.alphas[1] == doctest::Approx(0.4));
  CHECK(p.n_max == 3);
  CHECK(p.seed == 7);
  CHECK(p.phi.epsilon == 1.0);
  CHECK(schema_path(Json::parse(R"({"alphas":[0.4]})"), true) == "/betas");
  CHECK(schema_path(Json::parse(R"({"alphas":[0.4],"betas":[0.4,0.1]})"), true) == "/betas");
  CHECK(schema_path(Json::parse(R"({"alphas":[0.4],"betas":["a"]})"), true) == "/betas/0");
  CHECK(schema_path(Json::parse(R"({"alphas":[0.4],"betas":[0.4],"n_max":2.5})"), true) == "/n_max");
  CHECK(schema_path(Json::parse(R"([1,2])"), true) == "/");
}

TEST_CASE("family and manifest JSON") {
  KnappParams p;
  p.alphas = {0.4, 0.4};
  p.betas = {0.4, 0.4};
  p.n_max = 3;
  p.seed = 5;
  const auto fam = build_family(p);
  const auto j = family_to_json(fam);
  CHECK(j["seed"] == "5");
  REQUIRE(j["levels"].size() == 3);
  CHECK(j["levels"][0]["psi"].is_string());
  CHECK(j["levels"][2]["Psi"] == std::to_string(fam.Psi(3)));
  CHECK(j["levels"][2]["endpoints"][0].size() == fam.endpoints[3][0].size());
  for (const auto& e : j["levels"][2]["endpoints"][1]) CHECK(e.is_string());

  const auto m = manifest("knapp build", Json{{"n_max", 3}}, 5);
  CHECK(m["command"] == "knapp build");
  CHECK(m["seed"] == "5");
  CHECK(m["version"] == kVersion);
}

TEST_CASE("config files") {
  const auto dir = std::filesystem::temp_directory_path() / "fracext_io_test";
  std::filesystem::create_directories(dir);
  write_text(dir / "bad.json", "{ not json");
  CHECK_THROWS_AS(read_json_file(dir / "bad.json"), SchemaError);
  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), SchemaError);
  write_text(dir / "ok.json", R"({"a": 1})");
  CHECK(read_json_file(dir / "ok.json")["a"] == 1);
  std::filesystem::remove_all(dir);
}
