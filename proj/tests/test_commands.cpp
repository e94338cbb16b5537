#include <sstream>

#include "doctest.h"
#include "twistflag/commands.hpp"

using namespace twistflag;

namespace {

const char *kExampleWeights = R"({"wL": [[-1,1],[-1,1],[2,-2]], "wR": [[-4,1],[5,-5],[-1,4]]})";
const char *kCone = R"({"A": [[1,0],[1,0],[2,-1]], "B": [[0,1],[0,1],[-1,2]]})";

RunConfig with_config(const std::string &json) {
  RunConfig cfg;
  cfg.config = json;
  return cfg;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string &name, const RunConfig &cfg) {
  std::ostringstream out, err;
  const int code = run_command(name, cfg, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("commands") {

TEST_CASE("json values round trip") {
  for (const Rational &q : {Rational(0), Rational(-7), Rational(5, 3), Rational(-1, 12)}) {
    CHECK(rational_from_json(to_json(q)) == q);
  }
  CHECK(to_json(Rational(4)) == Json(4));
  CHECK(to_json(Rational(-2, 3)) == Json("-2/3"));
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), InvalidInput);

  const Rat2 v(Rational(1, 2), Rational(-3));
  CHECK(rat2_from_json(to_json(v)) == v);

  const WeightSystem ws = weight_system_from_json(Json::parse(kExampleWeights));
  CHECK(weight_system_from_json(to_json(ws)) == ws);

  const ConeInput in = cone_input_from_json(Json::parse(kCone));
  CHECK_FALSE(in.origin);
  CHECK(in.data.C == Rat2(1, 1));
  CHECK(cone_input_from_json(to_json(in.data)).data.A == in.data.A);
  const ConeInput from_weights = cone_input_from_json(Json::parse(kExampleWeights));
  REQUIRE(from_weights.origin);
  CHECK(*from_weights.origin == ws);
}

TEST_CASE("malformed inputs") {
  CHECK_THROWS_AS(weight_system_from_json(Json::parse(R"({"wL": [[0,0],[0,0],[0,0]]})")), InvalidInput);
  CHECK_THROWS_AS(weight_system_from_json(Json::parse(R"({"wL": [[1,0],[0,0],[0,0]], "wR": [[0,0],[0,0],[0,0]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(weight_system_from_json(Json::parse(R"({"wL": [[0.5,0],[0,0],[0,0]], "wR": [[0,0],[0,0],[0,0]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(cone_input_from_json(Json::parse(R"({"A": [[1,0],[1,0]], "B": [[0,1],[0,1],[-1,2]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(cone_input_from_json(Json::parse(R"({"A": [[1,0],[1,0],[2,-1]], "B": [[0,1],[0,1],[-1,2]], "C": [2,2]})")),
                  InvalidInput);
  CHECK_THROWS_AS(cone_input_from_json(Json::parse("{}")), InvalidInput);
  CHECK_THROWS_AS(load_json("{not json"), InvalidInput);
  CHECK_THROWS_AS(load_json("/nonexistent/config.json"), InvalidInput);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg = RunConfig{};
  cfg.tol_zero = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg = RunConfig{};
  cfg.branch = "other";
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg = RunConfig{};
  cfg.bound = -1;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
}

TEST_CASE("check command") {
  const CommandResult r = cmd_check(with_config(kExampleWeights));
  CHECK(r.exit_code == 0);
  const Json &res = r.report["results"];
  CHECK(r.report["command"] == "check");
  CHECK(r.report["pass"] == true);
  CHECK(res["star"] == true);
  CHECK(res["nrc"]["N_witness"]["pair"] == Json::array({1, 2}));
  CHECK(res["interpolation"]["pass"] == true);
  CHECK(res["interpolation"]["t"].size() == 9);
  CHECK(r.report["config"]["input"] == Json::parse(kExampleWeights));

  const CommandResult zero = cmd_check(with_config(R"({"wL": [[0,0],[0,0],[0,0]], "wR": [[0,0],[0,0],[0,0]]})"));
  CHECK(zero.exit_code == 1);
  CHECK(zero.report["results"]["interpolation"].is_null());
}

TEST_CASE("isotropy command") {
  const CommandResult r = cmd_isotropy(with_config(kCone));
  CHECK(r.exit_code == 0);
  const Json &res = r.report["results"];
  CHECK(res["freeness"]["free"] == false);
  CHECK(res["freeness"]["failing_pair"]["i"] == 3);
  CHECK(res["freeness"]["failing_pair"]["j"] == 1);
  CHECK(res["classification"]["class"] == "orbifold");
  CHECK(res["classification"]["scale"] == 3);
  CHECK(res["census"].size() == 46);
  CHECK(res["census"][0]["isotropy"]["order"] == 1); // (1,2)
  CHECK(res["census"][1]["isotropy"]["order"] == 2); // (1,3)

  const Run torus = run("isotropy", with_config(R"({"wL": [[0,0],[0,0],[0,0]], "wR": [[1,0],[0,1],[-1,-1]]})"));
  CHECK(torus.code == 0);
  CHECK(Json::parse(torus.out)["results"]["classification"]["class"] == "free_flag");
}

TEST_CASE("verify command") {
  RunConfig cfg = with_config(kCone);
  cfg.samples = 10;
  cfg.threads = 2;
  const CommandResult r = cmd_verify(cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["summary"]["passed"] == 10);
  CHECK(r.report["results"]["certificates"][0]["origin"] == "witness 1,2");
  CHECK(r.report["results"]["certificates"][0]["ranks"]["transversal"] == 10);

  cfg.threads = 1;
  CHECK(cmd_verify(cfg).report == r.report);
}

TEST_CASE("generate command") {
  const CommandResult r = cmd_generate(with_config(kCone));
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["scale"] == 3);
  CHECK(r.report["results"]["integer"] == Json::parse(kExampleWeights));
  CHECK(r.report["results"]["rational"]["wL"][0] == Json::array({"-1/3", "1/3"}));
  CHECK_THROWS_AS(cmd_generate(with_config(kExampleWeights)), InvalidInput);
}

TEST_CASE("cohomology command") {
  CommandResult r = cmd_cohomology(RunConfig{});
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["betti"] == Json::array({1, 0, 0, 1, 0, 1, 0, 0, 1}));
  CHECK(r.report["results"]["basic_betti"] == Json::array({1, 0, 2, 0, 2, 0, 1}));
  CHECK(r.report["results"]["hodge"]["branch"] == Json::array({0, 0, 0}));

  RunConfig cfg;
  cfg.branch = "degenerate";
  r = cmd_cohomology(cfg);
  CHECK(r.report["results"]["hodge"]["branch"] == Json::array({1, 2, 1}));

  cfg = RunConfig{};
  cfg.beta = "1/2,1";
  cfg.beta_imag = "1/2,0";
  r = cmd_cohomology(cfg);
  CHECK(r.report["results"]["hodge"]["branch"] == Json::array({1, 2, 1}));
  CHECK(r.report["results"]["hodge"]["determinant"] == "0");

  const Beta b = parse_beta(" 2 , -1/3", std::nullopt);
  CHECK(b[0] == QSqrtNeg3(Rational(2)));
  CHECK(b[1] == QSqrtNeg3(Rational(-1, 3)));
  CHECK_THROWS_AS(parse_beta("1", std::nullopt), InvalidInput);
  CHECK_THROWS_AS(parse_beta("1,2,3", std::nullopt), InvalidInput);
}

TEST_CASE("enumerate command streams valid JSON") {
  RunConfig cfg;
  cfg.bound = 1;
  std::ostringstream a, b;
  CHECK(cmd_enumerate(cfg, a) == 0);
  CHECK(cmd_enumerate(cfg, b) == 0);
  CHECK(a.str() == b.str());
  const Json j = Json::parse(a.str());
  CHECK(j["results"]["summary"]["count"] == 24);
  CHECK(j["results"]["summary"]["free"] == 24);
  CHECK(j["pass"] == true);
}

TEST_CASE("exit codes from run_command") {
  Run r = run("check", with_config(kExampleWeights));
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(Json::parse(r.out)["pass"] == true);
  CHECK_FALSE(Json::parse(r.out).contains("wall_time_s"));

  r = run("check", with_config(R"({"wL": [[0,0],[0,0],[0,0]]})"));
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out)["error"]["kind"] == "invalid_input");

  r = run("isotropy", with_config(R"({"wL": [[0,0],[0,0],[0,0]], "wR": [[0,0],[0,0],[0,0]]})"));
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out)["error"]["kind"] == "precondition_failed");

  RunConfig cfg;
  cfg.beta = "0,0";
  r = run("cohomology", cfg);
  CHECK(r.code == 2);

  r = run("check", RunConfig{});
  CHECK(r.code == 2);
  r = run("nonsense", RunConfig{});
  CHECK(r.code == 2);

  std::ostringstream out, err;
  CHECK(run_command("generate", with_config(kCone), out, err, true) == 0);
  CHECK(Json::parse(out.str()).contains("wall_time_s"));
}

TEST_CASE("reports are byte-identical across runs") {
  RunConfig cfg = with_config(kCone);
  cfg.samples = 6;
  for (const char *name : {"check", "isotropy", "verify", "generate"}) {
    CHECK(run(name, cfg).out == run(name, cfg).out);
  }
  CHECK(run("cohomology", RunConfig{}).out == run("cohomology", RunConfig{}).out);
}

} // TEST_SUITE
