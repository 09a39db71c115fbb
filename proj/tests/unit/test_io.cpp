#include <doctest.h>

#include <cmath>

#include "expcomm/generators.hpp"
#include "expcomm/json_io.hpp"

using namespace expcomm;

TEST_CASE("matrix JSON round trip is exact") {
  Rng rng(3);
  ComplexMatrix m(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = rng.complex_normal() * 1e-7;
  m(0, 0) = Complex(0.1, 1.0 / 3.0);
  const Json j = m;
  CHECK(j.at("dim") == 3);
  const ComplexMatrix back = Json::parse(j.dump()).get<ComplexMatrix>();
  CHECK(back == m);
}

TEST_CASE("matrix JSON layout") {
  const ComplexMatrix m{{Complex(1, 2), 3.0}, {0.0, Complex(0, -1)}};
  const Json j = m;
  CHECK(j["re"][0][0] == 1.0);
  CHECK(j["im"][0][0] == 2.0);
  CHECK(j["re"][0][1] == 3.0);
  CHECK(j["im"][1][1] == -1.0);
}

TEST_CASE("malformed matrix JSON is rejected") {
  CHECK_THROWS_AS(Json::parse(R"({"dim": 2, "re": [[1,2]], "im": [[0,0]]})").get<ComplexMatrix>(),
                  PreconditionError);
  CHECK_THROWS_AS(Json::parse(R"({"dim": 1, "re": [["x"]], "im": [[0]]})").get<ComplexMatrix>(),
                  PreconditionError);
  CHECK_THROWS_AS(Json::parse(R"({"re": [[1]], "im": [[0]]})").get<ComplexMatrix>(), PreconditionError);
  CHECK_THROWS_AS(Json::parse(R"({"dim": 0, "re": [], "im": []})").get<ComplexMatrix>(), PreconditionError);
}

TEST_CASE("tolerance JSON keeps defaults for missing keys") {
  const ToleranceConfig t = Json::parse(R"({"tol_flag": 1e-11})").get<ToleranceConfig>();
  CHECK(t.tol_flag == 1e-11);
  CHECK(t.tol_conclude == ToleranceConfig{}.tol_conclude);
  const Json full = ToleranceConfig{};
  CHECK(full.size() == 9);
  CHECK_THROWS_AS(Json::parse(R"({"tol_flag": 1.0})").get<ToleranceConfig>(), PreconditionError);
}

TEST_CASE("GenSpec JSON round trip") {
  GenSpec s{4, 123456789012345ULL, Interval{0.0, 1.5}, Arc{0.5, 2.0}};
  CHECK(Json(s).get<GenSpec>() == s);
  GenSpec bare{2, 7, std::nullopt, std::nullopt};
  const Json j = bare;
  CHECK(j["arc"].is_null());
  CHECK(j.get<GenSpec>() == bare);
}

TEST_CASE("results and records serialize every residual at full precision") {
  const CounterexampleRecord rec = counterexample_2pi(1);
  const Json j = rec;
  CHECK(j["conclusion_residual"].get<double>() == rec.conclusion_residual);
  CHECK(j["hypothesis_residuals"]["exp_commutator"].get<double>() == rec.hypothesis_residuals.at("exp_commutator"));
  CHECK(j["matrices"]["M"].get<ComplexMatrix>() == rec.matrices.at("M"));
  CHECK(j["seed"].is_null());
  const ImplicationResult r = check_wermuth(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
  const Json jr = r;
  CHECK(jr["verdict"] == "CONFIRMED");
  CHECK(jr["diagnostics"].contains("forward_consistent"));
}
