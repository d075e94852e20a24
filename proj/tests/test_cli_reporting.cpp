#include <doctest.h>

#include <json.hpp>

#include "qpcert/certify.hpp"
#include "qpcert/errors.hpp"
#include "qpcert/fixtures.hpp"
#include "qpcert/report.hpp"
#include "qpcert/rng.hpp"
#include "qpcert/serialize.hpp"

using namespace qpcert;

namespace {

const char* kBk02Json = R"({
  "space": {"kind": "finite", "dim": 3},
  "objective": {"block": [[0,0,0],[0,0,-1],[0,-1,0]], "tail": 0,
                "c": [2,0,0], "const": 0},
  "constraints": [
    {"block": [[0,0,0],[0,1,0],[0,0,0]], "tail": 0, "c": [-1,0,0], "const": 0},
    {"block": [[0,0,0],[0,0,0],[0,0,1]], "tail": 0, "c": [-1,0,0], "const": -1}
  ]
})";

}  // namespace

TEST_SUITE("cli_reporting") {

TEST_CASE("parse_problem: worked instance from raw matrices") {
  const Problem p = parse_problem(kBk02Json);
  CHECK(p.space.is_finite());
  CHECK(p.space.dim == 3);
  CHECK(p.m() == 2);
  CHECK(p.objective.op.block(1, 2) == doctest::Approx(-1.0));
  CHECK(eval_quadratic(p.objective, Vector{1.0, 1.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("parse_problem: structured errors") {
  CHECK_THROWS_AS(parse_problem("{\"space\": {\"kind\": \"finite\", \"dim\": 2}}"),
                  ParseError);
  try {
    parse_problem("{\"space\": {\"kind\": \"finite\", \"dim\": 2}}");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("objective") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem("not json at all"), ParseError);

  const char* non_psd = R"({
    "space": {"kind": "finite", "dim": 1},
    "objective": {"c": [1]},
    "constraints": [{"block": [[-1]]}]
  })";
  CHECK_THROWS_AS(parse_problem(non_psd), ValidationFailure);
}

TEST_CASE("render/parse round trip reproduces the problem") {
  const Problem p = parse_problem(kBk02Json);
  const Problem q = parse_problem(render_problem(p));
  CHECK(q.space == p.space);
  REQUIRE(q.m() == p.m());
  Rng rng(5150);
  for (int it = 0; it < 50; ++it) {
    Vector x = Vector::zeros(3);
    for (std::size_t i = 0; i < 3; ++i) x.ref(i) = rng.uniform(-3.0, 3.0);
    CHECK(eval_quadratic(p.objective, x) == eval_quadratic(q.objective, x));
    for (std::size_t i = 0; i < p.m(); ++i)
      CHECK(eval_quadratic(p.constraints[i], x) == eval_quadratic(q.constraints[i], x));
  }
  // canonical render is a fixpoint
  CHECK(render_problem(q) == render_problem(p));
}

TEST_CASE("certificate text names the fired theorem") {
  Problem p;
  p.space = SpaceDesc::sequence();
  p.objective.op = Operator{Matrix::diag({0.0, 0.0}), 1.0};
  p.objective.lin = Vector{1.0, 0.0};
  QuadraticFunction g;
  g.op = Operator{Matrix::diag({1.0, 0.0}), 0.0};
  g.lin = Vector{1.0, 0.0};
  g.constant = -1.0;
  p.constraints.push_back(g);

  const Certificate c = certify_existence(p);
  REQUIRE(c.fired_rule == Certificate::Rule::FW1);
  const std::string text = render_certificate(c, ReportFormat::Text);
  CHECK(text.find("Theorem: Frank-Wolfe type 1") != std::string::npos);
  CHECK(text.find("condition_A") != std::string::npos);
  CHECK(text.find("bounded_below") != std::string::npos);
  CHECK(text.find("objective_legendre") != std::string::npos);
}

TEST_CASE("report json parses and carries the documented keys") {
  const Certificate c = certify_existence(fixture_problem("condA_not_necessary"));
  const std::string js = render_certificate(c, ReportFormat::Json);
  const nlohmann::json j = nlohmann::json::parse(js);
  CHECK(j["type"] == "certificate");
  CHECK(j["exists"] == "YES");
  CHECK(j.contains("fired_rule"));
  CHECK(j.contains("hypotheses"));
  CHECK(j["hypotheses"].contains("condition_A"));
  CHECK(j["witness"]["value"].get<double>() == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("sweep rendering: csv rows per level") {
  SweepReport rep;
  rep.levels = {4, 8};
  rep.inf_values = {1.0, 0.5};
  rep.minimizer_norms = {1.0, 2.0};
  rep.diagnosis = SweepReport::Diagnosis::INCONCLUSIVE;
  const std::string csv = render_sweep(rep, ReportFormat::Csv);
  CHECK(csv == "level,inf_value,minimizer_norm\n4,1,1\n8,0.5,2\n");
  const nlohmann::json j = nlohmann::json::parse(render_sweep(rep, ReportFormat::Json));
  CHECK(j["levels"].size() == 2);
  CHECK(j["inf_values"][1].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("rendering is deterministic") {
  const Certificate c1 = certify_existence(fixture_problem("bk02"));
  const Certificate c2 = certify_existence(fixture_problem("bk02"));
  CHECK(render_certificate(c1, ReportFormat::Json) ==
        render_certificate(c2, ReportFormat::Json));
  CHECK(render_certificate(c1, ReportFormat::Csv) ==
        render_certificate(c2, ReportFormat::Csv));

  const FixtureResult f1 = run_fixture("legendre_shift");
  const FixtureResult f2 = run_fixture("legendre_shift");
  CHECK(render_fixture(f1, ReportFormat::Json) == render_fixture(f2, ReportFormat::Json));
}

TEST_CASE("numbers render with 12 significant digits") {
  CHECK(fmt_num(0.1171875) == "0.1171875");
  CHECK(fmt_num(1.0) == "1");
  CHECK(fmt_num(-0.999750015625) == "-0.999750015625");
  CHECK(fmt_num(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("fixtures: registry and quick classification fixtures") {
  CHECK(fixture_names().size() == 6);
  CHECK_THROWS_AS(run_fixture("nope"), UnknownFixture);

  const FixtureResult shift = run_fixture("legendre_shift");
  CHECK(shift.ok());
  const FixtureResult mult = run_fixture("mult_operator");
  CHECK(mult.ok());
  for (const auto& fact : shift.facts) CHECK_FALSE(fact.provenance.empty());
  for (const auto& fact : mult.facts) CHECK_FALSE(fact.provenance.empty());
}

TEST_CASE("fixtures: the whole table passes with provenance on every fact") {
  for (const auto& name : fixture_names()) {
    const FixtureResult r = run_fixture(name);
    INFO(render_fixture(r, ReportFormat::Text));
    CHECK(r.ok());
    for (const auto& fact : r.facts) CHECK_FALSE(fact.provenance.empty());
  }
}

}  // TEST_SUITE
