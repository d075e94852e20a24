#include <doctest.h>

#include <cmath>

#include "qpcert/certify.hpp"
#include "qpcert/errors.hpp"
#include "qpcert/fixtures.hpp"
#include "qpcert/rng.hpp"

using namespace qpcert;

TEST_SUITE("certifier") {

TEST_CASE("slater_point: worked values") {
  {
    const Problem p = normalize_problem(fixture_problem("bk02"));
    const Vector x = slater_point(p, 1);  // x3^2/2 - x1 - 1
    CHECK(eval_quadratic(p.constraints[1], x) <= -1e-8);
  }
  {
    Problem p;
    p.space = SpaceDesc::finite(1);
    QuadraticFunction g;
    g.op = Operator{Matrix::diag({2.0}), 0.0};  // g = x^2, min 0
    p.constraints.push_back(g);
    CHECK_THROWS_AS(slater_point(p, 0), NoSlaterPoint);
  }
  {
    const Problem p = normalize_problem(fixture_problem("ell2_solvable"));
    const Vector x = slater_point(p, 0);  // unbounded-below convex constraint
    CHECK(eval_quadratic(p.constraints[0], x) < 0.0);
  }
}

TEST_CASE("check_bounded_below: unconstrained cases") {
  {
    Problem p;  // f = x1
    p.space = SpaceDesc::sequence();
    p.objective.lin = Vector{1.0};
    const BoundednessVerdict b = check_bounded_below(p);
    REQUIRE(b.status == BoundednessVerdict::Status::UNBOUNDED);
    CHECK(b.witness_ray[0] < 0.0);
    CHECK(verify_unbounded(p, b.base_point, b.witness_ray));
  }
  {
    Problem p;  // psd with consistent stationary system
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({1.0, 1.0}), 0.0};
    p.objective.lin = Vector{-1.0, 0.0};
    const BoundednessVerdict b = check_bounded_below(p);
    REQUIRE(b.status == BoundednessVerdict::Status::BOUNDED);
    CHECK(b.lower_bound == doctest::Approx(-0.5));
  }
  {
    Problem p;  // negative curvature
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({-1.0, 1.0}), 0.0};
    const BoundednessVerdict b = check_bounded_below(p);
    REQUIRE(b.status == BoundednessVerdict::Status::UNBOUNDED);
    CHECK(verify_unbounded(p, b.base_point, b.witness_ray));
  }
}

TEST_CASE("check_bounded_below: equality-forced subspace gives an exact bound") {
  const Problem p = fixture_problem("condA_not_necessary");
  const BoundednessVerdict b = check_bounded_below(p);
  REQUIRE(b.status == BoundednessVerdict::Status::BOUNDED);
  CHECK(b.lower_bound == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("check_bounded_below: two-constraint curved descent stays UNKNOWN") {
  const Problem p = fixture_problem("bk02");
  const BoundednessVerdict b = check_bounded_below(p);
  REQUIRE(b.status == BoundednessVerdict::Status::UNKNOWN);
  CHECK(b.best_probe <= -0.9);
  CHECK(b.best_probe >= -1.05);
}

TEST_CASE("check_bounded_below: infeasible problem throws") {
  Problem p;
  p.space = SpaceDesc::finite(1);
  QuadraticFunction g;
  g.op = Operator{Matrix::diag({1.0}), 0.0};
  g.constant = 1.0;  // x^2/2 + 1 <= 0
  p.constraints.push_back(g);
  CHECK_THROWS_AS(check_bounded_below(p), InfeasibleProblem);
}

TEST_CASE("certify: sequence-space instance upgraded by the oracle") {
  const Certificate c = certify_existence(fixture_problem("ell2_solvable"));
  CHECK(c.exists == Certificate::Exists::YES);
  CHECK(c.fired_rule == Certificate::Rule::None);  // upgraded, no rule fired
  REQUIRE(c.witness_value.has_value());
  CHECK(*c.witness_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("certify: bounded-no-solution instance stays UNKNOWN") {
  const Certificate c = certify_existence(fixture_problem("bk02"));
  CHECK(c.exists == Certificate::Exists::UNKNOWN);
  CHECK(c.fired_rule == Certificate::Rule::None);
}

TEST_CASE("certify: violated orthogonality condition with a verified minimizer") {
  const Certificate c = certify_existence(fixture_problem("condA_not_necessary"));
  CHECK(c.exists == Certificate::Exists::YES);
  REQUIRE(c.witness_value.has_value());
  CHECK(*c.witness_value == doctest::Approx(0.0).epsilon(1e-6));
  bool cond_a_violated = false;
  for (const auto& [name, v] : c.hypotheses)
    if (name == "condition_A") cond_a_violated = v.status == Verdict::Status::VIOLATED;
  CHECK(cond_a_violated);
}

TEST_CASE("certify: single-constraint rule fires when the shortcut path is closed") {
  // Legendre objective, bounded, condition A violated, one constraint.
  Problem p;
  p.space = SpaceDesc::sequence();
  p.objective.op = Operator{Matrix::diag({0.0, 0.0}), 1.0};
  QuadraticFunction g;
  g.op = Operator{Matrix::diag({1.0, 0.0}), 0.0};
  g.lin = Vector{0.0, -1.0};
  g.constant = 1.0;
  p.constraints.push_back(g);

  const Certificate c = certify_existence(p);
  CHECK(c.exists == Certificate::Exists::YES);
  CHECK(c.fired_rule == Certificate::Rule::SingleConstraint);
  REQUIRE(c.witness_value.has_value());
  CHECK(*c.witness_value == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("certify: compact closed-range rule covers a non-Legendre objective") {
  Problem p;
  p.space = SpaceDesc::sequence();
  p.objective.lin = Vector{1.0};  // f = x1, zero operator: not Legendre
  QuadraticFunction g;
  g.op = Operator{Matrix::diag({1.0}), 0.0};
  g.lin = Vector{1.0};
  g.constant = 0.0;  // x1^2/2 + x1 <= 0  =>  x1 in [-2, 0]
  p.constraints.push_back(g);

  const Certificate c = certify_existence(p);
  CHECK(c.exists == Certificate::Exists::YES);
  CHECK(c.fired_rule == Certificate::Rule::FW2);
  REQUIRE(c.witness_value.has_value());
  CHECK(*c.witness_value == doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("certify: general-path condition A gives the plain first rule") {
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
  CHECK(c.exists == Certificate::Exists::YES);
  CHECK(c.fired_rule == Certificate::Rule::FW1);
  REQUIRE(c.witness_value.has_value());
  CHECK(*c.witness_value == doctest::Approx(-1.0 - std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("certify: corollary labels for shortcut-settled hypotheses") {
  {
    Problem p;  // unconstrained Legendre objective
    p.space = SpaceDesc::sequence();
    p.objective.op = Operator{Matrix(0, 0), 1.0};
    p.objective.lin = Vector{1.0};
    const Certificate c = certify_existence(p);
    CHECK(c.exists == Certificate::Exists::YES);
    CHECK(c.fired_rule == Certificate::Rule::Corollary4);
    CHECK(*c.witness_value == doctest::Approx(-0.5));
  }
  {
    Problem p;  // one linear constraint
    p.space = SpaceDesc::sequence();
    p.objective.op = Operator{Matrix(0, 0), 1.0};
    p.objective.lin = Vector{1.0};
    QuadraticFunction g;
    g.lin = Vector{1.0};
    p.constraints.push_back(g);  // x1 <= 0
    const Certificate c = certify_existence(p);
    CHECK(c.exists == Certificate::Exists::YES);
    CHECK(c.fired_rule == Certificate::Rule::Corollary1);
  }
  {
    Problem p;  // quadratic constraint with zero linear part
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({1.0, 1.0}), 0.0};
    p.objective.lin = Vector{1.0, 0.0};
    QuadraticFunction g;
    g.op = Operator{Matrix::diag({1.0, 1.0}), 0.0};
    g.constant = -1.0;
    p.constraints.push_back(g);
    const Certificate c = certify_existence(p);
    CHECK(c.exists == Certificate::Exists::YES);
    CHECK(c.fired_rule == Certificate::Rule::Corollary2);
  }
  {
    Problem p;  // definite objective: trivial zero-form set
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({1.0, 2.0}), 0.0};
    QuadraticFunction g;
    g.op = Operator{Matrix::diag({1.0, 0.0}), 0.0};
    g.lin = Vector{0.0, 1.0};
    g.constant = -1.0;
    p.constraints.push_back(g);
    const Certificate c = certify_existence(p);
    CHECK(c.exists == Certificate::Exists::YES);
    CHECK(c.fired_rule == Certificate::Rule::Corollary3);
  }
}

TEST_CASE("certify: unbounded problems get the NO verdict with a verified ray") {
  Problem p;
  p.space = SpaceDesc::finite(2);
  p.objective.op = Operator{Matrix::diag({-1.0, 0.0}), 0.0};
  QuadraticFunction g;
  g.op = Operator{Matrix::diag({0.0, 1.0}), 0.0};
  g.constant = -1.0;
  p.constraints.push_back(g);

  const Analysis a = analyze_problem(p);
  CHECK(a.certificate.exists == Certificate::Exists::NO_UNBOUNDED);
  REQUIRE(a.bounded.status == BoundednessVerdict::Status::UNBOUNDED);
  CHECK(verify_unbounded(a.normalized, a.bounded.base_point, a.bounded.witness_ray));
}

TEST_CASE("certify: redundant zero constraint never changes the verdict") {
  for (const char* name : {"bk02", "condA_not_necessary", "ell2_solvable"}) {
    Problem p = fixture_problem(name);
    const Certificate before = certify_existence(p);
    p.constraints.push_back(QuadraticFunction{});  // 0 <= 0
    const Certificate after = certify_existence(p);
    CHECK(before.exists == after.exists);
    CHECK(before.fired_rule == after.fired_rule);
  }
}

TEST_CASE("certify: infeasible input throws") {
  Problem p;
  p.space = SpaceDesc::finite(1);
  QuadraticFunction g;
  g.op = Operator{Matrix::diag({1.0}), 0.0};
  g.constant = 1.0;
  p.constraints.push_back(g);
  CHECK_THROWS_AS(certify_existence(p), InfeasibleProblem);
}

TEST_CASE("certify: fired rules re-verify their hypothesis sets") {
  Problem p;  // Corollary2 instance from above
  p.space = SpaceDesc::finite(2);
  p.objective.op = Operator{Matrix::diag({1.0, 1.0}), 0.0};
  p.objective.lin = Vector{1.0, 0.0};
  QuadraticFunction g;
  g.op = Operator{Matrix::diag({1.0, 1.0}), 0.0};
  g.constant = -1.0;
  p.constraints.push_back(g);

  const Analysis a1 = analyze_problem(p);
  const Analysis a2 = analyze_problem(p);
  REQUIRE(a1.certificate.exists == Certificate::Exists::YES);
  CHECK(a1.certificate.fired_rule == a2.certificate.fired_rule);
  for (std::size_t i = 0; i < a1.certificate.hypotheses.size(); ++i)
    CHECK(a1.certificate.hypotheses[i].second.status ==
          a2.certificate.hypotheses[i].second.status);
}

}  // TEST_SUITE
