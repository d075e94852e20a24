#include <doctest.h>

#include <cmath>

#include "qpcert/errors.hpp"
#include "qpcert/problem.hpp"
#include "qpcert/rng.hpp"

using namespace qpcert;

namespace {

Operator random_operator(Rng& rng, std::size_t k, double tail) {
  Matrix b(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) b(i, j) = b(j, i) = rng.uniform(-2.0, 2.0);
  return Operator{b, tail};
}

Vector random_vector(Rng& rng, std::size_t d) {
  Vector v = Vector::zeros(d);
  for (std::size_t i = 0; i < d; ++i) v.ref(i) = rng.uniform(-2.0, 2.0);
  return v;
}

Problem example6_variant_small_blocks() {
  // Same data as the 3-d two-constraint instance but with ragged block sizes
  // (2, 3, 3) before normalization.
  Problem p;
  p.space = SpaceDesc::finite(3);
  Matrix t(3, 3);
  t(1, 2) = t(2, 1) = -1.0;
  p.objective.op = Operator{t, 0.0};
  p.objective.lin = Vector{2.0, 0.0, 0.0};
  QuadraticFunction g1;
  g1.op = Operator{Matrix::diag({0.0, 1.0}), 0.0};  // 2x2, pads to diag(0,1,0)
  g1.lin = Vector{-1.0, 0.0, 0.0};
  p.constraints.push_back(g1);
  QuadraticFunction g2;
  g2.op = Operator{Matrix::diag({0.0, 0.0, 1.0}), 0.0};
  g2.lin = Vector{-1.0, 0.0, 0.0};
  g2.constant = -1.0;
  p.constraints.push_back(g2);
  return p;
}

}  // namespace

TEST_SUITE("core_model") {

TEST_CASE("apply_operator: head block plus scalar tail") {
  const Operator t{Matrix::diag({-1.0, 0.0, 1.0, 0.0}), 1.0};
  const Vector x{1.0, 2.0, 0.0, 0.0, 7.0};
  const Vector r = apply_operator(t, x);
  REQUIRE(r.size() == 5);
  CHECK(r[0] == doctest::Approx(-1.0));
  CHECK(r[1] == doctest::Approx(0.0));
  CHECK(r[2] == doctest::Approx(0.0));
  CHECK(r[3] == doctest::Approx(0.0));
  CHECK(r[4] == doctest::Approx(7.0));
}

TEST_CASE("apply_operator: zero vector maps to zero") {
  Rng rng(11);
  const Operator t = random_operator(rng, 3, 0.5);
  const Vector r = apply_operator(t, Vector::zeros(6));
  CHECK(norm(r) == doctest::Approx(0.0));
}

TEST_CASE("apply_operator: plain matrix product") {
  Matrix b(2, 2);
  b(0, 0) = b(1, 1) = 2.0;
  b(0, 1) = b(1, 0) = 1.0;
  const Vector r = apply_operator(Operator{b, 0.0}, Vector{1.0, 1.0});
  CHECK(r[0] == doctest::Approx(3.0));
  CHECK(r[1] == doctest::Approx(3.0));
}

TEST_CASE("apply_operator: linearity and self-adjointness on random data") {
  Rng rng(42);
  for (int it = 0; it < 50; ++it) {
    const Operator t = random_operator(rng, 4, rng.uniform(-1.0, 1.0));
    const Vector x = random_vector(rng, 6);
    const Vector y = random_vector(rng, 6);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);

    const Vector lhs = apply_operator(t, axpy(a, x, b * y));
    const Vector rhs = axpy(a, apply_operator(t, x), b * apply_operator(t, y));
    const double scale = std::max(1.0, norm(lhs));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * scale);

    const double ad1 = dot(x, apply_operator(t, y));
    const double ad2 = dot(apply_operator(t, x), y);
    CHECK(std::fabs(ad1 - ad2) <= 1e-12 * std::max(1.0, std::fabs(ad1)));
  }
}

TEST_CASE("eval_quadratic: worked values") {
  QuadraticFunction f;
  f.op = Operator{Matrix::diag({-1.0, 0.0, 1.0, 0.0}), 1.0};
  f.lin = Vector{0.0, 1.0, 1.0};
  CHECK(eval_quadratic(f, Vector{0.0, 1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(eval_quadratic(f, Vector{1.0, 2.0, 0.0}) == doctest::Approx(1.5));

  QuadraticFunction constant;
  constant.constant = 3.25;
  CHECK(eval_quadratic(constant, Vector{9.0, -2.0}) == doctest::Approx(3.25));
}

TEST_CASE("normalize_problem: ragged blocks to a common head") {
  const Problem p = example6_variant_small_blocks();
  const Problem q = normalize_problem(p);
  CHECK(head_dim(q) == 3);
  CHECK(q.constraints[0].op.head_dim() == 3);

  Rng rng(7);
  for (int it = 0; it < 100; ++it) {
    const Vector x = random_vector(rng, 3);
    CHECK(eval_quadratic(p.objective, x) ==
          doctest::Approx(eval_quadratic(q.objective, x)).epsilon(1e-12));
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
      CHECK(eval_quadratic(p.constraints[i], x) ==
            doctest::Approx(eval_quadratic(q.constraints[i], x)).epsilon(1e-12));
  }
}

TEST_CASE("normalize_problem: sequence-space padding preserves values beyond head") {
  Problem p;
  p.space = SpaceDesc::sequence();
  p.objective.op = Operator{Matrix::diag({2.0}), 0.5};
  p.objective.lin = Vector{0.0, 0.0, 0.0, 1.0};  // forces K = 4
  const Problem q = normalize_problem(p);
  CHECK(head_dim(q) == 4);
  Rng rng(3);
  for (int it = 0; it < 100; ++it) {
    const Vector x = random_vector(rng, 7);
    CHECK(eval_quadratic(p.objective, x) ==
          doctest::Approx(eval_quadratic(q.objective, x)).epsilon(1e-12));
  }
}

TEST_CASE("normalize_problem: idempotent on uniform problems") {
  const Problem q = normalize_problem(example6_variant_small_blocks());
  const Problem q2 = normalize_problem(q);
  CHECK(max_abs_diff(q.objective.op.block, q2.objective.op.block) == 0.0);
  CHECK(max_abs_diff(q.constraints[0].op.block, q2.constraints[0].op.block) == 0.0);
}

TEST_CASE("normalize_problem: finite space bound violations") {
  Problem p;
  p.space = SpaceDesc::finite(3);
  p.objective.lin = Vector{0.0, 0.0, 0.0, 0.0, 1.0};  // dim-5 vector
  CHECK_THROWS_AS(normalize_problem(p), InvalidDimension);
}

TEST_CASE("normalize_problem: pad cap") {
  Problem p;
  p.space = SpaceDesc::sequence();
  p.objective.lin = Vector::unit(5000, 4999);
  CHECK_THROWS_AS(normalize_problem(p), PadOverflow);
  CHECK_NOTHROW(normalize_problem(p, 6000));
}

TEST_CASE("validate_problem: psd and symmetry screening") {
  Problem ok;
  ok.space = SpaceDesc::finite(3);
  ok.objective.lin = Vector{2.0, 0.0, 0.0};
  QuadraticFunction g1;
  g1.op = Operator{Matrix::diag({0.0, 1.0, 0.0}), 0.0};
  ok.constraints.push_back(g1);
  QuadraticFunction g2;
  g2.op = Operator{Matrix::diag({0.0, 0.0, 1.0}), 0.0};
  ok.constraints.push_back(g2);
  CHECK(validate_problem(ok).ok());

  Problem bad = ok;
  bad.constraints[0].op = Operator{Matrix::diag({-1.0, 0.0, 0.0}), 0.0};
  const ValidationReport rep = validate_problem(bad);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& issue : rep.issues)
    if (issue.kind == ValidationIssue::Kind::NotPsdConstraint) {
      found = true;
      CHECK(issue.value == doctest::Approx(-1.0));
    }
  CHECK(found);

  Problem asym = ok;
  Matrix a(2, 2);
  a(0, 1) = 1.0;  // not symmetric
  asym.constraints[0].op = Operator{a, 0.0};
  const ValidationReport rep2 = validate_problem(asym);
  REQUIRE_FALSE(rep2.ok());
  CHECK(rep2.issues.front().kind == ValidationIssue::Kind::Asymmetric);
}

TEST_CASE("accepted constraints are convex (midpoint inequality on random data)") {
  Rng rng(99);
  for (int it = 0; it < 20; ++it) {
    // psd by construction: M^T M head with nonnegative tail
    Matrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    QuadraticFunction g;
    g.op = Operator{matmul(transpose(m), m), rng.uniform(0.0, 1.0)};
    g.lin = random_vector(rng, 4);
    g.constant = rng.uniform(-1.0, 1.0);
    for (int pt = 0; pt < 10; ++pt) {
      const Vector x = random_vector(rng, 5);
      const Vector y = random_vector(rng, 5);
      const Vector mid = 0.5 * (x + y);
      CHECK(eval_quadratic(g, mid) <=
            0.5 * (eval_quadratic(g, x) + eval_quadratic(g, y)) + 1e-9);
    }
  }
}

TEST_CASE("index sets split on the zero-operator test") {
  Problem p;
  p.space = SpaceDesc::sequence();
  QuadraticFunction lin_only;
  lin_only.lin = Vector{1.0};
  p.constraints.push_back(lin_only);
  QuadraticFunction quad;
  quad.op = Operator{Matrix::diag({1.0}), 0.0};
  p.constraints.push_back(quad);
  const IndexSets is = index_sets(p);
  REQUIRE(is.zero_op.size() == 1);
  REQUIRE(is.nonzero_op.size() == 1);
  CHECK(is.zero_op[0] == 0);
  CHECK(is.nonzero_op[0] == 1);
}

TEST_CASE("vacuous constraints are dropped") {
  Problem p;
  p.space = SpaceDesc::finite(2);
  p.constraints.push_back(QuadraticFunction{});  // 0 <= 0
  QuadraticFunction real;
  real.lin = Vector{1.0};
  p.constraints.push_back(real);
  const Problem q = drop_vacuous_constraints(p);
  CHECK(q.m() == 1);
  CHECK(support_dim(q.constraints[0].lin) == 1);
}

}  // TEST_SUITE
