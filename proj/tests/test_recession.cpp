#include <doctest.h>

#include <cmath>

#include "qpcert/certify.hpp"
#include "qpcert/feasibility.hpp"
#include "qpcert/fixtures.hpp"
#include "qpcert/recession.hpp"
#include "qpcert/rng.hpp"

using namespace qpcert;

namespace {

Problem fixture(const std::string& name) {
  return normalize_problem(fixture_problem(name));
}

// <v, T v> on the full vector including tail coordinates.
double form_value(const Problem& p, const Vector& v) {
  return quad_value(p.objective.op, v);
}

}  // namespace

TEST_SUITE("recession") {

TEST_CASE("cone: two-quadratic 3-d instance matches the displayed set") {
  const Problem p = fixture("bk02");
  const ConeAnalysis ca = analyze_cone(p);

  CHECK(membership(ca.cone, Vector{1.0, 0.0, 0.0}));
  CHECK(membership(ca.cone, Vector{5.0, 0.0, 0.0}));
  CHECK(membership(ca.cone, Vector::zeros(3)));  // 0 in every cone
  CHECK_FALSE(membership(ca.cone, Vector{-1.0, 0.0, 0.0}));
  CHECK_FALSE(membership(ca.cone, Vector{0.0, 1.0, 0.0}));
  CHECK_FALSE(membership(ca.cone, Vector{0.0, 0.0, 1.0}));
  CHECK_FALSE(membership(ca.cone, Vector{1.0, 0.5, 0.0}));
}

TEST_CASE("cone: sequence-space instance keeps its free coordinates") {
  const Problem p = fixture("ell2_solvable");
  const ConeAnalysis ca = analyze_cone(p);

  CHECK(ca.cone.tail_free);
  CHECK(membership(ca.cone, Vector{0.0, 1.0, 0.0, 0.0}));
  CHECK(membership(ca.cone, Vector{0.0, 0.0, 0.0, 1.0}));
  CHECK(membership(ca.cone, Vector{0.0, 0.0, 0.0, -1.0}));
  CHECK(membership(ca.cone, Vector{0.0, 2.0, 0.0, -3.0, 4.0}));  // tail coordinate free
  CHECK_FALSE(membership(ca.cone, Vector{1.0, 0.0, 0.0, 0.0}));
  CHECK_FALSE(membership(ca.cone, Vector{0.0, -1.0, 0.0, 0.0}));
  CHECK_FALSE(membership(ca.cone, Vector{0.0, 0.0, 1.0, 0.0}));
}

TEST_CASE("cone: no constraints means the whole space") {
  Problem p;
  p.space = SpaceDesc::sequence();
  p.objective.op = Operator{Matrix::diag({1.0, -1.0}), 0.0};
  const ConeAnalysis ca = analyze_cone(normalize_problem(p));
  CHECK(ca.cone.tail_free);
  CHECK(ca.cone.span_dim() == 2);
  Rng rng(4);
  for (int it = 0; it < 20; ++it) {
    Vector v = Vector::zeros(5);
    for (std::size_t i = 0; i < 5; ++i) v.ref(i) = rng.uniform(-3.0, 3.0);
    CHECK(membership(ca.cone, v));
  }
}

TEST_CASE("zero_form_set: worked classifications") {
  // 3-d instance: reduced form [0] on span{e1}, psd, zero set = whole cone
  {
    const Problem p = fixture("bk02");
    const ConeAnalysis ca = analyze_cone(p);
    CHECK(ca.zero_set.classification == ZeroFormSet::Classification::PsdOnSpan);
    CHECK(ca.zero_set.zero_subspace_basis.cols() == ca.cone.span_dim());
  }
  // sequence instance with cone = zero set = half-line
  {
    const Problem p = fixture("condA_not_necessary");
    const ConeAnalysis ca = analyze_cone(p);
    CHECK_FALSE(ca.cone.tail_free);
    CHECK(ca.zero_set.classification == ZeroFormSet::Classification::PsdOnSpan);
    const GeneratorSet gens = zero_set_generators(ca);
    REQUIRE(gens.rays.size() == 1);
    CHECK(gens.complete);
    CHECK(gens.rays[0][0] < 0.0);  // the -e1 ray
  }
  // definite form: zero set only the origin
  {
    Problem p;
    p.space = SpaceDesc::sequence();
    p.objective.op = Operator{Matrix::diag({2.0, 1.0}), 1.0};
    QuadraticFunction g;
    g.op = Operator{Matrix::diag({0.0, 1.0}), 0.0};
    g.lin = Vector{1.0};
    p.constraints.push_back(g);
    const ConeAnalysis ca = analyze_cone(normalize_problem(p));
    const ZeroFormSet& z = ca.zero_set;
    CHECK(z.classification == ZeroFormSet::Classification::PsdOnSpan);
    CHECK(z.zero_subspace_basis.cols() == 0);
    CHECK_FALSE(z.tail_in_zero_set);
  }
}

TEST_CASE("zero set of a psd reduced form is exactly the kernel (sampled)") {
  // Cone span {e2, e3} with reduced objective form diag(0, 2): psd with a
  // one-dimensional kernel.
  Problem p;
  p.space = SpaceDesc::sequence();
  p.objective.op = Operator{Matrix::diag({0.0, 0.0, 2.0}), 1.0};
  QuadraticFunction g;
  g.op = Operator{Matrix::diag({1.0, 0.0, 0.0}), 0.0};
  g.lin = Vector{0.0, -1.0, 0.0};
  g.constant = 0.0;
  p.constraints.push_back(g);
  p = normalize_problem(p);
  const ConeAnalysis ca = analyze_cone(p);
  REQUIRE(ca.zero_set.classification == ZeroFormSet::Classification::PsdOnSpan);
  const Matrix& q = ca.zero_set.reduced_form;
  Rng rng(17);
  int nontrivial = 0;
  for (int it = 0; it < 1000; ++it) {
    Vector u = Vector::zeros(q.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) u.ref(i) = rng.uniform(-2.0, 2.0);
    const Vector qu = matvec(q, u);
    if (norm(qu) <= 1e-9) continue;
    ++nontrivial;
    double val = dot(u, qu);
    CHECK(val > 0.0);
  }
  CHECK(nontrivial > 0);
}

TEST_CASE("condition A: worked verdicts") {
  {
    const Problem p = fixture("bk02");
    const CondAResult r = check_condition_A(p);
    REQUIRE(r.verdict.status == Verdict::Status::VIOLATED);
    REQUIRE(r.verdict.witness.has_value());
    const Vector& w = *r.verdict.witness;
    // witness is the v1-axis ray scaled to unit inf norm
    CHECK(std::fabs(w[0]) == doctest::Approx(1.0));
    CHECK(std::fabs(w[1]) <= 1e-9);
    CHECK(std::fabs(w[2]) <= 1e-9);
    CHECK(dot(p.constraints[0].lin, w) == doctest::Approx(-1.0).epsilon(1e-6));
  }
  {
    const Problem p = fixture("condA_not_necessary");
    const CondAResult r = check_condition_A(p);
    REQUIRE(r.verdict.status == Verdict::Status::VIOLATED);
    REQUIRE(r.verdict.witness.has_value());
    const Vector& w = *r.verdict.witness;
    CHECK(w[0] == doctest::Approx(-1.0));
    CHECK(dot(p.constraints[1].lin, w) == doctest::Approx(-1.0).epsilon(1e-6));
  }
  {
    Problem p;  // unconstrained: no quadratic constraints at all
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({1.0, -1.0}), 0.0};
    const CondAResult r = check_condition_A(normalize_problem(p));
    CHECK(r.verdict.status == Verdict::Status::HOLDS);
    CHECK(r.shortcut == CondAShortcut::NoQuadraticConstraints);
  }
}

TEST_CASE("condition A: zero-linear and trivial-zero-set shortcuts") {
  {
    Problem p;
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({0.0, -1.0}), 0.0};
    QuadraticFunction g;
    g.op = Operator{Matrix::diag({1.0, 0.0}), 0.0};
    g.constant = -1.0;  // x1^2/2 <= 1, c1 = 0
    p.constraints.push_back(g);
    const CondAResult r = check_condition_A(normalize_problem(p));
    CHECK(r.verdict.status == Verdict::Status::HOLDS);
    CHECK(r.shortcut == CondAShortcut::ZeroLinearOnI1);
  }
  {
    Problem p;
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({1.0, 1.0}), 0.0};  // definite objective
    QuadraticFunction g;
    g.op = Operator{Matrix::diag({1.0, 0.0}), 0.0};
    g.lin = Vector{0.0, 1.0};
    g.constant = -1.0;
    p.constraints.push_back(g);
    const CondAResult r = check_condition_A(normalize_problem(p));
    CHECK(r.verdict.status == Verdict::Status::HOLDS);
    CHECK(r.shortcut == CondAShortcut::TrivialZeroSet);
  }
}

TEST_CASE("condition A: violated witnesses re-verify") {
  for (const char* name : {"bk02", "condA_not_necessary", "ell2_solvable"}) {
    const Problem p = fixture(name);
    const ConeAnalysis ca = analyze_cone(p);
    const CondAResult r = check_condition_A(p, ca);
    REQUIRE(r.verdict.status == Verdict::Status::VIOLATED);
    REQUIRE(r.verdict.witness.has_value());
    REQUIRE(r.violated_constraint >= 0);
    const Vector& w = *r.verdict.witness;
    CHECK(membership(ca.cone, w));
    CHECK(std::fabs(form_value(p, w)) <= 1e-8 * std::max(1.0, norm_sq(w)));
    CHECK(std::fabs(dot(p.constraints[r.violated_constraint].lin, w)) > 1e-8);
  }
}

TEST_CASE("cone soundness: feasible points stay feasible along sampled rays") {
  Rng seed_gen(2024);
  std::vector<Problem> probs;
  for (const char* name : {"bk02", "condA_not_necessary", "ell2_solvable"})
    probs.push_back(fixture(name));
  for (int it = 0; it < 20; ++it) {
    // random psd-constrained problems with feasible origin
    Problem p;
    p.space = SpaceDesc::finite(3);
    Matrix t(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j)
        t(i, j) = t(j, i) = seed_gen.uniform(-2.0, 2.0);
    p.objective.op = Operator{t, 0.0};
    for (int c = 0; c < 2; ++c) {
      Matrix m(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = seed_gen.uniform(-1.0, 1.0);
      // rank-deficient sometimes: zero out a row pair
      if (seed_gen.below(2) == 0)
        for (std::size_t j = 0; j < 3; ++j) m(0, j) = 0.0;
      QuadraticFunction g;
      g.op = Operator{matmul(transpose(m), m), 0.0};
      g.lin = Vector{seed_gen.uniform(-1.0, 1.0), seed_gen.uniform(-1.0, 1.0),
                     seed_gen.uniform(-1.0, 1.0)};
      g.constant = seed_gen.uniform(-2.0, -0.5);  // origin strictly feasible
      p.constraints.push_back(g);
    }
    probs.push_back(normalize_problem(p));
  }

  int checked = 0;
  for (const Problem& p : probs) {
    const ConeAnalysis ca = analyze_cone(p);
    const auto anchor = find_feasible_point(p);
    REQUIRE(anchor.has_value());
    const auto xs = feasible_samples(p, *anchor, 3.0, 10, 555);
    const auto rays = sample_cone_rays(ca.cone, 8, 777);
    for (const Vector& x : xs)
      for (const Vector& v : rays)
        for (double t : {1.0, 10.0, 100.0}) {
          const Vector y = axpy(t, v, x);
          for (const auto& g : p.constraints) {
            CHECK(eval_quadratic(g, y) <= 1e-6 * std::max(1.0, norm_sq(y)));
            ++checked;
          }
        }
  }
  CHECK(checked >= 200);
}

TEST_CASE("eaves conditions: worked verdicts") {
  {
    const Problem p = fixture("condA_not_necessary");
    const EavesResult r = check_eaves(p);
    CHECK(r.cond_ii.status == Verdict::Status::HOLDS);
    CHECK(r.cond_iii.status == Verdict::Status::HOLDS);
  }
  {
    const Problem p = fixture("bk02");
    const EavesResult r = check_eaves(p);
    CHECK(r.cond_ii.status == Verdict::Status::HOLDS);  // reduced form is [0]
  }
  {
    Problem p;  // psd objective, no constraints
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({1.0, 2.0}), 0.0};
    const EavesResult r = check_eaves(normalize_problem(p));
    CHECK(r.cond_ii.status == Verdict::Status::HOLDS);
  }
  {
    // cond_ii violated: negative form direction inside the cone
    Problem p;
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({-1.0, 0.0}), 0.0};
    QuadraticFunction g;
    g.op = Operator{Matrix::diag({0.0, 1.0}), 0.0};
    g.constant = -1.0;
    p.constraints.push_back(g);
    const EavesResult r = check_eaves(normalize_problem(p));
    REQUIRE(r.cond_ii.status == Verdict::Status::VIOLATED);
    REQUIRE(r.cond_ii.witness.has_value());
    CHECK(form_value(p, *r.cond_ii.witness) < 0.0);
  }
  {
    // cond_iii violated: T v = 0 with <c, v> < 0 on a zero-form ray
    Problem p;
    p.space = SpaceDesc::finite(2);
    p.objective.op = Operator{Matrix::diag({0.0, 1.0}), 0.0};
    p.objective.lin = Vector{1.0, 0.0};
    QuadraticFunction g;
    g.op = Operator{Matrix::diag({0.0, 1.0}), 0.0};
    g.constant = -1.0;
    p.constraints.push_back(g);
    const EavesResult r = check_eaves(normalize_problem(p));
    REQUIRE(r.cond_iii.status == Verdict::Status::VIOLATED);
    REQUIRE(r.cond_iii.witness.has_value());
    CHECK(dot(p.objective.lin, *r.cond_iii.witness) < 0.0);
  }
}

}  // TEST_SUITE
