#include <doctest.h>

#include "qpcert/simplex.hpp"

using namespace qpcert;

TEST_SUITE("simplex") {

TEST_CASE("simplex_max: textbook 2-variable program") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
  Matrix a(3, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  a(2, 0) = 3.0;
  a(2, 1) = 2.0;
  const LpResult r = simplex_max(Vector{3.0, 5.0}, a, Vector{4.0, 12.0, 18.0});
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.value == doctest::Approx(36.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(6.0));
}

TEST_CASE("simplex_max: unbounded direction detected") {
  Matrix a(1, 2);
  a(0, 0) = 1.0;  // x <= 1, y unconstrained above
  const LpResult r = simplex_max(Vector{0.0, 1.0}, a, Vector{1.0});
  CHECK(r.status == LpResult::Status::Unbounded);
}

TEST_CASE("simplex_max: degenerate rows do not cycle (Bland)") {
  // Origin-degenerate: two rows active at 0.
  Matrix a(3, 2);
  a(0, 0) = 1.0;
  a(0, 1) = -1.0;
  a(1, 0) = -1.0;
  a(1, 1) = 1.0;
  a(2, 0) = 1.0;
  a(2, 1) = 1.0;
  const LpResult r = simplex_max(Vector{1.0, 1.0}, a, Vector{0.0, 0.0, 2.0});
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.value == doctest::Approx(2.0));
}

TEST_CASE("lp_max_free: free variables via the split") {
  // max -x over -1 <= x <= 1   (free x)
  Matrix a(2, 1);
  a(0, 0) = 1.0;
  a(1, 0) = -1.0;
  const LpResult r = lp_max_free(Vector{-1.0}, a, Vector{1.0, 1.0});
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.x[0] == doctest::Approx(-1.0));
}

}  // TEST_SUITE
