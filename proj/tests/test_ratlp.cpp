#include <optional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lp_oracle.hpp"
#include "toblbox/ratlp.hpp"

using namespace tobl;
using tobl::testing::enumerate_basic_solutions;
using tobl::testing::oracle_agrees;
using tobl::testing::random_lp;

namespace {

Rational q(const std::string& s) { return parse_rational(s); }

// columns[j] lists the m entries of column j, "0" entries included
LinearProgram dense_lp(int m, const std::vector<std::vector<std::string>>& columns,
                       const std::vector<std::string>& rhs,
                       std::optional<std::vector<std::string>> objective = std::nullopt) {
  LinearProgram lp;
  lp.num_rows = m;
  lp.columns.resize(columns.size());
  for (size_t j = 0; j < columns.size(); ++j) {
    REQUIRE(columns[j].size() == static_cast<size_t>(m));
    for (int r = 0; r < m; ++r) lp.columns[j].add(r, q(columns[j][r]));
  }
  lp.rhs = RVec(m);
  for (int r = 0; r < m; ++r) lp.rhs[r] = q(rhs[r]);
  if (objective) {
    RVec c(static_cast<Eigen::Index>(objective->size()));
    for (size_t j = 0; j < objective->size(); ++j) c[static_cast<Eigen::Index>(j)] = q((*objective)[j]);
    lp.objective = std::move(c);
  }
  return lp;
}

}  // namespace

TEST_CASE("one-constraint maximum lands on a vertex") {
  const LinearProgram lp = dense_lp(1, {{"1"}, {"1"}}, {"1"}, {{"1", "0"}});
  const LpOutcome out = solve(lp);
  CHECK(out.status == LpStatus::Optimal);
  CHECK(out.value == 1);
  CHECK(out.primal[0] == 1);
  CHECK(out.primal[1] == 0);
  CHECK(out.dual[0] == 1);
  CHECK(verify_certificate(lp, out));

  const auto verdict = enumerate_basic_solutions(lp);
  CHECK(verdict.feasible);
  CHECK(*verdict.best_value == 1);
}

TEST_CASE("negative right-hand side with nonnegative variables is infeasible") {
  const LinearProgram lp = dense_lp(1, {{"1"}}, {"-1"});
  const LpOutcome out = solve(lp);
  CHECK(out.status == LpStatus::Infeasible);
  CHECK(out.certificate.size() == 1);
  CHECK(out.certificate[0] == -1);
  CHECK(verify_certificate(lp, out));
  CHECK_FALSE(enumerate_basic_solutions(lp).feasible);
}

TEST_CASE("pure feasibility returns a usable point") {
  const LinearProgram lp = dense_lp(2, {{"1", "0"}, {"1", "1"}, {"0", "2"}}, {"1", "2"});
  const LpOutcome out = solve(lp);
  CHECK(out.status == LpStatus::Feasible);
  CHECK(verify_certificate(lp, out));
}

TEST_CASE("fractional coefficients are scaled without changing the problem") {
  // optimum x = (2, 0): the half coefficient must not shrink the rhs
  const LinearProgram lp = dense_lp(1, {{"1/2"}, {"1/3"}}, {"1"}, {{"1", "0"}});
  const LpOutcome out = solve(lp);
  CHECK(out.status == LpStatus::Optimal);
  CHECK(out.value == 2);
  CHECK(out.primal[0] == 2);
  CHECK(verify_certificate(lp, out));
  CHECK(*enumerate_basic_solutions(lp).best_value == 2);

  const LinearProgram lp2 = dense_lp(
      2, {{"1/2", "1/6"}, {"0", "1/3"}, {"1/4", "-1/2"}}, {"3/2", "5/6"}, {{"1", "2", "-1/5"}});
  const LpOutcome out2 = solve(lp2);
  REQUIRE(out2.status == LpStatus::Optimal);
  CHECK(verify_certificate(lp2, out2));
  CHECK(oracle_agrees(lp2, out2));
}

TEST_CASE("unbounded objective is certified by a ray") {
  const LinearProgram lp = dense_lp(1, {{"1"}, {"-1"}}, {"0"}, {{"1", "0"}});
  const LpOutcome out = solve(lp);
  CHECK(out.status == LpStatus::Unbounded);
  CHECK(verify_certificate(lp, out));
  // ray solves x1 - x2 = 0 with positive objective growth
  CHECK(out.ray[0] == out.ray[1]);
  CHECK(out.ray[0] > 0);
}

TEST_CASE("redundant and conflicting duplicate rows") {
  const LinearProgram twice =
      dense_lp(2, {{"1", "1"}, {"1", "1"}}, {"1", "1"}, {{"1", "0"}});
  const LpOutcome out = solve(twice);
  CHECK(out.status == LpStatus::Optimal);
  CHECK(out.value == 1);
  CHECK(verify_certificate(twice, out));

  const LinearProgram clash = dense_lp(2, {{"1", "1"}, {"1", "1"}}, {"1", "2"});
  const LpOutcome bad = solve(clash);
  CHECK(bad.status == LpStatus::Infeasible);
  CHECK(verify_certificate(clash, bad));
}

TEST_CASE("certificate verification rejects tampered outcomes") {
  const LinearProgram lp =
      dense_lp(2, {{"1", "0"}, {"0", "1"}, {"1", "1"}}, {"2", "3"}, {{"1", "1", "1"}});
  LpOutcome out = solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  REQUIRE(verify_certificate(lp, out));

  SUBCASE("shifted value") {
    out.value += 1;
    CHECK_FALSE(verify_certificate(lp, out));
  }
  SUBCASE("zeroed dual") {
    out.dual.setZero();
    CHECK_FALSE(verify_certificate(lp, out));
  }
  SUBCASE("negative primal entry") {
    out.primal[0] = -1;
    CHECK_FALSE(verify_certificate(lp, out));
  }
  SUBCASE("optimal claim without an objective") {
    LinearProgram stripped = lp;
    stripped.objective.reset();
    CHECK_FALSE(verify_certificate(stripped, out));
  }

  const LinearProgram infeas = dense_lp(1, {{"1"}}, {"-1"});
  LpOutcome farkas = solve(infeas);
  REQUIRE(farkas.status == LpStatus::Infeasible);
  SUBCASE("zeroed infeasibility certificate") {
    farkas.certificate.setZero();
    CHECK_FALSE(verify_certificate(infeas, farkas));
  }
  SUBCASE("negated infeasibility certificate") {
    farkas.certificate = -farkas.certificate;
    CHECK_FALSE(verify_certificate(infeas, farkas));
  }

  const LinearProgram unbounded = dense_lp(1, {{"1"}, {"-1"}}, {"0"}, {{"1", "0"}});
  LpOutcome ray = solve(unbounded);
  REQUIRE(ray.status == LpStatus::Unbounded);
  SUBCASE("zeroed ray") {
    ray.ray.setZero();
    CHECK_FALSE(verify_certificate(unbounded, ray));
  }
  SUBCASE("ray violating the homogeneous system") {
    ray.ray[1] = 0;
    CHECK_FALSE(verify_certificate(unbounded, ray));
  }
}

TEST_CASE("random problems agree with exhaustive vertex enumeration") {
  std::mt19937 rng(20240817);
  int optimal = 0, infeasible = 0, unbounded = 0, feasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    CAPTURE(trial);
    const LinearProgram lp = random_lp(rng);

    const LpOutcome bland = solve(lp, {PivotRule::Bland, 0});
    CHECK(oracle_agrees(lp, bland));

    const LpOutcome dantzig = solve(lp, {PivotRule::Dantzig, 0});
    CHECK(oracle_agrees(lp, dantzig));

    CHECK(bland.status == dantzig.status);
    if (bland.status == LpStatus::Optimal) {
      CHECK(bland.value == dantzig.value);
      ++optimal;
    } else if (bland.status == LpStatus::Infeasible) {
      ++infeasible;
    } else if (bland.status == LpStatus::Unbounded) {
      ++unbounded;
    } else {
      ++feasible;
    }
  }
  // the generator must actually exercise every verdict
  CHECK(optimal > 20);
  CHECK(infeasible > 10);
  CHECK(unbounded > 5);
  CHECK(feasible > 10);
}

TEST_CASE("degenerate problems terminate under both pivot rules") {
  std::mt19937 rng(99);
  const int m = 30, n = 120;
  std::uniform_int_distribution<int> coin(0, 99);

  LinearProgram lp;
  lp.num_rows = m;
  RMat a = RMat::Zero(m, n);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) {
      if (coin(rng) < 30) a(r, j) = 1;
    }
  }
  lp.columns.resize(n);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < m; ++r) {
      if (a(r, j) != 0) lp.columns[j].add(r, a(r, j));
    }
  }
  // rhs reachable by a 5-column support: most basics sit at zero
  RVec x0 = RVec::Zero(n);
  for (int j = 0; j < 5; ++j) x0[j * 17] = 1;
  lp.rhs = a * x0;
  RVec c(n);
  std::uniform_int_distribution<int> c_entry(-3, 3);
  for (int j = 0; j < n; ++j) c[j] = c_entry(rng);
  lp.objective = c;

  const LpOutcome bland = solve(lp, {PivotRule::Bland, 0});
  REQUIRE(bland.status == LpStatus::Optimal);
  CHECK(verify_certificate(lp, bland));

  // tiny stall threshold forces the Dantzig run onto the Bland fall-back path
  const LpOutcome dantzig = solve(lp, {PivotRule::Dantzig, 3});
  REQUIRE(dantzig.status == LpStatus::Optimal);
  CHECK(verify_certificate(lp, dantzig));
  CHECK(bland.value == dantzig.value);
}

TEST_CASE("one factorized column set serves many right-hand sides") {
  std::mt19937 rng(4242);
  const int m = 5, n = 9;
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<int> coin(0, 99);

  LinearProgram base;
  base.num_rows = m;
  RMat a = RMat::Zero(m, n);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) {
      if (coin(rng) < 70) a(r, j) = entry(rng);
    }
  }
  base.columns.resize(n);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < m; ++r) {
      if (a(r, j) != 0) base.columns[j].add(r, a(r, j));
    }
  }
  RVec c(n);
  for (int j = 0; j < n; ++j) c[j] = entry(rng);
  base.objective = c;

  SimplexSolver shared(m, base.columns, base.objective);
  CHECK(shared.num_rows() == m);
  CHECK(shared.num_columns() == n);

  for (int trial = 0; trial < 25; ++trial) {
    CAPTURE(trial);
    RVec rhs(m);
    if (coin(rng) < 50) {
      RVec x0 = RVec::Zero(n);
      for (int j = 0; j < n; ++j) {
        if (coin(rng) < 40) x0[j] = std::abs(entry(rng));
      }
      rhs = a * x0;
    } else {
      for (int r = 0; r < m; ++r) rhs[r] = entry(rng);
    }

    LinearProgram fresh = base;
    fresh.rhs = rhs;
    const LpOutcome reused = shared.solve(rhs);
    const LpOutcome scratch = solve(fresh);
    CHECK(reused.status == scratch.status);
    if (reused.status == LpStatus::Optimal) CHECK(reused.value == scratch.value);
    CHECK(oracle_agrees(fresh, reused));
  }
}

TEST_CASE("size mismatches are rejected") {
  LinearProgram lp = dense_lp(1, {{"1"}}, {"1"});
  lp.rhs = RVec::Zero(2);
  CHECK_THROWS_AS(solve(lp), DimensionMismatch);

  LinearProgram bad_obj = dense_lp(1, {{"1"}, {"1"}}, {"1"});
  bad_obj.objective = RVec::Zero(3);
  CHECK_THROWS_AS(solve(bad_obj), DimensionMismatch);

  SparseColumn stray;
  stray.add(2, 1);
  LinearProgram out_of_range;
  out_of_range.num_rows = 2;
  out_of_range.columns.push_back(stray);
  out_of_range.rhs = RVec::Zero(2);
  CHECK_THROWS_AS(solve(out_of_range), DimensionMismatch);

  SparseColumn col;
  col.add(1, 1);
  CHECK_THROWS_AS(col.add(1, 2), DimensionMismatch);
  CHECK_THROWS_AS(col.add(0, 1), DimensionMismatch);
  col.add(3, 0);  // zeros are dropped, not stored
  CHECK(col.entries.size() == 1);
}
