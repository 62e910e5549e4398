#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "toblbox/errors.hpp"
#include "toblbox/rational.hpp"

namespace tobl {

// One constraint-matrix column; entries are (row, value) with strictly
// ascending rows.
struct SparseColumn {
  std::vector<std::pair<int, Rational>> entries;

  void add(int row, Rational value) {
    if (!entries.empty() && row <= entries.back().first) {
      throw DimensionMismatch("column entries must have strictly ascending rows");
    }
    if (value != 0) entries.emplace_back(row, std::move(value));
  }
};

// max objective·x subject to A·x = rhs, x ≥ 0. Without an objective the
// problem is pure feasibility.
struct LinearProgram {
  int num_rows = 0;
  std::vector<SparseColumn> columns;
  RVec rhs;
  std::optional<RVec> objective;
};

enum class LpStatus { Optimal, Feasible, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status;
  Rational value;   // Optimal
  RVec primal;      // Optimal / Feasible / Unbounded (feasible point)
  RVec dual;        // Optimal: y with Aᵀy ≥ c and rhs·y = value
  RVec certificate; // Infeasible: y with yᵀA ≤ 0 and yᵀ·rhs > 0
  RVec ray;         // Unbounded: d ≥ 0 with A·d = 0 and objective·d > 0
};

// Bland: lowest-index entering column (never cycles). Dantzig: steepest
// reduced cost under rotating partial pricing (optimality is still only
// declared after a full scan finds no candidate), with a permanent fall-back
// to Bland after a long run of degenerate pivots, so termination is still
// guaranteed.
enum class PivotRule { Bland, Dantzig };

struct SolveOptions {
  PivotRule rule = PivotRule::Bland;
  int stall_switch = 0;  // 0 = automatic threshold for the Dantzig fall-back
};

/// Two-phase primal simplex over exact rationals; deterministic for fixed
/// options. DimensionMismatch on inconsistent sizes.
LpOutcome solve(const LinearProgram& lp, const SolveOptions& options = {});

/// Re-checks the outcome's claims against the LP data, independently of the
/// solver: feasibility, optimality via the dual, Farkas sign conditions, or
/// the unbounded ray's conditions.
bool verify_certificate(const LinearProgram& lp, const LpOutcome& outcome);

// Scales a fixed column set to integers once and solves against many
// right-hand sides; this is what membership testing campaigns hit in a loop.
class SimplexSolver {
 public:
  SimplexSolver(int num_rows, std::vector<SparseColumn> columns, std::optional<RVec> objective,
                SolveOptions options = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  LpOutcome solve(const RVec& rhs);

  int num_rows() const;
  int num_columns() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tobl
