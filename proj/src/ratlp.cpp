#include "toblbox/ratlp.hpp"

#include <cassert>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tobl {

namespace {

// Set TOBL_LP_TRACE=1 to watch pivot counts and determinant growth on
// stderr; diagnostic only, no effect on results.
bool trace_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("TOBL_LP_TRACE");
    return v && *v && *v != '0';
  }();
  return on;
}

void exact_div_big(Integer& value, const Integer& den) {
  assert(value % den == 0);
  mpz_divexact(value.backend().data(), value.backend().data(), den.backend().data());
}

// Thrown by the word-sized ring when a value leaves its safe range; the
// solver then redoes the whole solve in arbitrary precision.
struct RingOverflow {};

// Stored values stay ≤ 2^56 so that dot products of up to 2^14 terms fit in
// __int128 with room to spare.
constexpr long long kSmallLimit = 1LL << 56;
constexpr int kSmallMaxRows = 1 << 14;

// The fraction-free simplex below is generic over an exact integer ring:
// Int is the stored type, Wide the accumulator for dot products.
struct SmallRing {
  using Int = long long;
  using Wide = __int128;

  static Rational to_rational(Int v) { return Rational(v); }
  static void wide_addmul(Wide& acc, Int a, Int b) { acc += static_cast<Wide>(a) * b; }
  static void wide_submul(Wide& acc, Int a, Int b) { acc -= static_cast<Wide>(a) * b; }
  static Wide widen_product(Int a, Int b) { return static_cast<Wide>(a) * b; }
  static Int narrow(Wide v) {
    if (v > kSmallLimit || v < -kSmallLimit) throw RingOverflow{};
    return static_cast<Int>(v);
  }
  // (p·a − u·b) / d, exact by the fraction-free invariant
  static Int pivot_combine(Int p, Int a, Int u, Int b, Int d) {
    Wide t = static_cast<Wide>(p) * a - static_cast<Wide>(u) * b;
    if (d != 1) {
      assert(t % d == 0);
      t /= d;
    }
    return narrow(t);
  }
  static Int scale_div(Int a, Int p, Int d) {
    Wide t = static_cast<Wide>(a) * p;
    if (d != 1) {
      assert(t % d == 0);
      t /= d;
    }
    return narrow(t);
  }
  static size_t bits(Int v) {
    size_t b = 0;
    unsigned long long a = v < 0 ? -static_cast<unsigned long long>(v) : v;
    while (a) ++b, a >>= 1;
    return b;
  }
};

struct BigRing {
  using Int = Integer;
  using Wide = Integer;

  static Rational to_rational(const Int& v) { return Rational(v); }
  static void wide_addmul(Wide& acc, const Int& a, const Int& b) {
    mpz_addmul(acc.backend().data(), a.backend().data(), b.backend().data());
  }
  static void wide_submul(Wide& acc, const Int& a, const Int& b) {
    mpz_submul(acc.backend().data(), a.backend().data(), b.backend().data());
  }
  static Wide widen_product(const Int& a, const Int& b) { return a * b; }
  static Int narrow(Wide v) { return v; }
  static Int pivot_combine(const Int& p, const Int& a, const Int& u, const Int& b, const Int& d) {
    Integer t = p * a;
    mpz_submul(t.backend().data(), u.backend().data(), b.backend().data());
    exact_div_big(t, d);
    return t;
  }
  static Int scale_div(const Int& a, const Int& p, const Int& d) {
    Integer t = a * p;
    exact_div_big(t, d);
    return t;
  }
  static size_t bits(const Int& v) { return mpz_sizeinbase(v.backend().data(), 2); }
};

enum class PhaseEnd { Optimal, Unbounded };

// Two-phase primal simplex keeping the exact basis inverse as N/delta with
// integral N and delta > 0 (fraction-free updates); basic variable values
// stay rational so the same scaled column set serves any right-hand side.
// Output is in the scaled row space; the owner undoes row/objective scaling.
template <class Ring>
struct Core {
  using Int = typename Ring::Int;
  using Wide = typename Ring::Wide;

  int m = 0;
  int n = 0;
  SolveOptions options;
  bool maximize = false;
  // columns in compressed form; col_unit marks all-ones columns, whose
  // reduced costs are plain gather-sums
  std::vector<int> col_start;
  std::vector<int> col_row;
  std::vector<Int> col_val;
  std::vector<char> col_unit;
  std::vector<Int> cost;

  std::vector<Int> N;  // m×m row-major; N/delta is the basis inverse
  Int delta{1};
  RVec xB;
  std::vector<int> basis;  // artificial for row r is n + r
  std::vector<char> is_basic;
  std::vector<char> inert;  // rows pinned by redundancy, untouched by pricing
  std::vector<Int> Y;       // Nᵀ·(basic costs) for the current phase
  std::vector<Int> u;       // N·(entering column)
  std::vector<Wide> acc;
  PivotRule active_rule = PivotRule::Bland;
  int stall = 0;
  int stall_limit = 0;
  int cursor = 0;  // where Dantzig partial pricing resumes its scan
  int ray_entering = -1;

  Int& at(int i, int k) { return N[static_cast<size_t>(i) * m + k]; }

  void compute_u(int q) {
    for (int i = 0; i < m; ++i) acc[i] = 0;
    for (int e = col_start[q]; e < col_start[q + 1]; ++e) {
      const int row = col_row[e];
      for (int i = 0; i < m; ++i) Ring::wide_addmul(acc[i], col_val[e], at(i, row));
    }
    for (int i = 0; i < m; ++i) u[i] = Ring::narrow(std::move(acc[i]));
  }

  // Basic costs are derived from the basis each time: phase 1 charges
  // artificials −1, phase 2 uses the scaled objective on structurals.
  void compute_Y(bool phase_one) {
    for (int k = 0; k < m; ++k) acc[k] = 0;
    for (int r = 0; r < m; ++r) {
      const Int c = phase_one ? Int(basis[r] >= n ? -1 : 0)
                              : (basis[r] < n ? cost[basis[r]] : Int(0));
      if (c == 0) continue;
      for (int k = 0; k < m; ++k) Ring::wide_addmul(acc[k], c, at(r, k));
    }
    for (int k = 0; k < m; ++k) Y[k] = Ring::narrow(std::move(acc[k]));
  }

  // Reduced cost of column j times delta; delta > 0 keeps the sign honest.
  Wide scaled_reduced_cost(int j, bool phase_one) {
    Wide rc = phase_one ? Wide(0) : Ring::widen_product(cost[j], delta);
    const int lo = col_start[j];
    const int hi = col_start[j + 1];
    if (col_unit[j]) {
      for (int e = lo; e < hi; ++e) rc -= Y[col_row[e]];
    } else {
      for (int e = lo; e < hi; ++e) Ring::wide_submul(rc, col_val[e], Y[col_row[e]]);
    }
    return rc;
  }

  void pivot(int r, int q) {
    const Int p = u[r];
    assert(p != 0);

    const Rational xr = xB[r];
    const Rational rp = Ring::to_rational(p);
    for (int i = 0; i < m; ++i) {
      if (i == r || u[i] == 0) continue;
      xB[i] -= xr * Ring::to_rational(u[i]) / rp;
    }
    xB[r] = xr * Ring::to_rational(delta) / rp;

    // rows other than the pivot row become (p·row − u_i·pivot_row)/delta;
    // the pivot row is kept and the denominator becomes p
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      if (u[i] == 0) {
        if (p == delta) continue;
        for (int k = 0; k < m; ++k) at(i, k) = Ring::scale_div(at(i, k), p, delta);
      } else {
        for (int k = 0; k < m; ++k) {
          at(i, k) = Ring::pivot_combine(p, at(i, k), u[i], at(r, k), delta);
        }
      }
    }
    if (basis[r] < n) is_basic[basis[r]] = 0;
    basis[r] = q;
    is_basic[q] = 1;
    delta = p;
    if (delta < 0) {
      delta = -delta;
      for (Int& v : N) v = -v;
    }
  }

  PhaseEnd run(bool phase_one) {
    long long pivots = 0;
    double t_y = 0, t_price = 0, t_u = 0, t_ratio = 0, t_pivot = 0;
    const auto now = [] { return std::chrono::steady_clock::now(); };
    const auto lap = [&](auto& since, double& bucket) {
      if (!trace_enabled()) return;
      auto t = now();
      bucket += std::chrono::duration<double>(t - since).count();
      since = t;
    };
    auto mark = now();
    while (true) {
      if (trace_enabled() && pivots % 500 == 0 && pivots > 0) {
        std::fprintf(stderr,
                     "[lp] phase%d m=%d n=%d pivots=%lld delta_bits=%zu "
                     "Y=%.2f price=%.2f u=%.2f ratio=%.2f pivot=%.2f\n",
                     phase_one ? 1 : 2, m, n, pivots, Ring::bits(delta), t_y, t_price, t_u,
                     t_ratio, t_pivot);
      }
      ++pivots;
      mark = now();
      compute_Y(phase_one);
      lap(mark, t_y);
      int entering = -1;
      if (active_rule == PivotRule::Bland) {
        for (int j = 0; j < n; ++j) {
          if (is_basic[j]) continue;
          if (scaled_reduced_cost(j, phase_one) > 0) {
            entering = j;
            break;
          }
        }
      } else {
        // Partial pricing: best positive reduced cost within the first
        // window that has one, resuming where the last scan stopped. A full
        // wrap with no hit is a genuine optimality proof.
        constexpr int kWindow = 2048;
        Wide best_rc{};
        int seen = 0;
        for (int step = 0; step < n; ++step) {
          int j = cursor + step;
          if (j >= n) j -= n;
          ++seen;
          if (is_basic[j]) continue;
          Wide rc = scaled_reduced_cost(j, phase_one);
          if (rc > 0 && (entering < 0 || rc > best_rc)) {
            entering = j;
            best_rc = std::move(rc);
          }
          if (entering >= 0 && seen >= kWindow) break;
        }
        if (entering >= 0) cursor = entering + 1 == n ? 0 : entering + 1;
      }
      lap(mark, t_price);
      if (entering < 0) return PhaseEnd::Optimal;

      compute_u(entering);
      lap(mark, t_u);
      int leaving = -1;
      Rational best_ratio;
      const Rational rdelta = Ring::to_rational(delta);
      for (int i = 0; i < m; ++i) {
        if (u[i] <= 0) continue;
        assert(!inert[i]);
        Rational ratio = xB[i] * rdelta / Ring::to_rational(u[i]);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving < 0) {
        if (phase_one) throw Error("phase-1 objective cannot be unbounded");
        ray_entering = entering;  // u still holds N·(entering column)
        return PhaseEnd::Unbounded;
      }
      lap(mark, t_ratio);
      const bool degenerate = xB[leaving] == 0;
      pivot(leaving, entering);
      lap(mark, t_pivot);
      if (active_rule == PivotRule::Dantzig) {
        stall = degenerate ? stall + 1 : 0;
        if (stall > stall_limit) active_rule = PivotRule::Bland;
      }
    }
  }

  // Degenerate pivots that swap zero-valued artificial basics for structural
  // columns; rows with no structural support are marked inert.
  void drive_out_artificials() {
    for (int r = 0; r < m; ++r) {
      if (basis[r] < n) continue;
      assert(xB[r] == 0);
      int found = -1;
      for (int j = 0; j < n && found < 0; ++j) {
        if (is_basic[j]) continue;
        Wide w{};
        for (int e = col_start[j]; e < col_start[j + 1]; ++e) {
          Ring::wide_addmul(w, col_val[e], at(r, col_row[e]));
        }
        if (w != 0) found = j;
      }
      if (found < 0) {
        inert[r] = 1;
      } else {
        compute_u(found);
        pivot(r, found);
      }
    }
  }

  RVec primal_vector() const {
    RVec x = RVec::Zero(n);
    for (int r = 0; r < m; ++r) {
      if (basis[r] < n) x[basis[r]] = xB[r];
    }
    return x;
  }

  // scaled_rhs is the right-hand side already multiplied by the row scales.
  LpOutcome solve(const RVec& scaled_rhs) {
    N.assign(static_cast<size_t>(m) * m, Int(0));
    xB = RVec(m);
    basis.resize(m);
    is_basic.assign(n, 0);
    inert.assign(m, 0);
    Y.assign(m, Int(0));
    u.assign(m, Int(0));
    acc.resize(m);
    delta = 1;
    active_rule = options.rule;
    stall = 0;
    cursor = 0;
    for (int r = 0; r < m; ++r) {
      const bool negative = scaled_rhs[r] < 0;
      at(r, r) = negative ? -1 : 1;
      xB[r] = negative ? Rational(-scaled_rhs[r]) : scaled_rhs[r];
      basis[r] = n + r;
    }

    run(/*phase_one=*/true);

    Rational infeasibility = 0;
    for (int r = 0; r < m; ++r) {
      if (basis[r] >= n) infeasibility += xB[r];
    }
    if (infeasibility != 0) {
      LpOutcome out;
      out.status = LpStatus::Infeasible;
      out.certificate = RVec(m);
      const Rational rdelta = Ring::to_rational(delta);
      for (int r = 0; r < m; ++r) out.certificate[r] = -Ring::to_rational(Y[r]) / rdelta;
      return out;
    }

    if (!maximize) {
      LpOutcome out;
      out.status = LpStatus::Feasible;
      out.primal = primal_vector();
      return out;
    }

    drive_out_artificials();

    const PhaseEnd end = run(/*phase_one=*/false);
    if (end == PhaseEnd::Unbounded) {
      LpOutcome out;
      out.status = LpStatus::Unbounded;
      out.primal = primal_vector();
      out.ray = RVec::Zero(n);
      out.ray[ray_entering] = 1;
      const Rational rdelta = Ring::to_rational(delta);
      for (int i = 0; i < m; ++i) {
        if (u[i] == 0) continue;
        assert(basis[i] < n);
        out.ray[basis[i]] = -Ring::to_rational(u[i]) / rdelta;
      }
      return out;
    }

    LpOutcome out;
    out.status = LpStatus::Optimal;
    out.primal = primal_vector();
    out.value = 0;
    for (int r = 0; r < m; ++r) {
      if (basis[r] < n && cost[basis[r]] != 0) {
        out.value += Ring::to_rational(cost[basis[r]]) * xB[r];
      }
    }
    out.dual = RVec(m);
    const Rational rdelta = Ring::to_rational(delta);
    for (int r = 0; r < m; ++r) out.dual[r] = Ring::to_rational(Y[r]) / rdelta;
    return out;
  }
};

}  // namespace

// Owns the row/objective scaling and the choice of arithmetic: solves run in
// the word-sized ring when every scaled entry fits, with a transparent redo
// in arbitrary precision on overflow.
struct SimplexSolver::Impl {
  int m = 0;
  int n = 0;
  SolveOptions options;
  std::vector<Integer> sigma;  // row r of the matrix was multiplied by sigma[r]
  Integer gamma = 1;           // objective scale
  bool maximize = false;
  std::vector<std::vector<std::pair<int, Integer>>> big_cols;
  std::vector<Integer> big_cost;
  std::optional<Core<SmallRing>> small;
  std::optional<Core<BigRing>> big;

  Impl(int num_rows, std::vector<SparseColumn> columns, const std::optional<RVec>& objective,
       SolveOptions opts)
      : m(num_rows), n(static_cast<int>(columns.size())), options(opts) {
    if (m < 0) throw DimensionMismatch("negative row count");
    if (objective && objective->size() != n) {
      throw DimensionMismatch("objective has " + std::to_string(objective->size()) +
                              " entries for " + std::to_string(n) + " columns");
    }
    sigma.assign(m, Integer(1));
    for (const SparseColumn& col : columns) {
      for (const auto& [row, value] : col.entries) {
        if (row < 0 || row >= m) {
          throw DimensionMismatch("column entry row " + std::to_string(row) + " out of range");
        }
        sigma[row] = boost::multiprecision::lcm(sigma[row],
                                                Integer(boost::multiprecision::denominator(value)));
      }
    }
    big_cols.resize(n);
    for (int j = 0; j < n; ++j) {
      big_cols[j].reserve(columns[j].entries.size());
      for (const auto& [row, value] : columns[j].entries) {
        Integer scaled = boost::multiprecision::numerator(value) *
                         (sigma[row] / Integer(boost::multiprecision::denominator(value)));
        big_cols[j].emplace_back(row, std::move(scaled));
      }
    }
    maximize = objective.has_value();
    if (maximize) {
      for (int j = 0; j < n; ++j) {
        gamma = boost::multiprecision::lcm(
            gamma, Integer(boost::multiprecision::denominator((*objective)[j])));
      }
      big_cost.resize(n);
      for (int j = 0; j < n; ++j) {
        big_cost[j] = boost::multiprecision::numerator((*objective)[j]) *
                      (gamma / Integer(boost::multiprecision::denominator((*objective)[j])));
      }
    }

    bool fits = m <= kSmallMaxRows;
    for (int j = 0; fits && j < n; ++j) {
      for (const auto& [row, value] : big_cols[j]) {
        if (value > kSmallLimit || value < -kSmallLimit) {
          fits = false;
          break;
        }
      }
    }
    for (size_t j = 0; fits && j < big_cost.size(); ++j) {
      if (big_cost[j] > kSmallLimit || big_cost[j] < -kSmallLimit) fits = false;
    }
    if (fits) {
      small.emplace();
      init_core(*small, [](const Integer& v) { return v.convert_to<long long>(); });
    }
  }

  template <class C, class Convert>
  void init_core(C& core, Convert convert) {
    core.m = m;
    core.n = n;
    core.options = options;
    core.maximize = maximize;
    core.stall_limit = options.stall_switch > 0 ? options.stall_switch : 200 + 4 * m;
    size_t nnz = 0;
    for (const auto& col : big_cols) nnz += col.size();
    core.col_start.resize(n + 1);
    core.col_row.reserve(nnz);
    core.col_val.reserve(nnz);
    core.col_unit.resize(n);
    for (int j = 0; j < n; ++j) {
      core.col_start[j] = static_cast<int>(core.col_row.size());
      bool unit = true;
      for (const auto& [row, value] : big_cols[j]) {
        core.col_row.push_back(row);
        core.col_val.push_back(convert(value));
        if (value != 1) unit = false;
      }
      core.col_unit[j] = unit;
    }
    core.col_start[n] = static_cast<int>(core.col_row.size());
    core.cost.reserve(big_cost.size());
    for (const Integer& c : big_cost) core.cost.push_back(convert(c));
  }

  LpOutcome solve(const RVec& rhs) {
    if (rhs.size() != m) {
      throw DimensionMismatch("rhs has " + std::to_string(rhs.size()) + " entries for " +
                              std::to_string(m) + " rows");
    }
    RVec scaled_rhs(m);
    for (int r = 0; r < m; ++r) scaled_rhs[r] = rhs[r] * Rational(sigma[r]);

    LpOutcome out;
    if (small) {
      try {
        out = small->solve(scaled_rhs);
        return unscale(std::move(out));
      } catch (const RingOverflow&) {
        if (trace_enabled()) std::fprintf(stderr, "[lp] word-size overflow, redoing exactly\n");
      }
    }
    if (!big) {
      big.emplace();
      init_core(*big, [](const Integer& v) { return v; });
    }
    out = big->solve(scaled_rhs);
    return unscale(std::move(out));
  }

  // Core outputs live in the scaled row space; map duals and the value back.
  LpOutcome unscale(LpOutcome out) const {
    const Rational rgamma = Rational(gamma);
    switch (out.status) {
      case LpStatus::Infeasible:
        for (int r = 0; r < m; ++r) out.certificate[r] *= Rational(sigma[r]);
        break;
      case LpStatus::Optimal:
        out.value /= rgamma;
        for (int r = 0; r < m; ++r) out.dual[r] = out.dual[r] * Rational(sigma[r]) / rgamma;
        break;
      default: break;
    }
    return out;
  }
};

SimplexSolver::SimplexSolver(int num_rows, std::vector<SparseColumn> columns,
                             std::optional<RVec> objective, SolveOptions options)
    : impl_(std::make_unique<Impl>(num_rows, std::move(columns), objective, options)) {}

SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

LpOutcome SimplexSolver::solve(const RVec& rhs) { return impl_->solve(rhs); }

int SimplexSolver::num_rows() const { return impl_->m; }
int SimplexSolver::num_columns() const { return impl_->n; }

LpOutcome solve(const LinearProgram& lp, const SolveOptions& options) {
  if (lp.rhs.size() != lp.num_rows) {
    throw DimensionMismatch("rhs size does not match the row count");
  }
  SimplexSolver solver(lp.num_rows, lp.columns, lp.objective, options);
  return solver.solve(lp.rhs);
}

bool verify_certificate(const LinearProgram& lp, const LpOutcome& outcome) {
  const int m = lp.num_rows;
  const int n = static_cast<int>(lp.columns.size());

  const auto residual_ok = [&](const RVec& x, bool homogeneous) {
    if (x.size() != n) return false;
    for (int j = 0; j < n; ++j) {
      if (x[j] < 0) return false;
    }
    RVec ax = RVec::Zero(m);
    for (int j = 0; j < n; ++j) {
      if (x[j] == 0) continue;
      for (const auto& [row, value] : lp.columns[j].entries) ax[row] += value * x[j];
    }
    for (int r = 0; r < m; ++r) {
      if (ax[r] != (homogeneous ? Rational(0) : lp.rhs[r])) return false;
    }
    return true;
  };
  const auto objective_value = [&](const RVec& x) {
    Rational v = 0;
    for (int j = 0; j < n; ++j) v += (*lp.objective)[j] * x[j];
    return v;
  };
  const auto column_dot = [&](const RVec& y, int j) {
    Rational v = 0;
    for (const auto& [row, value] : lp.columns[j].entries) v += value * y[row];
    return v;
  };

  switch (outcome.status) {
    case LpStatus::Feasible:
      return residual_ok(outcome.primal, false);
    case LpStatus::Optimal: {
      if (!lp.objective) return false;
      if (!residual_ok(outcome.primal, false)) return false;
      if (objective_value(outcome.primal) != outcome.value) return false;
      if (outcome.dual.size() != m) return false;
      for (int j = 0; j < n; ++j) {
        if (column_dot(outcome.dual, j) < (*lp.objective)[j]) return false;
      }
      Rational dual_value = 0;
      for (int r = 0; r < m; ++r) dual_value += lp.rhs[r] * outcome.dual[r];
      return dual_value == outcome.value;
    }
    case LpStatus::Infeasible: {
      if (outcome.certificate.size() != m) return false;
      for (int j = 0; j < n; ++j) {
        if (column_dot(outcome.certificate, j) > 0) return false;
      }
      Rational b_dot = 0;
      for (int r = 0; r < m; ++r) b_dot += lp.rhs[r] * outcome.certificate[r];
      return b_dot > 0;
    }
    case LpStatus::Unbounded: {
      if (!lp.objective) return false;
      if (!residual_ok(outcome.primal, false)) return false;
      if (!residual_ok(outcome.ray, true)) return false;
      return objective_value(outcome.ray) > 0;
    }
  }
  return false;
}

}  // namespace tobl
