#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "toblbox/membership.hpp"
#include "toblbox/ratlp.hpp"

namespace tobl {

namespace {

// The membership and maximization problems here are massively degenerate and
// the pivot count turns out to be nearly rule-independent, so the cheapest
// per-iteration rule wins.
constexpr SolveOptions kSetOptions{PivotRule::Dantzig, 0};

std::vector<std::vector<int>> all_input_tuples(const Scenario& scn) {
  std::vector<std::vector<int>> tuples;
  tuples.reserve(scn.num_input_tuples());
  for (long long x = 0; x < scn.num_input_tuples(); ++x) {
    tuples.push_back(scn.input_tuple(static_cast<int>(x)));
  }
  return tuples;
}

// Deterministic product strategies together with the flat outcome each one
// produces at every input; the backbone of the local-set LP columns.
struct DeterministicColumns {
  std::vector<std::vector<DeterministicStrategy>> points;
  std::vector<std::vector<int>> outcome;  // [point][input] → flat outcome
};

DeterministicColumns deterministic_columns(const Scenario& scn, long long cap) {
  DeterministicColumns det;
  det.points = enumerate_local_deterministic(scn, cap);
  const auto inputs = all_input_tuples(scn);
  const int n = scn.parties();
  det.outcome.resize(det.points.size());
  std::vector<int> out(n);
  for (size_t k = 0; k < det.points.size(); ++k) {
    det.outcome[k].resize(inputs.size());
    for (size_t x = 0; x < inputs.size(); ++x) {
      for (int p = 0; p < n; ++p) out[p] = det.points[k][p](inputs[x][p]);
      det.outcome[k][x] = scn.output_index(out);
    }
  }
  return det;
}

Rational point_value(const BellFunctional& f, const std::vector<int>& outcome_per_input) {
  Rational v = 0;
  for (const auto& [key, coeff] : f.coefficients) {
    if (outcome_per_input[key.first] == key.second) v += coeff;
  }
  return v;
}

// One bipartition's strategy triples, with each strategy's contribution to
// the flat outcome index precomputed per full input. A triple (s, f, b) is
// flattened as (s·F + f)·B + b.
struct TripleColumns {
  std::vector<DeterministicStrategy> solos;
  std::vector<OneWayPairStrategy> fwds;
  std::vector<OneWayPairStrategy> bwds;
  std::vector<std::vector<long long>> solo_part;  // [s][x] → stride-weighted digit
  std::vector<std::vector<long long>> fwd_part;   // [f][x]
  std::vector<std::vector<long long>> bwd_part;   // [b][x]
  long long S = 0, F = 0, B = 0;
};

TripleColumns triple_columns(const Scenario& scn, int bp_index, long long cap) {
  const Bipartition& parts = kBipartitions[bp_index];
  const Scenario solo_scn({scn.input_count(parts.solo)}, {scn.output_count(parts.solo)});
  const Scenario pair_scn = pair_scenario(scn, parts);

  TripleColumns tc;
  for (auto& point : enumerate_local_deterministic(solo_scn, cap)) {
    tc.solos.push_back(std::move(point[0]));
  }
  tc.fwds = enumerate_oneway(pair_scn, Direction::Forward, cap);
  tc.bwds = enumerate_oneway(pair_scn, Direction::Backward, cap);
  tc.S = static_cast<long long>(tc.solos.size());
  tc.F = static_cast<long long>(tc.fwds.size());
  tc.B = static_cast<long long>(tc.bwds.size());
  const Integer total = Integer(tc.S) * Integer(tc.F) * Integer(tc.B);
  if (total > cap) {
    throw ScenarioTooLarge("bipartition " + bipartition_label(bp_index) + " needs " +
                           total.str() + " strategy triples (cap " + std::to_string(cap) + ")");
  }

  // flat outcome index = Σ_p stride[p]·a_p with party 0 fastest
  long long stride[3] = {1, 0, 0};
  stride[1] = scn.output_count(0);
  stride[2] = stride[1] * scn.output_count(1);

  const auto inputs = all_input_tuples(scn);
  const long long I = static_cast<long long>(inputs.size());
  const int mk = scn.input_count(parts.pair_second);

  tc.solo_part.resize(tc.S, std::vector<long long>(I));
  for (long long s = 0; s < tc.S; ++s) {
    for (long long x = 0; x < I; ++x) {
      tc.solo_part[s][x] = stride[parts.solo] * tc.solos[s](inputs[x][parts.solo]);
    }
  }
  tc.fwd_part.resize(tc.F, std::vector<long long>(I));
  for (long long f = 0; f < tc.F; ++f) {
    const OneWayPairStrategy& st = tc.fwds[f];
    for (long long x = 0; x < I; ++x) {
      const int y = inputs[x][parts.pair_first], z = inputs[x][parts.pair_second];
      tc.fwd_part[f][x] =
          stride[parts.pair_first] * st.sender[y] + stride[parts.pair_second] * st.receiver[y * mk + z];
    }
  }
  tc.bwd_part.resize(tc.B, std::vector<long long>(I));
  for (long long b = 0; b < tc.B; ++b) {
    const OneWayPairStrategy& st = tc.bwds[b];
    for (long long x = 0; x < I; ++x) {
      const int y = inputs[x][parts.pair_first], z = inputs[x][parts.pair_second];
      tc.bwd_part[b][x] =
          stride[parts.pair_first] * st.receiver[y * mk + z] + stride[parts.pair_second] * st.sender[z];
    }
  }
  return tc;
}

// Membership LP columns for one bipartition: forward-reconstruction rows
// x·O + a first, then the backward block shifted by I·O.
std::vector<SparseColumn> membership_columns(const TripleColumns& tc, long long I, long long O) {
  std::vector<SparseColumn> cols;
  cols.reserve(tc.S * tc.F * tc.B);
  for (long long s = 0; s < tc.S; ++s) {
    for (long long f = 0; f < tc.F; ++f) {
      for (long long b = 0; b < tc.B; ++b) {
        SparseColumn col;
        col.entries.reserve(2 * I);
        for (long long x = 0; x < I; ++x) {
          col.add(static_cast<int>(x * O + tc.solo_part[s][x] + tc.fwd_part[f][x]), 1);
        }
        for (long long x = 0; x < I; ++x) {
          col.add(static_cast<int>(I * O + x * O + tc.solo_part[s][x] + tc.bwd_part[b][x]), 1);
        }
        cols.push_back(std::move(col));
      }
    }
  }
  return cols;
}

ToblTerm make_term(const TripleColumns& tc, long long t, Rational weight) {
  const long long b = t % tc.B;
  const long long f = (t / tc.B) % tc.F;
  const long long s = t / (tc.B * tc.F);
  return ToblTerm{std::move(weight), tc.solos[s], tc.fwds[f], tc.bwds[b]};
}

SeparatingFunctional checked_separation(BellFunctional functional, Rational bound,
                                        const Behavior& behavior) {
  SeparatingFunctional sep{std::move(functional), std::move(bound)};
  if (!(evaluate(sep.functional, behavior) > sep.bound)) {
    throw Error("internal: separating functional fails its own soundness invariant");
  }
  return sep;
}

}  // namespace

LocalResult is_local(const Behavior& behavior, long long cap) {
  const Scenario& scn = behavior.scenario;
  const long long I = scn.num_input_tuples(), O = scn.num_output_tuples();
  const DeterministicColumns det = deterministic_columns(scn, cap);
  const size_t K = det.points.size();

  LinearProgram lp;
  lp.num_rows = static_cast<int>(I * O);
  lp.columns.resize(K);
  for (size_t k = 0; k < K; ++k) {
    for (long long x = 0; x < I; ++x) {
      lp.columns[k].add(static_cast<int>(x * O + det.outcome[k][x]), 1);
    }
  }
  lp.rhs = RVec(I * O);
  for (long long x = 0; x < I; ++x) {
    for (long long a = 0; a < O; ++a) {
      lp.rhs[x * O + a] = behavior.prob(static_cast<int>(x), static_cast<int>(a));
    }
  }

  const LpOutcome out = solve(lp, kSetOptions);
  if (out.status == LpStatus::Feasible) {
    LocalModel model;
    for (size_t k = 0; k < K; ++k) {
      if (out.primal[static_cast<Eigen::Index>(k)] > 0) {
        model.terms.push_back({out.primal[static_cast<Eigen::Index>(k)], det.points[k]});
      }
    }
    return model;
  }

  // Farkas vector read as a Bell-type functional: nonpositive on every
  // deterministic point, positive on the behavior.
  BellFunctional functional;
  functional.scenario = scn;
  for (long long x = 0; x < I; ++x) {
    for (long long a = 0; a < O; ++a) {
      const Rational& y = out.certificate[x * O + a];
      if (y != 0) functional.coefficients[{static_cast<int>(x), static_cast<int>(a)}] = y;
    }
  }
  Rational bound;
  for (size_t k = 0; k < K; ++k) {
    Rational v = 0;
    for (long long x = 0; x < I; ++x) v += out.certificate[x * O + det.outcome[k][x]];
    if (k == 0 || v > bound) bound = std::move(v);
  }
  return checked_separation(std::move(functional), std::move(bound), behavior);
}

struct ToblChecker::Impl {
  Scenario scn;
  long long I = 0, O = 0;
  std::array<TripleColumns, 3> tc;
  std::vector<SimplexSolver> solvers;  // one per bipartition
};

ToblChecker::ToblChecker(Scenario scenario, long long cap) : impl_(std::make_unique<Impl>()) {
  if (scenario.parties() != 3) throw NotTripartite("TOBL membership is defined for three parties");
  impl_->scn = std::move(scenario);
  impl_->I = impl_->scn.num_input_tuples();
  impl_->O = impl_->scn.num_output_tuples();
  for (int bp = 0; bp < 3; ++bp) {
    impl_->tc[bp] = triple_columns(impl_->scn, bp, cap);
    impl_->solvers.emplace_back(static_cast<int>(2 * impl_->I * impl_->O),
                                membership_columns(impl_->tc[bp], impl_->I, impl_->O),
                                std::nullopt, kSetOptions);
  }
}

ToblChecker::~ToblChecker() = default;
ToblChecker::ToblChecker(ToblChecker&&) noexcept = default;
ToblChecker& ToblChecker::operator=(ToblChecker&&) noexcept = default;

const Scenario& ToblChecker::scenario() const { return impl_->scn; }

ToblResult ToblChecker::check(const Behavior& behavior) {
  if (behavior.scenario != impl_->scn) {
    throw IncompatibleScenario("behavior does not live on the checker's scenario");
  }
  const Scenario& scn = impl_->scn;
  const long long I = impl_->I, O = impl_->O;

  RVec rhs(2 * I * O);
  for (long long x = 0; x < I; ++x) {
    for (long long a = 0; a < O; ++a) {
      rhs[x * O + a] = behavior.prob(static_cast<int>(x), static_cast<int>(a));
      rhs[I * O + x * O + a] = rhs[x * O + a];
    }
  }

  ToblDecomposition dec;
  for (int bp = 0; bp < 3; ++bp) {
    const TripleColumns& tc = impl_->tc[bp];

    const LpOutcome out = impl_->solvers[bp].solve(rhs);
    if (out.status == LpStatus::Infeasible) {
      const RVec& y = out.certificate;
      BellFunctional functional;
      functional.scenario = scn;
      for (long long x = 0; x < I; ++x) {
        for (long long a = 0; a < O; ++a) {
          Rational c = y[x * O + a] + y[I * O + x * O + a];
          if (c != 0) {
            functional.coefficients[{static_cast<int>(x), static_cast<int>(a)}] = std::move(c);
          }
        }
      }
      // max over triples of y·column decouples: the forward part depends on
      // (solo, forward) only and the backward part on (solo, backward)
      Rational bound;
      for (long long s = 0; s < tc.S; ++s) {
        Rational best_f;
        for (long long f = 0; f < tc.F; ++f) {
          Rational v = 0;
          for (long long x = 0; x < I; ++x) v += y[x * O + tc.solo_part[s][x] + tc.fwd_part[f][x]];
          if (f == 0 || v > best_f) best_f = std::move(v);
        }
        Rational best_b;
        for (long long b = 0; b < tc.B; ++b) {
          Rational v = 0;
          for (long long x = 0; x < I; ++x) {
            v += y[I * O + x * O + tc.solo_part[s][x] + tc.bwd_part[b][x]];
          }
          if (b == 0 || v > best_b) best_b = std::move(v);
        }
        Rational v = best_f + best_b;
        if (s == 0 || v > bound) bound = std::move(v);
      }
      return ToblFailure{bp, checked_separation(std::move(functional), std::move(bound), behavior)};
    }

    const long long num_triples = tc.S * tc.F * tc.B;
    for (long long t = 0; t < num_triples; ++t) {
      if (out.primal[t] > 0) dec.terms[bp].push_back(make_term(tc, t, out.primal[t]));
    }
  }
  if (!verify_tobl_decomposition(behavior, dec)) {
    throw Error("internal: extracted decomposition fails verification");
  }
  return dec;
}

ToblResult is_tobl(const Behavior& behavior, long long cap) {
  ToblChecker checker(behavior.scenario, cap);
  return checker.check(behavior);
}

namespace {

MaximizeResult maximize_local(const BellFunctional& functional, long long cap) {
  const Scenario& scn = functional.scenario;
  const DeterministicColumns det = deterministic_columns(scn, cap);
  const size_t K = det.points.size();

  LinearProgram lp;
  lp.num_rows = 1;
  lp.columns.resize(K);
  RVec obj(static_cast<Eigen::Index>(K));
  for (size_t k = 0; k < K; ++k) {
    lp.columns[k].add(0, 1);
    obj[static_cast<Eigen::Index>(k)] = point_value(functional, det.outcome[k]);
  }
  lp.rhs = RVec::Constant(1, 1);
  lp.objective = std::move(obj);

  const LpOutcome out = solve(lp, kSetOptions);
  if (out.status != LpStatus::Optimal) throw Error("internal: local maximization did not converge");
  LocalModel model;
  for (size_t k = 0; k < K; ++k) {
    if (out.primal[static_cast<Eigen::Index>(k)] > 0) {
      model.terms.push_back({out.primal[static_cast<Eigen::Index>(k)], det.points[k]});
    }
  }
  MaximizeResult result;
  result.value = out.value;
  result.optimizer = local_model_behavior(scn, model);
  result.local_model = std::move(model);
  return result;
}

// Equality rows of the no-signaling polytope: per-input normalization plus,
// for every proper party subset and every non-reference assignment of the
// complement's inputs, equality of the subset's marginals.
MaximizeResult maximize_nosignaling(const BellFunctional& functional) {
  const Scenario& scn = functional.scenario;
  const int n = scn.parties();
  const long long I = scn.num_input_tuples(), O = scn.num_output_tuples();
  const long long V = I * O;

  std::vector<RVec> rows;
  std::vector<Rational> row_rhs;
  for (long long x = 0; x < I; ++x) {
    RVec row = RVec::Zero(V);
    for (long long a = 0; a < O; ++a) row[x * O + a] = 1;
    rows.push_back(std::move(row));
    row_rhs.push_back(1);
  }

  std::vector<int> full_in(n), full_out(n);
  for (int mask = 1; mask + 1 < (1 << n); ++mask) {
    std::vector<int> kept, dropped;
    for (int p = 0; p < n; ++p) ((mask >> p) & 1 ? kept : dropped).push_back(p);
    std::vector<int> kept_in_radix, kept_out_radix, drop_in_radix, drop_out_radix;
    for (int p : kept) {
      kept_in_radix.push_back(scn.input_count(p));
      kept_out_radix.push_back(scn.output_count(p));
    }
    for (int p : dropped) {
      drop_in_radix.push_back(scn.input_count(p));
      drop_out_radix.push_back(scn.output_count(p));
    }
    const long long KI = radix_product(kept_in_radix), KO = radix_product(kept_out_radix);
    const long long DI = radix_product(drop_in_radix), DO = radix_product(drop_out_radix);

    for (long long kx = 0; kx < KI; ++kx) {
      const auto kin = index_tuple(static_cast<int>(kx), kept_in_radix);
      for (long long ka = 0; ka < KO; ++ka) {
        const auto kout = index_tuple(static_cast<int>(ka), kept_out_radix);
        for (long long d = 1; d < DI; ++d) {
          RVec row = RVec::Zero(V);
          for (int variant = 0; variant < 2; ++variant) {
            const long long din_index = variant == 0 ? d : 0;
            const auto din = index_tuple(static_cast<int>(din_index), drop_in_radix);
            for (size_t t = 0; t < kept.size(); ++t) full_in[kept[t]] = kin[t];
            for (size_t t = 0; t < dropped.size(); ++t) full_in[dropped[t]] = din[t];
            const long long x = scn.input_index(full_in);
            for (long long da = 0; da < DO; ++da) {
              const auto dout = index_tuple(static_cast<int>(da), drop_out_radix);
              for (size_t t = 0; t < kept.size(); ++t) full_out[kept[t]] = kout[t];
              for (size_t t = 0; t < dropped.size(); ++t) full_out[dropped[t]] = dout[t];
              row[x * O + scn.output_index(full_out)] += variant == 0 ? 1 : -1;
            }
          }
          rows.push_back(std::move(row));
          row_rhs.push_back(0);
        }
      }
    }
  }

  LinearProgram lp;
  lp.num_rows = static_cast<int>(rows.size());
  lp.columns.resize(V);
  for (long long v = 0; v < V; ++v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r][v] != 0) lp.columns[v].add(static_cast<int>(r), rows[r][v]);
    }
  }
  lp.rhs = RVec(static_cast<Eigen::Index>(row_rhs.size()));
  for (size_t r = 0; r < row_rhs.size(); ++r) lp.rhs[static_cast<Eigen::Index>(r)] = row_rhs[r];
  RVec obj = RVec::Zero(V);
  for (const auto& [key, coeff] : functional.coefficients) obj[key.first * O + key.second] = coeff;
  lp.objective = std::move(obj);

  const LpOutcome out = solve(lp, kSetOptions);
  if (out.status != LpStatus::Optimal) {
    throw Error("internal: no-signaling maximization did not converge");
  }
  RMat table(I, O);
  for (long long x = 0; x < I; ++x) {
    for (long long a = 0; a < O; ++a) table(x, a) = out.primal[x * O + a];
  }
  MaximizeResult result;
  result.value = out.value;
  result.optimizer = Behavior(scn, std::move(table));
  return result;
}

MaximizeResult maximize_tobl_full(const BellFunctional& functional, long long cap) {
  const Scenario& scn = functional.scenario;
  if (scn.parties() != 3) throw NotTripartite("TOBL maximization is defined for three parties");
  const long long I = scn.num_input_tuples(), O = scn.num_output_tuples();
  const long long IO = I * O;

  std::array<TripleColumns, 3> tc;
  for (int bp = 0; bp < 3; ++bp) tc[bp] = triple_columns(scn, bp, cap);

  // rows: one weight-normalization per bipartition, then per bipartition a
  // forward and a backward reconstruction block tied to the shared behavior
  const auto base = [&](int bp) { return 3 + static_cast<long long>(bp) * 2 * IO; };

  LinearProgram lp;
  lp.num_rows = static_cast<int>(3 + 6 * IO);
  lp.rhs = RVec::Zero(lp.num_rows);
  for (int bp = 0; bp < 3; ++bp) lp.rhs[bp] = 1;

  RVec obj;
  {
    long long total_cols = IO;
    for (int bp = 0; bp < 3; ++bp) total_cols += tc[bp].S * tc[bp].F * tc[bp].B;
    lp.columns.reserve(total_cols);
    obj = RVec::Zero(total_cols);
  }

  for (long long e = 0; e < IO; ++e) {
    SparseColumn col;
    col.entries.reserve(6);
    for (int bp = 0; bp < 3; ++bp) {
      col.add(static_cast<int>(base(bp) + e), -1);
      col.add(static_cast<int>(base(bp) + IO + e), -1);
    }
    lp.columns.push_back(std::move(col));
  }
  for (const auto& [key, coeff] : functional.coefficients) obj[key.first * O + key.second] = coeff;

  std::array<long long, 3> block_offset;
  for (int bp = 0; bp < 3; ++bp) {
    block_offset[bp] = static_cast<long long>(lp.columns.size());
    for (long long s = 0; s < tc[bp].S; ++s) {
      for (long long f = 0; f < tc[bp].F; ++f) {
        for (long long b = 0; b < tc[bp].B; ++b) {
          SparseColumn col;
          col.entries.reserve(1 + 2 * I);
          col.add(bp, 1);
          for (long long x = 0; x < I; ++x) {
            col.add(static_cast<int>(base(bp) + x * O + tc[bp].solo_part[s][x] + tc[bp].fwd_part[f][x]),
                    1);
          }
          for (long long x = 0; x < I; ++x) {
            col.add(static_cast<int>(base(bp) + IO + x * O + tc[bp].solo_part[s][x] +
                                     tc[bp].bwd_part[b][x]),
                    1);
          }
          lp.columns.push_back(std::move(col));
        }
      }
    }
  }
  lp.objective = std::move(obj);

  const LpOutcome out = solve(lp, kSetOptions);
  if (out.status != LpStatus::Optimal) throw Error("internal: TOBL maximization did not converge");

  RMat table(I, O);
  for (long long x = 0; x < I; ++x) {
    for (long long a = 0; a < O; ++a) table(x, a) = out.primal[x * O + a];
  }
  MaximizeResult result;
  result.value = out.value;
  result.optimizer = Behavior(scn, std::move(table));
  ToblDecomposition dec;
  for (int bp = 0; bp < 3; ++bp) {
    const long long block = tc[bp].S * tc[bp].F * tc[bp].B;
    for (long long t = 0; t < block; ++t) {
      const Rational& w = out.primal[block_offset[bp] + t];
      if (w > 0) dec.terms[bp].push_back(make_term(tc[bp], t, w));
    }
  }
  if (!verify_tobl_decomposition(result.optimizer, dec)) {
    throw Error("internal: extracted decomposition fails verification");
  }
  result.decomposition = std::move(dec);
  return result;
}

// Restriction to behaviors invariant under cycling the parties. For a
// cyclically invariant functional this is lossless: averaging any optimizer
// and its two cyclic relabelings over the group preserves membership and the
// value, and cycling maps each bipartition's strategy triples onto the next
// bipartition's role-for-role, so one shared weight vector serves all three.
MaximizeResult maximize_tobl_symmetric(const BellFunctional& functional, long long cap) {
  const Scenario& scn = functional.scenario;
  if (scn.parties() != 3) throw NotTripartite("TOBL maximization is defined for three parties");
  for (int p = 1; p < 3; ++p) {
    if (scn.input_count(p) != scn.input_count(0) || scn.output_count(p) != scn.output_count(0)) {
      throw IncompatibleScenario("symmetric reduction needs identical parties");
    }
  }
  const long long I = scn.num_input_tuples(), O = scn.num_output_tuples();
  const long long IO = I * O;

  // flat-entry permutation induced by party cycle 0→1→2→0
  const std::vector<int> perm{1, 2, 0};
  std::vector<long long> cycled(IO);
  {
    std::vector<int> in_t(3), out_t(3), pin(3), pout(3);
    for (long long x = 0; x < I; ++x) {
      const auto xt = scn.input_tuple(static_cast<int>(x));
      for (int p = 0; p < 3; ++p) pin[perm[p]] = xt[p];
      const long long px = scn.input_index(pin);
      for (long long a = 0; a < O; ++a) {
        const auto at = scn.output_tuple(static_cast<int>(a));
        for (int p = 0; p < 3; ++p) pout[perm[p]] = at[p];
        cycled[x * O + a] = px * O + scn.output_index(pout);
      }
    }
  }

  RVec coeff = RVec::Zero(IO);
  for (const auto& [key, c] : functional.coefficients) coeff[key.first * O + key.second] = c;
  for (long long e = 0; e < IO; ++e) {
    if (coeff[e] != coeff[cycled[e]]) {
      throw IncompatibleScenario("symmetric reduction needs a cyclically invariant functional");
    }
  }

  std::vector<std::vector<long long>> orbits;
  std::vector<long long> orbit_of(IO, -1);
  for (long long e = 0; e < IO; ++e) {
    if (orbit_of[e] >= 0) continue;
    std::vector<long long> members{e};
    for (long long g = cycled[e]; g != e; g = cycled[g]) members.push_back(g);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (long long g : members) orbit_of[g] = static_cast<long long>(orbits.size());
    orbits.push_back(std::move(members));
  }

  const TripleColumns tc = triple_columns(scn, 0, cap);

  // rows: weight normalization, then bipartition 0's two reconstruction
  // blocks; the other bipartitions' rows are cyclic images of these
  LinearProgram lp;
  lp.num_rows = static_cast<int>(1 + 2 * IO);
  lp.rhs = RVec::Zero(lp.num_rows);
  lp.rhs[0] = 1;
  const long long n_orbit = static_cast<long long>(orbits.size());
  const long long n_triple = tc.S * tc.F * tc.B;
  lp.columns.reserve(n_orbit + n_triple);
  RVec obj = RVec::Zero(n_orbit + n_triple);

  for (long long o = 0; o < n_orbit; ++o) {
    SparseColumn col;
    col.entries.reserve(2 * orbits[o].size());
    for (long long e : orbits[o]) col.add(static_cast<int>(1 + e), -1);
    for (long long e : orbits[o]) col.add(static_cast<int>(1 + IO + e), -1);
    lp.columns.push_back(std::move(col));
    Rational total = 0;
    for (long long e : orbits[o]) total += coeff[e];
    obj[o] = std::move(total);
  }
  for (long long s = 0; s < tc.S; ++s) {
    for (long long f = 0; f < tc.F; ++f) {
      for (long long b = 0; b < tc.B; ++b) {
        SparseColumn col;
        col.entries.reserve(1 + 2 * I);
        col.add(0, 1);
        for (long long x = 0; x < I; ++x) {
          col.add(static_cast<int>(1 + x * O + tc.solo_part[s][x] + tc.fwd_part[f][x]), 1);
        }
        for (long long x = 0; x < I; ++x) {
          col.add(static_cast<int>(1 + IO + x * O + tc.solo_part[s][x] + tc.bwd_part[b][x]), 1);
        }
        lp.columns.push_back(std::move(col));
      }
    }
  }
  lp.objective = std::move(obj);

  const LpOutcome out = solve(lp, kSetOptions);
  if (out.status != LpStatus::Optimal) throw Error("internal: TOBL maximization did not converge");

  RMat table(I, O);
  for (long long e = 0; e < IO; ++e) table(e / O, e % O) = out.primal[orbit_of[e]];
  MaximizeResult result;
  result.value = out.value;
  result.optimizer = Behavior(scn, std::move(table));
  ToblDecomposition dec;
  for (long long t = 0; t < n_triple; ++t) {
    const Rational& w = out.primal[n_orbit + t];
    if (w > 0) dec.terms[0].push_back(make_term(tc, t, w));
  }
  dec.terms[1] = dec.terms[0];
  dec.terms[2] = dec.terms[0];
  if (!verify_tobl_decomposition(result.optimizer, dec)) {
    throw Error("internal: extracted decomposition fails verification");
  }
  result.decomposition = std::move(dec);
  return result;
}

}  // namespace

MaximizeResult maximize_bell(const BellFunctional& functional, SetKind set, bool symmetric,
                             long long cap) {
  if (symmetric && set != SetKind::Tobl) {
    throw IncompatibleScenario("symmetric reduction only applies to the TOBL set");
  }
  switch (set) {
    case SetKind::Local: return maximize_local(functional, cap);
    case SetKind::NoSignaling: return maximize_nosignaling(functional);
    case SetKind::Tobl:
      return symmetric ? maximize_tobl_symmetric(functional, cap)
                       : maximize_tobl_full(functional, cap);
  }
  throw Error("unreachable");
}

}  // namespace tobl
