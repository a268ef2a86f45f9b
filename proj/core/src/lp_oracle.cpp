#include "cyclex/lp_oracle.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "cyclex/errors.hpp"

namespace cyclex {

namespace {

/// Revised simplex with an explicit rational basis inverse, exact
/// throughout. Entering variables follow Dantzig's rule (most negative
/// reduced cost) until a degeneracy stall, then Bland's least-index rule
/// until the objective moves again, which keeps the method cycling-free.
/// Pricing clears denominators so the hot loop runs on integers.
/// Artificial variables never re-enter once they leave the basis.
class ExactSimplex {
 public:
  explicit ExactSimplex(const AtomProgram& program)
      : num_real_(program.num_atoms()), m_(static_cast<int>(program.rows.size())) {
    if (m_ == 0) throw DomainError("lp: program has no rows");
    cost_.resize(num_real_, Rational(0));
    if (!program.objective.empty()) {
      if (program.objective.size() != num_real_) {
        throw DomainError("lp: objective length does not match the atom count");
      }
      cost_ = program.objective;
    }
    cost_scale_ = 1;
    for (const auto& c : cost_) cost_scale_ = lcm(cost_scale_, Integer(denominator(c)));
    cost_int_.resize(num_real_);
    Integer lo = 0;
    Integer hi = 0;
    for (size_t j = 0; j < num_real_; ++j) {
      cost_int_[j] = Integer(numerator(cost_[j])) * (cost_scale_ / Integer(denominator(cost_[j])));
      lo = std::min(lo, cost_int_[j]);
      hi = std::max(hi, cost_int_[j]);
    }
    small_costs_ = lo >= -(1 << 20) && hi <= (1 << 20);
    cost_min_ = small_costs_ ? lo.convert_to<long>() : 0;
    cost_span_ = small_costs_ ? (hi - lo).convert_to<long>() + 1 : 0;

    a_.resize(m_);
    b_.resize(m_);
    row_sign_.assign(m_, 1);
    for (int r = 0; r < m_; ++r) {
      if (program.rows[r].coeffs.size() != num_real_) {
        throw DomainError("lp: row length does not match the atom count");
      }
      a_[r] = program.rows[r].coeffs;
      b_[r] = program.rows[r].rhs;
      if (b_[r] < 0) {  // keep the artificial start feasible
        b_[r] = -b_[r];
        row_sign_[r] = -1;
        for (auto& c : a_[r]) c = static_cast<std::int8_t>(-c);
      }
    }
    build_groups(program);
    binv_.assign(m_, std::vector<Rational>(m_, Rational(0)));
    for (int r = 0; r < m_; ++r) binv_[r][r] = 1;
    xb_ = b_;
    basic_.resize(m_);
    for (int r = 0; r < m_; ++r) basic_[r] = static_cast<long>(num_real_) + r;
    is_basic_real_.assign(num_real_, false);
  }

  bool run_phase1() {
    iterate(/*phase1=*/true);
    Rational infeasibility = 0;
    for (int r = 0; r < m_; ++r) {
      if (basic_[r] >= static_cast<long>(num_real_)) infeasibility += xb_[r];
    }
    if (infeasibility != 0) return false;
    drive_out_artificials();
    return true;
  }

  void run_phase2() { iterate(/*phase1=*/false); }

  Rational objective() const {
    Rational total = 0;
    for (int r = 0; r < m_; ++r) {
      if (basic_[r] < static_cast<long>(num_real_)) total += cost_[basic_[r]] * xb_[r];
    }
    return total;
  }

  Rational dual_objective() const {
    const auto y = multipliers(/*phase1=*/false);
    Rational total = 0;
    for (int r = 0; r < m_; ++r) total += y[r] * b_[r];
    return total;
  }

  JointPmf extract_point(int num_vars) const {
    JointPmf point(num_vars);
    for (int r = 0; r < m_; ++r) {
      if (basic_[r] < static_cast<long>(num_real_)) point.prob(basic_[r]) = xb_[r];
    }
    return point;
  }

  long pivots() const { return pivots_; }

 private:
  std::vector<Rational> multipliers(bool phase1) const {
    std::vector<Rational> y(m_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      Rational ci;
      if (basic_[i] >= static_cast<long>(num_real_)) {
        ci = phase1 ? 1 : 0;
      } else {
        ci = phase1 ? 0 : cost_[basic_[i]];
      }
      if (ci == 0) continue;
      for (int r = 0; r < m_; ++r) y[r] += ci * binv_[i][r];
    }
    return y;
  }

  // Pricing exploits row structure: each non-generic row reads at most two
  // atom bits, so rows sharing a bit pair collapse into one 4-entry lookup
  // table per iteration. Generic rows fall back to the coefficient array.
  struct Group {
    int var_a = -1;
    int var_b = -1;
    std::vector<int> rows;
  };

  // All reduced costs are priced as integers: with D the common denominator
  // of the multipliers and Q the cost scale, sign(rc_j) equals
  // sign(Q*D*rc_j) = sign(cost_int_j * D - sum of scaled tables).
  struct PricingTables {
    Integer constant;
    std::vector<std::array<Integer, 4>> per_group;
    std::vector<Integer> generic;        // per generic row, scaled multiplier
    std::vector<Integer> scaled_costs;   // cost_int * D, indexed by cost_int - cost_min
    Integer denom_scale;                 // D (times Q in phase 2)
  };

  void build_groups(const AtomProgram& program) {
    row_kind_.resize(m_);
    row_var_a_.resize(m_);
    row_var_b_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      row_kind_[r] = program.rows[r].kind;
      row_var_a_[r] = program.rows[r].var_a;
      row_var_b_[r] = program.rows[r].var_b;
    }
    auto group_for = [this](int a, int b) -> Group& {
      for (auto& g : groups_) {
        if ((g.var_a == a && g.var_b == b) || (g.var_a == b && g.var_b == a)) return g;
      }
      groups_.push_back({a, b, {}});
      return groups_.back();
    };
    for (int r = 0; r < m_; ++r) {
      if (row_kind_[r] == AtomProgram::Row::Kind::kProduct) {
        group_for(row_var_a_[r], row_var_b_[r]).rows.push_back(r);
      }
    }
    for (int r = 0; r < m_; ++r) {
      switch (row_kind_[r]) {
        case AtomProgram::Row::Kind::kNormalization:
          constant_rows_.push_back(r);
          break;
        case AtomProgram::Row::Kind::kMean: {
          const int v = row_var_a_[r];
          Group* host = nullptr;
          for (auto& g : groups_) {
            if (g.var_a == v || g.var_b == v) {
              host = &g;
              break;
            }
          }
          (host ? *host : group_for(v, v)).rows.push_back(r);
          break;
        }
        case AtomProgram::Row::Kind::kProduct:
          break;  // already grouped
        case AtomProgram::Row::Kind::kGeneric:
          generic_rows_.push_back(r);
          break;
      }
    }
  }

  PricingTables build_tables(const std::vector<Rational>& y, bool phase1) const {
    PricingTables tables;
    Integer denom = 1;
    for (int r = 0; r < m_; ++r) denom = lcm(denom, Integer(denominator(y[r])));
    if (!phase1) denom *= cost_scale_;
    std::vector<Integer> scaled(m_);
    for (int r = 0; r < m_; ++r) {
      scaled[r] = Integer(numerator(y[r])) * (denom / Integer(denominator(y[r])));
      if (row_sign_[r] < 0) scaled[r] = -scaled[r];
    }
    tables.denom_scale = denom;
    tables.constant = 0;
    for (int r : constant_rows_) tables.constant += scaled[r];
    tables.per_group.resize(groups_.size());
    for (size_t g = 0; g < groups_.size(); ++g) {
      auto& table = tables.per_group[g];
      table.fill(Integer(0));
      for (int combo = 0; combo < 4; ++combo) {
        const int a_out = (combo & 1) ? 1 : -1;
        const int b_out = (combo & 2) ? 1 : -1;
        for (int r : groups_[g].rows) {
          int coeff;
          if (row_kind_[r] == AtomProgram::Row::Kind::kProduct) {
            coeff = a_out * b_out;
          } else {  // mean row of one of the two variables
            coeff = row_var_a_[r] == groups_[g].var_a ? a_out : b_out;
          }
          if (coeff > 0) {
            table[combo] += scaled[r];
          } else {
            table[combo] -= scaled[r];
          }
        }
      }
    }
    tables.generic.reserve(generic_rows_.size());
    for (int r : generic_rows_) tables.generic.push_back(scaled[r]);
    if (!phase1 && small_costs_) {
      const Integer d = denom / cost_scale_;
      tables.scaled_costs.resize(cost_span_);
      for (long v = 0; v < cost_span_; ++v) {
        tables.scaled_costs[v] = Integer(cost_min_ + v) * d;
      }
    }
    return tables;
  }

  /// Scaled reduced cost of real column j; only its sign matters.
  void priced_cost(const PricingTables& tables, size_t j, bool phase1, Integer& rc) const {
    if (phase1) {
      rc = 0;
    } else if (small_costs_) {
      rc = tables.scaled_costs[cost_int_[j].convert_to<long>() - cost_min_];
    } else {
      rc = cost_int_[j] * (tables.denom_scale / cost_scale_);
    }
    rc -= tables.constant;
    for (size_t g = 0; g < groups_.size(); ++g) {
      const int combo = static_cast<int>((j >> groups_[g].var_a) & 1) |
                        (static_cast<int>((j >> groups_[g].var_b) & 1) << 1);
      rc -= tables.per_group[g][combo];
    }
    for (size_t k = 0; k < generic_rows_.size(); ++k) {
      const int c = a_[generic_rows_[k]][j];
      if (c > 0) {
        rc -= tables.generic[k];
      } else if (c < 0) {
        rc += tables.generic[k];
      }
    }
  }

  void iterate(bool phase1) {
    int stall = 0;
    bool bland = false;
    Integer rc;
    Integer best;
    for (;;) {
      const auto y = multipliers(phase1);
      const PricingTables tables = build_tables(y, phase1);
      long entering = -1;
      if (bland) {
        for (size_t j = 0; j < num_real_; ++j) {
          if (is_basic_real_[j]) continue;
          priced_cost(tables, j, phase1, rc);
          if (rc < 0) {
            entering = static_cast<long>(j);
            break;  // least index
          }
        }
      } else {
        for (size_t j = 0; j < num_real_; ++j) {
          if (is_basic_real_[j]) continue;
          priced_cost(tables, j, phase1, rc);
          if (rc < 0 && (entering < 0 || rc < best)) {
            entering = static_cast<long>(j);
            best = rc;
          }
        }
      }
      if (entering < 0) return;
      const bool degenerate = pivot_on(entering);
      if (degenerate) {
        if (++stall > 2 * m_) bland = true;  // escape degeneracy cycles
      } else {
        stall = 0;
        bland = false;
      }
    }
  }

  std::vector<Rational> direction(long column) const {
    std::vector<Rational> d(m_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      for (int r = 0; r < m_; ++r) {
        const int c = a_[r][column];
        if (c > 0) {
          d[i] += binv_[i][r];
        } else if (c < 0) {
          d[i] -= binv_[i][r];
        }
      }
    }
    return d;
  }

  /// Returns whether the step was degenerate (ratio zero).
  bool pivot_on(long entering) {
    const std::vector<Rational> d = direction(entering);
    int leave = -1;
    Rational best_ratio;
    for (int i = 0; i < m_; ++i) {
      if (d[i] <= 0) continue;
      const Rational ratio = xb_[i] / d[i];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basic_[i] < basic_[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      throw std::logic_error("lp: unbounded direction in a bounded polytope");
    }
    apply_pivot(leave, entering, d);
    return best_ratio == 0;
  }

  void apply_pivot(int leave, long entering, const std::vector<Rational>& d) {
    const Rational piv = d[leave];
    for (int r = 0; r < m_; ++r) binv_[leave][r] /= piv;
    xb_[leave] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave || d[i] == 0) continue;
      for (int r = 0; r < m_; ++r) binv_[i][r] -= d[i] * binv_[leave][r];
      xb_[i] -= d[i] * xb_[leave];
    }
    if (basic_[leave] < static_cast<long>(num_real_)) {
      is_basic_real_[basic_[leave]] = false;
    }
    basic_[leave] = entering;
    is_basic_real_[entering] = true;
    ++pivots_;
  }

  /// Degenerate artificials left basic at zero are pivoted onto any real
  /// column with a nonzero tableau entry; rows where none exists are
  /// redundant and stay inert through phase 2.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] < static_cast<long>(num_real_)) continue;
      for (size_t j = 0; j < num_real_; ++j) {
        if (is_basic_real_[j]) continue;
        const auto d = direction(static_cast<long>(j));
        if (d[i] == 0) continue;
        apply_pivot(i, static_cast<long>(j), d);
        break;
      }
    }
  }

  size_t num_real_;
  int m_;
  std::vector<std::vector<std::int8_t>> a_;
  std::vector<Rational> b_;
  std::vector<Rational> cost_;
  std::vector<Integer> cost_int_;
  Integer cost_scale_;
  bool small_costs_ = false;
  long cost_min_ = 0;
  long cost_span_ = 0;
  std::vector<std::vector<Rational>> binv_;
  std::vector<Rational> xb_;
  std::vector<long> basic_;
  std::vector<char> is_basic_real_;
  std::vector<std::int8_t> row_sign_;
  std::vector<AtomProgram::Row::Kind> row_kind_;
  std::vector<int> row_var_a_;
  std::vector<int> row_var_b_;
  std::vector<Group> groups_;
  std::vector<int> constant_rows_;
  std::vector<int> generic_rows_;
  long pivots_ = 0;
};

LpResult solve(const AtomProgram& program, bool feasibility_only) {
  ExactSimplex simplex(program);
  LpResult result;
  result.point = JointPmf(program.num_vars);
  if (!simplex.run_phase1()) {
    result.feasible = false;
    result.pivots = simplex.pivots();
    return result;
  }
  if (!feasibility_only) simplex.run_phase2();
  result.feasible = true;
  result.objective = simplex.objective();
  result.dual_objective = feasibility_only ? result.objective : simplex.dual_objective();
  result.point = simplex.extract_point(program.num_vars);
  result.pivots = simplex.pivots();
  return result;
}

int disagreement_count(size_t atom, int n) {
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (JointPmf::outcome(atom, var_of_v(i, n)) != JointPmf::outcome(atom, var_of_w(i, n))) {
      ++count;
    }
  }
  return count;
}

AtomProgram::Row normalization_row(size_t atoms, Rational rhs) {
  AtomProgram::Row row;
  row.coeffs.assign(atoms, 1);
  row.rhs = std::move(rhs);
  row.kind = AtomProgram::Row::Kind::kNormalization;
  return row;
}

AtomProgram::Row mean_row(size_t atoms, int var, Rational rhs) {
  AtomProgram::Row row;
  row.coeffs.resize(atoms);
  for (size_t atom = 0; atom < atoms; ++atom) {
    row.coeffs[atom] = static_cast<std::int8_t>(JointPmf::outcome(atom, var));
  }
  row.rhs = std::move(rhs);
  row.kind = AtomProgram::Row::Kind::kMean;
  row.var_a = var;
  return row;
}

AtomProgram::Row product_row(size_t atoms, int var_a, int var_b, Rational rhs) {
  AtomProgram::Row row;
  row.coeffs.resize(atoms);
  for (size_t atom = 0; atom < atoms; ++atom) {
    row.coeffs[atom] = static_cast<std::int8_t>(JointPmf::outcome(atom, var_a) *
                                                JointPmf::outcome(atom, var_b));
  }
  row.rhs = std::move(rhs);
  row.kind = AtomProgram::Row::Kind::kProduct;
  row.var_a = var_a;
  row.var_b = var_b;
  return row;
}

void check_limit(const SystemSpec& spec, const OracleLimits& limits) {
  if (spec.size() > limits.max_system_n) {
    throw ResourceError("system size " + std::to_string(spec.size()) +
                        " exceeds the oracle limit " + std::to_string(limits.max_system_n));
  }
}

}  // namespace

AtomProgram system_delta_program(const SystemSpec& spec) {
  require_valid(spec);
  const int n = spec.size();
  AtomProgram program;
  program.num_vars = 2 * n;
  const size_t atoms = program.num_atoms();
  program.objective.resize(atoms);
  for (size_t atom = 0; atom < atoms; ++atom) {
    program.objective[atom] = disagreement_count(atom, n);
  }
  program.rows.push_back(normalization_row(atoms, 1));
  for (int i = 0; i < n; ++i) {
    const auto& bunch = spec.bunch(i);
    const int v = var_of_v(i, n);
    const int w = var_of_w(spec.next(i), n);
    program.rows.push_back(mean_row(atoms, v, bunch.v_mean));
    program.rows.push_back(mean_row(atoms, w, bunch.w_next_mean));
    program.rows.push_back(product_row(atoms, v, w, bunch.product_mean));
  }
  return program;
}

void pin_connections(AtomProgram& program, const SystemSpec& spec,
                     const ConnectionVector& conns) {
  const int n = spec.size();
  if (program.num_vars != 2 * n) {
    throw DomainError("pin_connections: program does not match the system");
  }
  if (conns.size() != n) {
    throw DomainError("pin_connections: need one value per property");
  }
  const size_t atoms = program.num_atoms();
  for (int i = 0; i < n; ++i) {
    program.rows.push_back(
        product_row(atoms, var_of_v(i, n), var_of_w(i, n), conns.values[i]));
  }
}

AtomProgram cycle_program(std::span<const Rational> means, std::span<const Rational> corrs) {
  const int n = static_cast<int>(means.size());
  if (n < 3) throw DomainError("cycle_program: need at least three variables");
  if (corrs.size() != means.size()) {
    throw DomainError("cycle_program: need one correlation per edge");
  }
  AtomProgram program;
  program.num_vars = n;
  const size_t atoms = program.num_atoms();
  program.rows.push_back(normalization_row(atoms, 1));
  for (int i = 0; i < n; ++i) {
    program.rows.push_back(mean_row(atoms, i, means[i]));
  }
  for (int i = 0; i < n; ++i) {
    program.rows.push_back(product_row(atoms, i, (i + 1) % n, corrs[i]));
  }
  return program;
}

AtomProgram pair_program(const Rational& mean_a, const Rational& mean_b) {
  AtomProgram program;
  program.num_vars = 2;
  program.rows.push_back(normalization_row(4, 1));
  program.rows.push_back(mean_row(4, 0, mean_a));
  program.rows.push_back(mean_row(4, 1, mean_b));
  return program;
}

LpResult lp_minimize(const AtomProgram& program) { return solve(program, false); }

LpResult lp_feasible_point(const AtomProgram& program) { return solve(program, true); }

MinDeltaResult min_delta(const SystemSpec& spec, const OracleLimits& limits) {
  check_limit(spec, limits);
  const LpResult result = lp_minimize(system_delta_program(spec));
  if (!result.feasible) {
    throw std::logic_error("min_delta: coupling polytope of a valid system is empty");
  }
  if (result.objective != result.dual_objective) {
    throw std::logic_error("min_delta: primal/dual mismatch at termination");
  }
  return {result.objective, result.point, result.dual_objective};
}

ConnectionFeasibility feasible_with_connections(const SystemSpec& spec,
                                                const ConnectionVector& conns,
                                                const OracleLimits& limits) {
  check_limit(spec, limits);
  require_valid(spec);
  if (auto violations = validate_connections(conns, spec); !violations.empty()) {
    throw DomainError("feasible_with_connections: " + violations.front().message);
  }
  AtomProgram program = system_delta_program(spec);
  pin_connections(program, spec, conns);
  const LpResult result = lp_feasible_point(program);
  if (!result.feasible) return {false, std::nullopt};
  return {true, result.point};
}

std::vector<JointPmf> sample_program_vertices(const AtomProgram& program, int count,
                                              std::uint64_t seed) {
  if (count < 0) throw DomainError("vertex sample count must be nonnegative");
  std::mt19937_64 rng(seed);
  std::vector<JointPmf> out;
  out.reserve(count);
  AtomProgram randomized = program;
  randomized.objective.resize(randomized.num_atoms());
  for (int sample = 0; sample < count; ++sample) {
    for (auto& c : randomized.objective) {
      // modulo mapping instead of uniform_int_distribution: identical
      // streams on every platform
      c = static_cast<long long>(rng() % 33) - 16;
    }
    const LpResult result = lp_minimize(randomized);
    if (!result.feasible) {
      throw std::logic_error("sample_program_vertices: infeasible program");
    }
    out.push_back(result.point);
  }
  return out;
}

std::vector<JointPmf> enumerate_vertex_sample(const SystemSpec& spec, int count,
                                              std::uint64_t seed, const OracleLimits& limits) {
  check_limit(spec, limits);
  AtomProgram program = system_delta_program(spec);
  return sample_program_vertices(program, count, seed);
}

}  // namespace cyclex
