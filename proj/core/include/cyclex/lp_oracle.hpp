#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cyclex/model.hpp"
#include "cyclex/rational.hpp"

namespace cyclex {

/// Linear program over the atoms of a joint pmf: minimize a per-atom cost
/// subject to expectation equalities. Row coefficients are always in
/// {-1, 0, +1}; right-hand sides are exact rationals.
struct AtomProgram {
  struct Row {
    /// Structure hint for fast pricing; kGeneric rows are handled by the
    /// coefficient array alone.
    enum class Kind { kGeneric, kNormalization, kMean, kProduct };

    std::vector<std::int8_t> coeffs;  // one per atom
    Rational rhs;
    Kind kind = Kind::kGeneric;
    int var_a = -1;
    int var_b = -1;
  };

  int num_vars = 0;  // binary variables; atoms = 2^num_vars
  std::vector<Rational> objective;
  std::vector<Row> rows;

  size_t num_atoms() const { return size_t{1} << num_vars; }
};

struct OracleLimits {
  int max_system_n = 7;  // largest system the oracle will accept
};

/// Program whose feasible points are exactly the couplings of a system and
/// whose objective is the total connection disagreement.
AtomProgram system_delta_program(const SystemSpec& spec);

/// Appends the n equality rows pinning every <V_i W_i> to the given vector.
void pin_connections(AtomProgram& program, const SystemSpec& spec,
                     const ConnectionVector& conns);

/// Feasibility program for n variables on a cycle with all n adjacent
/// correlations prescribed.
AtomProgram cycle_program(std::span<const Rational> means, std::span<const Rational> corrs);

/// Feasibility program for a single pair with prescribed means (the
/// correlation left free).
AtomProgram pair_program(const Rational& mean_a, const Rational& mean_b);

struct LpResult {
  bool feasible = false;
  Rational objective;       // optimum (0 for feasibility-only solves)
  Rational dual_objective;  // exact dual value at termination; equals objective
  JointPmf point;           // a basic feasible solution attaining the optimum
  long pivots = 0;
};

/// Exact rational simplex (Bland's rule, two phases) minimizing the
/// program's objective. Never approximates: all arithmetic is rational.
LpResult lp_minimize(const AtomProgram& program);

/// Phase-1 only: reports feasibility and, when feasible, a basic feasible
/// point.
LpResult lp_feasible_point(const AtomProgram& program);

struct MinDeltaResult {
  Rational delta_min;
  JointPmf witness;
  Rational dual_objective;
};

/// Exact minimum of the total connection disagreement over all couplings of
/// the system, with an optimal coupling as witness. Throws ResourceError
/// when the system exceeds the configured size limit.
MinDeltaResult min_delta(const SystemSpec& spec, const OracleLimits& limits = {});

struct ConnectionFeasibility {
  bool feasible = false;
  std::optional<JointPmf> witness;
};

/// Does a coupling of the system with exactly these connection expectations
/// exist? Connection values must already satisfy their pair bounds.
ConnectionFeasibility feasible_with_connections(const SystemSpec& spec,
                                                const ConnectionVector& conns,
                                                const OracleLimits& limits = {});

/// Deterministic-by-seed sample of couplings: each entry optimizes a random
/// rational objective over the coupling polytope, so every result is a
/// vertex (basic feasible solution).
std::vector<JointPmf> enumerate_vertex_sample(const SystemSpec& spec, int count,
                                              std::uint64_t seed,
                                              const OracleLimits& limits = {});

/// Vertex sampling over an arbitrary atom program (test support for pair and
/// cycle polytopes).
std::vector<JointPmf> sample_program_vertices(const AtomProgram& program, int count,
                                              std::uint64_t seed);

}  // namespace cyclex
