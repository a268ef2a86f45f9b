#pragma once

#include <vector>

#include "cyclex/model.hpp"
#include "cyclex/rational.hpp"

namespace cyclex {

/// Minimal total connection disagreement achievable per-connection:
/// (1/2) sum |<V_i> - <W_i>|.
Rational delta_zero(const SystemSpec& spec);

struct DeltaMin {
  Rational value;
  AnalysisReport::Branch branch;  // which max branch was attained (ties: marginals)
};

/// Closed-form minimum of the total connection disagreement over all
/// couplings of the whole system:
/// (1/2) max{ s1(products) - (n-2), sum |<V_i> - <W_i>| }.
DeltaMin delta_min_formula(const SystemSpec& spec);

/// Contextuality criterion in product form:
/// s1(products) > sum |<V_i> - <W_i>| + (n-2), strictly.
bool criterion_conjectured(const SystemSpec& spec);

/// Contextuality criterion over the 2n-vector of products and connection
/// maxima: s1(products, 1-|<V_i>-<W_i>|) > 2n-2, strictly. Equivalent to
/// criterion_conjectured on every valid system.
bool criterion_main(const SystemSpec& spec);

struct Canonicalization {
  std::vector<int> signs;  // per-property +-1 multipliers
  SystemSpec transformed;  // sign_flipped(spec, signs)
  int pivot;               // index whose product may stay negative
};

/// Chooses per-property signs so that every transformed product except the
/// smallest-magnitude one is nonnegative and at least that magnitude. The
/// measure, both criteria, and all connection bounds are unchanged by the
/// transformation.
Canonicalization canonicalize_signs(const SystemSpec& spec);

enum class ConnectionCase {
  kMaximal,  // noncontextual: every connection at its pair maximum
  kCase1,    // some pair floor exceeds the pivot connection maximum
  kCase2,    // the pivot connection maximum is negative
  kCase3,    // pivot maximum below the pivot product (vacuous for
             // contextual systems; kept for dispatch fidelity)
  kCase4,    // remaining case
};

struct OptimalConnections {
  ConnectionVector vector;
  ConnectionCase dispatch;
};

/// A connection vector achieving the largest possible sum of <V_i W_i>
/// over couplings of the whole system, i.e. realizing delta_min. For a
/// contextual system the construction dispatches on the shape of the
/// connection maxima and finishes with an exact one-dimensional refinement
/// toward the maximal vector, landing on sum = 2n-2 - s1(products).
OptimalConnections optimal_connection_vector(const SystemSpec& spec);

/// Full report: delta0, delta_min, the measure, both criteria inputs,
/// canonical signs and the optimal connection vector.
AnalysisReport analyze(const SystemSpec& spec);

}  // namespace cyclex
