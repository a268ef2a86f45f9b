#pragma once

#include <random>

#include "cyclex/model.hpp"

namespace cyclex {

/// Sampling styles for random valid systems.
///  - kGrid: every expectation uniform on {k/8 : -8 <= k <= 8}, bunches
///    rejection-sampled against their pair bounds.
///  - kBoundary: marginals biased toward large magnitudes and products
///    pushed onto their pair bounds.
///  - kContextualLean: small marginals with products mostly at their
///    bounds, where violations are common.
///  - kSignaling: one property given strongly opposed marginals across its
///    two contexts, the rest of the cycle aligned; reaches the corners
///    where a pair floor dominates the connection maxima.
enum class SpecStyle { kGrid, kBoundary, kContextualLean, kSignaling };

/// A random valid system. Deterministic for a given rng state on every
/// platform (no uniform_int_distribution).
SystemSpec random_spec(std::mt19937_64& rng, int n, SpecStyle style = SpecStyle::kGrid);

/// Uniform draw from {k/8 : -8 <= k <= 8}.
Rational random_grid_value(std::mt19937_64& rng);

/// Random means plus cyclically adjacent correlations; correlations are
/// unconstrained grid draws (frequently infeasible) when `feasible_pairs`
/// is false, otherwise clamped into their pair bounds.
struct CycleSample {
  std::vector<Rational> means;
  std::vector<Rational> corrs;
};
CycleSample random_cycle(std::mt19937_64& rng, int n, bool feasible_pairs);

}  // namespace cyclex
