#pragma once

#include <span>

#include "cyclex/model.hpp"
#include "cyclex/rational.hpp"

namespace cyclex {

struct Bounds {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool empty() const { return lo > hi; }
};

/// Admissible range of <AB> for +-1 variables with the given means:
/// [|a+b|-1, 1-|a-b|]. Means must lie in [-1, 1].
Bounds pair_bounds(const Rational& mean_a, const Rational& mean_b);

/// The unique pair pmf p(a,b) = (1 + a<A> + b<B> + ab<AB>)/4. Throws
/// InfeasibleError when corr is outside pair_bounds.
JointPmf pair_pmf(const Rational& mean_a, const Rational& mean_b, const Rational& corr);

/// Pair coupling with the largest possible <AB>; it minimizes
/// Pr[A != B] down to |<A>-<B>|/2.
JointPmf maximal_pair_coupling(const Rational& mean_a, const Rational& mean_b);

/// Pr[A != B] of the maximal coupling.
Rational min_disagree_prob(const Rational& mean_a, const Rational& mean_b);

/// Markov-chain joint over n variables realizing the given means and the
/// n-1 adjacent correlations, glued from pair pmfs left to right. Reproduces
/// all specified 1- and 2-marginals exactly. Degenerate conditionals (a
/// conditioning outcome of probability zero) use a uniform kernel row.
JointPmf chain_joint(std::span<const Rational> means, std::span<const Rational> corrs);

/// Cycle existence test for n >= 3 variables with n cyclically adjacent
/// correlations: every adjacent pair must satisfy pair_bounds and
/// s1(corrs) <= n - 2.
bool cycle_feasible(std::span<const Rational> means, std::span<const Rational> corrs);

/// Range of the closing correlation <A_n A_1> compatible with a feasible
/// chain: [s0(corrs) - (n-2), (n-2) - s1(corrs)]. The caller intersects
/// with pair_bounds(means_n, means_1); that intersection is never empty.
Bounds closing_range(std::span<const Rational> means, std::span<const Rational> corrs);

}  // namespace cyclex
