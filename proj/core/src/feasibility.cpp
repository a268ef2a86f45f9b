#include "cyclex/feasibility.hpp"

#include <array>
#include <string>
#include <vector>

#include "cyclex/errors.hpp"
#include "cyclex/smax.hpp"

namespace cyclex {

namespace {

void require_mean(const Rational& mean, const char* which) {
  if (mean < -1 || mean > 1) {
    throw DomainError(std::string(which) + " mean outside [-1, 1]: " + fraction_string(mean));
  }
}

}  // namespace

Bounds pair_bounds(const Rational& mean_a, const Rational& mean_b) {
  require_mean(mean_a, "first");
  require_mean(mean_b, "second");
  return {abs(mean_a + mean_b) - 1, 1 - abs(mean_a - mean_b)};
}

JointPmf pair_pmf(const Rational& mean_a, const Rational& mean_b, const Rational& corr) {
  const Bounds bounds = pair_bounds(mean_a, mean_b);
  if (!bounds.contains(corr)) {
    throw InfeasibleError("pair correlation " + fraction_string(corr) + " outside [" +
                          fraction_string(bounds.lo) + ", " + fraction_string(bounds.hi) + "]");
  }
  JointPmf pmf(2);
  for (size_t atom = 0; atom < 4; ++atom) {
    const int a = JointPmf::outcome(atom, 0);
    const int b = JointPmf::outcome(atom, 1);
    pmf.prob(atom) = (1 + a * mean_a + b * mean_b + a * b * corr) / 4;
  }
  return pmf;
}

JointPmf maximal_pair_coupling(const Rational& mean_a, const Rational& mean_b) {
  return pair_pmf(mean_a, mean_b, 1 - abs(mean_a - mean_b));
}

Rational min_disagree_prob(const Rational& mean_a, const Rational& mean_b) {
  return abs(mean_a - mean_b) / 2;
}

JointPmf chain_joint(std::span<const Rational> means, std::span<const Rational> corrs) {
  const size_t n = means.size();
  if (n < 1) throw DomainError("chain_joint: need at least one variable");
  if (corrs.size() + 1 != n) {
    throw DomainError("chain_joint: need exactly n-1 adjacent correlations");
  }
  for (size_t i = 0; i < n; ++i) require_mean(means[i], "chain");

  // kernel[i][a][b] = Pr[X_{i+1} = b | X_i = a], exact; uniform on
  // zero-probability conditioning outcomes (any choice yields the same joint).
  std::vector<std::array<std::array<Rational, 2>, 2>> kernel(corrs.size());
  for (size_t i = 0; i < corrs.size(); ++i) {
    const Bounds bounds = pair_bounds(means[i], means[i + 1]);
    if (!bounds.contains(corrs[i])) {
      throw InfeasibleError("adjacent pair " + std::to_string(i) + " infeasible: correlation " +
                                fraction_string(corrs[i]) + " outside [" +
                                fraction_string(bounds.lo) + ", " + fraction_string(bounds.hi) + "]",
                            static_cast<int>(i));
    }
    const JointPmf pair = pair_pmf(means[i], means[i + 1], corrs[i]);
    for (int abit = 0; abit < 2; ++abit) {
      const int a = abit ? 1 : -1;
      const Rational marginal = (1 + a * means[i]) / 2;
      for (int bbit = 0; bbit < 2; ++bbit) {
        kernel[i][abit][bbit] = marginal == 0
                                    ? make_rational(1, 2)
                                    : pair.prob(abit | (bbit << 1)) / marginal;
      }
    }
  }

  JointPmf joint(static_cast<int>(n));
  for (size_t atom = 0; atom < joint.num_atoms(); ++atom) {
    const int first = atom & 1;
    Rational p = (1 + (first ? 1 : -1) * means[0]) / 2;
    for (size_t i = 0; i + 1 < n && p != 0; ++i) {
      p *= kernel[i][(atom >> i) & 1][(atom >> (i + 1)) & 1];
    }
    joint.prob(atom) = p;
  }
  return joint;
}

bool cycle_feasible(std::span<const Rational> means, std::span<const Rational> corrs) {
  const size_t n = means.size();
  if (n < 3) throw DomainError("cycle_feasible: need at least three variables");
  if (corrs.size() != n) throw DomainError("cycle_feasible: need one correlation per edge");
  for (size_t i = 0; i < n; ++i) {
    const Bounds bounds = pair_bounds(means[i], means[(i + 1) % n]);
    if (!bounds.contains(corrs[i])) return false;
  }
  return s_one(corrs).value <= static_cast<int>(n) - 2;
}

Bounds closing_range(std::span<const Rational> means, std::span<const Rational> corrs) {
  const size_t n = means.size();
  if (n < 2) throw DomainError("closing_range: need at least two variables");
  if (corrs.size() + 1 != n) {
    throw DomainError("closing_range: need exactly n-1 chain correlations");
  }
  for (size_t i = 0; i + 1 < n; ++i) {
    const Bounds bounds = pair_bounds(means[i], means[i + 1]);
    if (!bounds.contains(corrs[i])) {
      throw InfeasibleError("chain infeasible at pair " + std::to_string(i),
                            static_cast<int>(i));
    }
  }
  const Rational slack = static_cast<int>(n) - 2;
  Bounds range{signed_sum_max(corrs, 1).value - slack, slack - signed_sum_max(corrs, -1).value};
  if (range.empty()) {
    throw std::logic_error("closing_range: empty interval on a feasible chain");
  }
  const Bounds direct = pair_bounds(means[n - 1], means[0]);
  if (range.hi < direct.lo || direct.hi < range.lo) {
    throw std::logic_error("closing_range: interval misses the pair bounds");
  }
  return range;
}

}  // namespace cyclex
