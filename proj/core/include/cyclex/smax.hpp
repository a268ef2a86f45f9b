#pragma once

#include <span>
#include <vector>

#include "cyclex/rational.hpp"

namespace cyclex {

/// A ±1 sign assignment together with its parity (the product of the signs).
struct SignPattern {
  std::vector<int> signs;
  int parity = 1;
};

struct SignedMax {
  Rational value;
  SignPattern witness;
};

/// Maximum of sum(m_i * x_i) over sign patterns m with the given parity
/// (product of signs). Evaluated in O(k) by flipping the smallest-magnitude
/// entry when the natural signs have the wrong parity. Accepts k >= 1.
SignedMax signed_sum_max(std::span<const Rational> xs, int parity);

/// s1: the odd-parity signed-sum maximum. Requires k >= 2.
SignedMax s_one(std::span<const Rational> xs);

/// s0: the even-parity signed-sum maximum. Requires k >= 2.
SignedMax s_zero(std::span<const Rational> xs);

/// Dichotomy over a real vector: either some pivot k has a_i >= |a_k| for
/// all i != k, or some pair has a_j + a_k < 0. Exactly one case applies.
struct IndexClassification {
  enum class Kind { kPivot, kNegativePair };
  Kind kind;
  int pivot = -1;    // kPivot: 0-based pivot index
  int first = -1;    // kNegativePair: lexicographically smallest pair
  int second = -1;
};

IndexClassification classify_indices(std::span<const Rational> xs);

/// Closed-form s1 under the pivot hypothesis (a_i >= a_k and a_i >= 0 for
/// all i != k): sum of the others minus the pivot. Throws DomainError when
/// the hypothesis fails.
Rational expand_s1_pivot(std::span<const Rational> xs, int pivot);

/// Closed-form s0 when the pivot case of classify_indices holds: the plain
/// sum. Throws DomainError when it does not.
Rational expand_s0_pivot(std::span<const Rational> xs);

}  // namespace cyclex
