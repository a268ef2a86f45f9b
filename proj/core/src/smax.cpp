#include "cyclex/smax.hpp"

#include <cstddef>

#include "cyclex/errors.hpp"

namespace cyclex {

SignedMax signed_sum_max(std::span<const Rational> xs, int parity) {
  if (parity != 1 && parity != -1) throw DomainError("parity must be +1 or -1");
  if (xs.empty()) throw DomainError("signed_sum_max needs at least one argument");

  SignPattern pattern;
  pattern.signs.reserve(xs.size());
  Rational total = 0;
  int natural_parity = 1;
  size_t argmin = 0;
  Rational min_abs = abs(xs[0]);
  for (size_t i = 0; i < xs.size(); ++i) {
    const int sign = xs[i] < 0 ? -1 : 1;
    pattern.signs.push_back(sign);
    natural_parity *= sign;
    total += abs(xs[i]);
    if (abs(xs[i]) < min_abs) {
      min_abs = abs(xs[i]);
      argmin = i;
    }
  }
  if (natural_parity != parity) {
    pattern.signs[argmin] = -pattern.signs[argmin];
    total -= 2 * min_abs;
  }
  pattern.parity = parity;
  return {total, pattern};
}

SignedMax s_one(std::span<const Rational> xs) {
  if (xs.size() < 2) throw DomainError("s_one needs at least two arguments");
  return signed_sum_max(xs, -1);
}

SignedMax s_zero(std::span<const Rational> xs) {
  if (xs.size() < 2) throw DomainError("s_zero needs at least two arguments");
  return signed_sum_max(xs, 1);
}

IndexClassification classify_indices(std::span<const Rational> xs) {
  const size_t n = xs.size();
  if (n < 2) throw DomainError("classify_indices needs at least two arguments");

  // Any pivot witness necessarily minimizes |a_i|, so only argmins of the
  // magnitude need to be probed, in index order.
  Rational min_abs = abs(xs[0]);
  for (size_t i = 1; i < n; ++i) {
    if (abs(xs[i]) < min_abs) min_abs = abs(xs[i]);
  }
  for (size_t k = 0; k < n; ++k) {
    if (abs(xs[k]) != min_abs) continue;
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
      if (i != k && xs[i] < min_abs) ok = false;
    }
    if (ok) {
      return {IndexClassification::Kind::kPivot, static_cast<int>(k), -1, -1};
    }
  }
  for (size_t j = 0; j + 1 < n; ++j) {
    for (size_t k = j + 1; k < n; ++k) {
      if (xs[j] + xs[k] < 0) {
        return {IndexClassification::Kind::kNegativePair, -1, static_cast<int>(j),
                static_cast<int>(k)};
      }
    }
  }
  throw std::logic_error("classify_indices: dichotomy exhausted");  // unreachable
}

Rational expand_s1_pivot(std::span<const Rational> xs, int pivot) {
  if (xs.size() < 2) throw DomainError("expand_s1_pivot needs at least two arguments");
  if (pivot < 0 || static_cast<size_t>(pivot) >= xs.size()) {
    throw DomainError("expand_s1_pivot: pivot out of range");
  }
  Rational sum = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (static_cast<int>(i) == pivot) continue;
    if (xs[i] < xs[pivot] || xs[i] < 0) {
      throw DomainError("expand_s1_pivot: hypothesis a_i >= a_k, a_i >= 0 violated");
    }
    sum += xs[i];
  }
  return sum - xs[pivot];
}

Rational expand_s0_pivot(std::span<const Rational> xs) {
  const auto cls = classify_indices(xs);
  if (cls.kind != IndexClassification::Kind::kPivot) {
    throw DomainError("expand_s0_pivot: pivot condition does not hold");
  }
  Rational sum = 0;
  for (const auto& x : xs) sum += x;
  return sum;
}

}  // namespace cyclex
