#pragma once

// Independent test oracles and small builders shared by the suites. The
// enumeration oracle must stay brute force: it is the reference the O(k)
// production path is checked against.

#include <random>
#include <span>
#include <vector>

#include "cyclex/model.hpp"
#include "cyclex/rational.hpp"
#include "cyclex/smax.hpp"

namespace cyclex::testing {

/// Exhaustive signed-sum maximum over all 2^k sign patterns with the given
/// parity. O(2^k); keep k small.
inline SignedMax enumerate_signed_max(std::span<const Rational> xs, int parity) {
  const size_t k = xs.size();
  bool found = false;
  SignedMax best;
  for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
    int prod = 1;
    Rational sum = 0;
    SignPattern pattern;
    pattern.signs.resize(k);
    for (size_t i = 0; i < k; ++i) {
      const int sign = (mask >> i) & 1 ? -1 : 1;
      pattern.signs[i] = sign;
      prod *= sign;
      sum += sign * xs[i];
    }
    if (prod != parity) continue;
    if (!found || sum > best.value) {
      pattern.parity = parity;
      best = {sum, pattern};
      found = true;
    }
  }
  return best;
}

/// Random rational in [-1, 1] with denominator dividing `denom`.
inline Rational random_unit_rational(std::mt19937_64& rng, long denom = 8) {
  const long num = static_cast<long>(rng() % (2 * denom + 1)) - denom;
  return make_rational(num, denom);
}

inline std::vector<Rational> random_unit_vector(std::mt19937_64& rng, size_t k,
                                                long denom = 8) {
  std::vector<Rational> xs;
  xs.reserve(k);
  for (size_t i = 0; i < k; ++i) xs.push_back(random_unit_rational(rng, denom));
  return xs;
}

/// System with all marginals zero and the given bunch products.
inline SystemSpec zero_marginal_system(std::vector<Rational> products) {
  std::vector<BunchStats> bunches;
  bunches.reserve(products.size());
  for (auto& p : products) bunches.push_back({0, 0, std::move(p)});
  return SystemSpec(std::move(bunches));
}

}  // namespace cyclex::testing
