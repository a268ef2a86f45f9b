#include "cyclex/generate.hpp"

#include <algorithm>

#include "cyclex/errors.hpp"
#include "cyclex/feasibility.hpp"

namespace cyclex {

namespace {

Rational clamp(const Rational& x, const Rational& lo, const Rational& hi) {
  return std::min(std::max(x, lo), hi);
}

Rational boundary_marginal(std::mt19937_64& rng) {
  static constexpr int kChoices[] = {-8, -7, -6, 0, 6, 7, 8};
  return make_rational(kChoices[rng() % 7], 8);
}

Rational small_marginal(std::mt19937_64& rng) {
  return make_rational(static_cast<long long>(rng() % 5) - 2, 8);
}

Rational bound_or_grid(std::mt19937_64& rng, const Bounds& bounds, int grid_weight) {
  const auto pick = rng() % (2 + grid_weight);
  if (pick == 0) return bounds.lo;
  if (pick == 1) return bounds.hi;
  return clamp(random_grid_value(rng), bounds.lo, bounds.hi);
}

Rational extreme_bound(std::mt19937_64& rng, const Bounds& bounds) {
  // Mostly the endpoint of larger magnitude; that choice keeps the product
  // pattern near the violation corner.
  const Rational big = abs(bounds.lo) > abs(bounds.hi) ? bounds.lo : bounds.hi;
  const Rational other = big == bounds.lo ? bounds.hi : bounds.lo;
  const auto pick = rng() % 8;
  if (pick < 6) return big;
  if (pick == 6) return other;
  return clamp(random_grid_value(rng), bounds.lo, bounds.hi);
}

BunchStats random_bunch(std::mt19937_64& rng, SpecStyle style) {
  for (;;) {
    BunchStats bunch;
    switch (style) {
      case SpecStyle::kGrid:
        bunch.v_mean = random_grid_value(rng);
        bunch.w_next_mean = random_grid_value(rng);
        bunch.product_mean = random_grid_value(rng);
        if (!pair_bounds(bunch.v_mean, bunch.w_next_mean).contains(bunch.product_mean)) {
          continue;  // rejection sampling
        }
        return bunch;
      case SpecStyle::kBoundary: {
        bunch.v_mean = boundary_marginal(rng);
        bunch.w_next_mean = boundary_marginal(rng);
        bunch.product_mean = bound_or_grid(rng, pair_bounds(bunch.v_mean, bunch.w_next_mean), 1);
        return bunch;
      }
      case SpecStyle::kContextualLean: {
        bunch.v_mean = small_marginal(rng);
        bunch.w_next_mean = small_marginal(rng);
        bunch.product_mean = bound_or_grid(rng, pair_bounds(bunch.v_mean, bunch.w_next_mean), 1);
        return bunch;
      }
      case SpecStyle::kSignaling:
        throw DomainError("kSignaling is sampled per system, not per bunch");
    }
  }
}

SystemSpec signaling_spec(std::mt19937_64& rng, int n) {
  // One property measured with strongly opposed biases in its two contexts;
  // every other property aligned across both of its contexts, sometimes a
  // notch larger so its pair floor can dominate.
  const Rational mu = make_rational(5 + static_cast<long long>(rng() % 4), 8);
  const int p = static_cast<int>(rng() % n);
  std::vector<int> sigma(n);
  for (auto& s : sigma) s = rng() % 2 == 0 ? 1 : -1;

  std::vector<Rational> v_mean(n), w_mean(n);
  for (int i = 0; i < n; ++i) {
    Rational nu = mu;
    if (i != p && rng() % 3 == 0) nu = std::min(Rational(mu + make_rational(1, 8)), Rational(1));
    v_mean[i] = sigma[i] * nu;
    w_mean[i] = i == p ? Rational(-sigma[i] * nu) : Rational(sigma[i] * nu);
  }

  std::vector<BunchStats> bunches(n);
  for (int i = 0; i < n; ++i) {
    bunches[i].v_mean = v_mean[i];
    bunches[i].w_next_mean = w_mean[(i + 1) % n];
    bunches[i].product_mean =
        extreme_bound(rng, pair_bounds(bunches[i].v_mean, bunches[i].w_next_mean));
  }
  return SystemSpec(std::move(bunches));
}

}  // namespace

Rational random_grid_value(std::mt19937_64& rng) {
  return make_rational(static_cast<long long>(rng() % 17) - 8, 8);
}

SystemSpec random_spec(std::mt19937_64& rng, int n, SpecStyle style) {
  if (n < 2) throw DomainError("random_spec: n must be at least 2");
  if (style == SpecStyle::kSignaling) return signaling_spec(rng, n);
  std::vector<BunchStats> bunches;
  bunches.reserve(n);
  for (int i = 0; i < n; ++i) bunches.push_back(random_bunch(rng, style));
  return SystemSpec(std::move(bunches));
}

CycleSample random_cycle(std::mt19937_64& rng, int n, bool feasible_pairs) {
  if (n < 3) throw DomainError("random_cycle: n must be at least 3");
  CycleSample sample;
  sample.means.reserve(n);
  sample.corrs.reserve(n);
  for (int i = 0; i < n; ++i) sample.means.push_back(random_grid_value(rng));
  for (int i = 0; i < n; ++i) {
    const Rational raw = random_grid_value(rng);
    if (!feasible_pairs) {
      sample.corrs.push_back(raw);
      continue;
    }
    const Bounds bounds = pair_bounds(sample.means[i], sample.means[(i + 1) % n]);
    sample.corrs.push_back(clamp(raw, bounds.lo, bounds.hi));
  }
  return sample;
}

}  // namespace cyclex
