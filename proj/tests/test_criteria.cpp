#include <doctest.h>

#include <random>

#include "cyclex/criteria.hpp"
#include "cyclex/errors.hpp"
#include "cyclex/feasibility.hpp"
#include "cyclex/generate.hpp"
#include "cyclex/lp_oracle.hpp"
#include "cyclex/presets.hpp"
#include "cyclex/smax.hpp"
#include "support/oracles.hpp"

using namespace cyclex;
using cyclex::testing::zero_marginal_system;

namespace {

Rational r(long long num, long long den = 1) { return make_rational(num, den); }

SystemSpec spec_from_means(const std::vector<Rational>& v_means,
                           const std::vector<Rational>& w_means,
                           const std::vector<Rational>& products) {
  // w_means[i] is <W_{i+1}>, stored as bunch i's second marginal.
  const int n = static_cast<int>(v_means.size());
  std::vector<BunchStats> bunches(n);
  for (int i = 0; i < n; ++i) {
    bunches[i] = {v_means[i], w_means[(i + 1) % n], products[i]};
  }
  return SystemSpec(std::move(bunches));
}

}  // namespace

TEST_SUITE("criteria") {

TEST_CASE("delta0 vanishes for consistently connected systems") {
  CHECK(delta_zero(zero_marginal_system({1, 1, 1, -1})) == 0);
}

TEST_CASE("delta0 sums the marginal gaps") {
  const auto spec = spec_from_means({r(1, 5), 0, r(-2, 5)}, {0, r(1, 5), r(2, 5)},
                                    {0, 0, 0});
  CHECK(delta_zero(spec) == r(3, 5));

  const auto signaling =
      spec_from_means({1, 0}, {-1, 0}, {0, 0});
  CHECK(delta_zero(signaling) == 1);
}

TEST_CASE("delta_min formula on the reference systems") {
  const auto dm = delta_min_formula(preset_spec("pr-box"));
  CHECK(dm.value == 1);
  CHECK(dm.branch == AnalysisReport::Branch::kS1Excess);

  const auto tsirelson = delta_min_formula(preset_spec("chsh-tsirelson"));
  CHECK(tsirelson.value == r(4142, 10000));

  const auto classical = delta_min_formula(preset_spec("chsh-classical"));
  CHECK(classical.value == 0);
  CHECK(classical.branch == AnalysisReport::Branch::kMarginals);
}

TEST_CASE("measure of the reference systems") {
  CHECK(analyze(preset_spec("pr-box")).cntx == 1);
  CHECK(analyze(preset_spec("pr-box")).contextual);
  CHECK(analyze(preset_spec("chsh-classical")).cntx == 0);
  CHECK(analyze(preset_spec("leggett-garg-max")).cntx == 1);
  CHECK(analyze(preset_spec("kcbs-max")).cntx == 1);
  CHECK(analyze(preset_spec("chsh-tsirelson")).cntx == r(4142, 10000));
}

TEST_CASE("analysis refuses invalid systems") {
  const SystemSpec broken({{r(1, 2), r(-1, 2), r(1, 2)}, {0, 0, 0}});
  CHECK_THROWS_AS(analyze(broken), ValidationError);
  CHECK_THROWS_AS(delta_zero(broken), ValidationError);
}

TEST_CASE("direct-influence systems carry no contextuality") {
  // <V_1> = <W_2> = 1 forces the first product; the free closing product
  // never creates contextuality.
  for (int c8 = -8; c8 <= 8; c8 += 4) {
    const auto spec = spec_from_means({1, 0}, {0, 1}, {1, r(c8, 8)});
    REQUIRE(validate_system(spec).empty());
    const auto report = analyze(spec);
    CHECK(report.cntx == 0);
    CHECK_FALSE(report.contextual);
    CHECK(min_delta(spec).delta_min == report.delta_min);
  }
}

TEST_CASE("product criterion is strict at the boundary") {
  CHECK_FALSE(criterion_conjectured(preset_spec("chsh-classical")));
  CHECK(criterion_conjectured(preset_spec("pr-box")));
  // s1 = 2 equals the threshold n - 2 + 0 exactly
  const auto boundary = zero_marginal_system({1, 1, 0, 0});
  CHECK(s_one(std::vector<Rational>{1, 1, 0, 0}).value == 2);
  CHECK_FALSE(criterion_conjectured(boundary));
  CHECK_FALSE(criterion_main(boundary));
  CHECK(analyze(boundary).cntx == 0);
}

TEST_CASE("main criterion on the reference systems") {
  CHECK(criterion_main(preset_spec("pr-box")));
  CHECK(analyze(preset_spec("pr-box")).main_criterion_lhs == 8);
  CHECK_FALSE(criterion_main(preset_spec("chsh-classical")));
  CHECK(analyze(preset_spec("chsh-classical")).main_criterion_lhs == 6);
}

TEST_CASE("the two criteria agree everywhere") {
  std::mt19937_64 rng(101);
  constexpr SpecStyle styles[] = {SpecStyle::kGrid, SpecStyle::kContextualLean,
                                  SpecStyle::kBoundary, SpecStyle::kSignaling};
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto spec = random_spec(rng, n, styles[trial % 4]);
    CAPTURE(trial);
    CHECK(criterion_conjectured(spec) == criterion_main(spec));
  }
}

TEST_CASE("measure bounds and positivity") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto spec = random_spec(rng, n,
                                  trial % 2 ? SpecStyle::kContextualLean : SpecStyle::kGrid);
    const auto report = analyze(spec);
    CHECK(report.delta0 >= 0);
    CHECK(report.delta0 <= report.delta_min);
    CHECK(report.delta_min <= n);
    CHECK(report.cntx >= 0);
    CHECK(report.contextual == (report.cntx > 0));
    CHECK(report.contextual == criterion_main(spec));
  }
}

TEST_CASE("sign canonicalization on the worked example") {
  const auto spec = zero_marginal_system({r(-9, 10), r(7, 10), r(-1, 5)});
  const auto canon = canonicalize_signs(spec);
  CHECK(canon.pivot == 2);
  REQUIRE(canon.signs.size() == 3);
  CHECK(canon.signs[0] == 1);
  CHECK(canon.signs[1] == -1);
  CHECK(canon.signs[2] == -1);
  CHECK(canon.transformed.product_mean(0) == r(9, 10));
  CHECK(canon.transformed.product_mean(1) == r(7, 10));
  CHECK(canon.transformed.product_mean(2) == r(1, 5));
}

TEST_CASE("canonicalization is the identity on nonnegative products") {
  const auto spec = zero_marginal_system({r(1, 2), r(3, 4), r(1, 4)});
  const auto canon = canonicalize_signs(spec);
  for (int s : canon.signs) CHECK(s == 1);
}

TEST_CASE("canonicalization preserves the measure and establishes the pivot") {
  std::mt19937_64 rng(107);
  constexpr SpecStyle styles[] = {SpecStyle::kGrid, SpecStyle::kContextualLean,
                                  SpecStyle::kBoundary, SpecStyle::kSignaling};
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto spec = random_spec(rng, n, styles[trial % 4]);
    const auto canon = canonicalize_signs(spec);
    CHECK(validate_system(canon.transformed).empty());
    CHECK(analyze(canon.transformed).cntx == analyze(spec).cntx);
    const Rational pivot_mag = abs(canon.transformed.product_mean(canon.pivot));
    for (int i = 0; i < n; ++i) {
      if (i != canon.pivot) CHECK(canon.transformed.product_mean(i) >= pivot_mag);
    }
  }
}

TEST_CASE("measure is invariant under relabelings") {
  std::mt19937_64 rng(109);
  constexpr SpecStyle styles[] = {SpecStyle::kGrid, SpecStyle::kContextualLean,
                                  SpecStyle::kBoundary, SpecStyle::kSignaling};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto spec = random_spec(rng, n, styles[trial % 4]);
    const Rational cntx = analyze(spec).cntx;
    for (int shift = 1; shift < n; ++shift) {
      CHECK(analyze(rotated(spec, shift)).cntx == cntx);
    }
    CHECK(analyze(reflected(spec)).cntx == cntx);
    std::vector<int> signs(n);
    for (auto& s : signs) s = rng() % 2 ? 1 : -1;
    CHECK(analyze(sign_flipped(spec, signs)).cntx == cntx);
  }
}

TEST_CASE("the two criterion expressions differ as expressions") {
  // Search for a system where s1(products) - sum|gap| + n differs from the
  // 2n-argument value while both criteria still agree.
  std::mt19937_64 rng(113);
  constexpr SpecStyle styles[] = {SpecStyle::kGrid, SpecStyle::kContextualLean,
                                  SpecStyle::kBoundary, SpecStyle::kSignaling};
  int found = 0;
  for (int trial = 0; trial < 5000 && found == 0; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto spec = random_spec(rng, n, styles[trial % 4]);
    std::vector<Rational> products;
    Rational gap = 0;
    for (int i = 0; i < n; ++i) {
      products.push_back(spec.product_mean(i));
      gap += abs(spec.v_mean(i) - spec.w_mean(i));
    }
    const Rational expr_a = s_one(products).value - gap + n;
    const Rational expr_b = analyze(spec).main_criterion_lhs;
    CHECK(criterion_conjectured(spec) == criterion_main(spec));
    if (expr_a != expr_b) ++found;
  }
  CHECK(found >= 1);
}

TEST_CASE("optimal connections for the reference systems") {
  const auto pr = optimal_connection_vector(preset_spec("pr-box"));
  CHECK(pr.dispatch == ConnectionCase::kCase4);
  Rational sum = 0;
  for (const auto& v : pr.vector.values) sum += v;
  CHECK(sum == 2);  // 2n - 2 - s1 = 8 - 2 - 4
  const auto fc = feasible_with_connections(preset_spec("pr-box"), pr.vector);
  REQUIRE(fc.feasible);
  CHECK(delta_of_coupling(*fc.witness) == 1);

  const auto classical = optimal_connection_vector(preset_spec("chsh-classical"));
  CHECK(classical.dispatch == ConnectionCase::kMaximal);
  for (const auto& v : classical.vector.values) CHECK(v == 1);
}

TEST_CASE("optimal connection sum matches the closed form") {
  std::mt19937_64 rng(127);
  constexpr SpecStyle styles[] = {SpecStyle::kGrid, SpecStyle::kContextualLean,
                                  SpecStyle::kBoundary, SpecStyle::kSignaling};
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto spec = random_spec(rng, n, styles[trial % 4]);
    const auto optimal = optimal_connection_vector(spec);
    CHECK(validate_connections(optimal.vector, spec).empty());
    std::vector<Rational> products;
    Rational gap = 0;
    for (int i = 0; i < n; ++i) {
      products.push_back(spec.product_mean(i));
      gap += abs(spec.v_mean(i) - spec.w_mean(i));
    }
    const Rational cap = std::min(Rational(2 * n - 2 - s_one(products).value),
                                  Rational(n - gap));
    Rational sum = 0;
    for (const auto& v : optimal.vector.values) sum += v;
    CHECK(sum == cap);
  }
}

TEST_CASE("optimal connections are realizable at the optimum") {
  std::mt19937_64 rng(131);
  constexpr SpecStyle styles[] = {SpecStyle::kContextualLean, SpecStyle::kSignaling};
  int contextual_seen = 0;
  for (int trial = 0; trial < 400 && contextual_seen < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto spec = random_spec(rng, n, styles[trial % 2]);
    const auto report = analyze(spec);
    if (!report.contextual) continue;
    ++contextual_seen;
    const auto fc = feasible_with_connections(spec, report.optimal_connections);
    REQUIRE(fc.feasible);
    CHECK(delta_of_coupling(*fc.witness) == report.delta_min);
    CHECK(coupling_mismatches(*fc.witness, spec).empty());
  }
  CHECK(contextual_seen >= 60);
}

TEST_CASE("connection expectation equals one minus twice the disagreement") {
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 3;
    const auto spec = random_spec(rng, n, SpecStyle::kGrid);
    for (const auto& pmf : enumerate_vertex_sample(spec, 6, 77 + trial)) {
      for (int i = 0; i < n; ++i) {
        const int v = var_of_v(i, n);
        const int w = var_of_w(i, n);
        CHECK(pmf.pair_mean(v, w) == 1 - 2 * pmf.disagree_prob(v, w));
      }
    }
  }
}

}  // TEST_SUITE
