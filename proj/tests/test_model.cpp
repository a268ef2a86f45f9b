#include <doctest.h>

#include <random>

#include "cyclex/criteria.hpp"
#include "cyclex/errors.hpp"
#include "cyclex/generate.hpp"
#include "cyclex/lp_oracle.hpp"
#include "cyclex/model.hpp"
#include "support/oracles.hpp"

using namespace cyclex;
using cyclex::testing::zero_marginal_system;

namespace {

Rational r(long long num, long long den = 1) { return make_rational(num, den); }

SystemSpec two_context_system(BunchStats first, BunchStats second) {
  return SystemSpec({std::move(first), std::move(second)});
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("a deterministic bunch with forced product is valid") {
  const auto spec = two_context_system({1, 1, 1}, {0, 0, 0});
  CHECK(validate_system(spec).empty());
}

TEST_CASE("a product above its pair bound is a violation") {
  // upper bound is 1 - |1/2 + 1/2| = 0
  const auto spec = two_context_system({r(1, 2), r(-1, 2), r(1, 2)}, {0, 0, 0});
  const auto violations = validate_system(spec);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].context == 1);
  CHECK(violations[0].field == "product_mean");
  CHECK_THROWS_AS(require_valid(spec), ValidationError);
}

TEST_CASE("zero marginals admit perfect anticorrelation") {
  const auto spec = two_context_system({0, 0, -1}, {0, 0, 0});
  CHECK(validate_system(spec).empty());
}

TEST_CASE("out-of-range means are reported per field") {
  const auto spec = two_context_system({r(3, 2), 0, 0}, {0, 0, 0});
  const auto violations = validate_system(spec);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].field == "v_mean");
}

TEST_CASE("validation is repeatable and independent of call order") {
  const auto spec = two_context_system({r(1, 2), r(-1, 2), r(1, 2)}, {1, 1, r(3, 2)});
  const auto first = validate_system(spec);
  const auto second = validate_system(spec);
  REQUIRE(first.size() == second.size());
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].context == second[i].context);
    CHECK(first[i].field == second[i].field);
  }
}

TEST_CASE("system accessors expose both contexts of a property") {
  const auto spec = SystemSpec({{r(1, 8), r(2, 8), 0},
                                {r(3, 8), r(4, 8), 0},
                                {r(5, 8), r(6, 8), 0}});
  CHECK(spec.v_mean(0) == r(1, 8));
  CHECK(spec.w_mean(1) == r(2, 8));  // stored in bunch 0
  CHECK(spec.w_mean(0) == r(6, 8));  // stored in bunch 2
  CHECK(spec.product_mean(2) == 0);
}

TEST_CASE("delta of a perfectly agreeing coupling is zero") {
  JointPmf pmf(4);
  pmf.prob(0b0000) = r(1, 2);
  pmf.prob(0b1111) = r(1, 2);
  CHECK(delta_of_coupling(pmf) == 0);
}

TEST_CASE("delta of independent fair coins is one per two properties") {
  JointPmf pmf(4);
  for (size_t atom = 0; atom < 16; ++atom) pmf.prob(atom) = r(1, 16);
  CHECK(delta_of_coupling(pmf) == 1);
}

TEST_CASE("malformed couplings are rejected") {
  JointPmf pmf(4);
  pmf.prob(0) = r(1, 2);  // sums to 1/2
  CHECK_THROWS_AS(delta_of_coupling(pmf), ValidationError);
  JointPmf odd(3);
  odd.prob(0) = 1;
  CHECK_THROWS_AS(delta_of_coupling(odd), ValidationError);
}

TEST_CASE("sampled couplings never beat the per-connection floor") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const auto spec = random_spec(rng, 2 + trial % 3, SpecStyle::kGrid);
    const Rational floor = delta_zero(spec);
    for (const auto& pmf : enumerate_vertex_sample(spec, 8, 1000 + trial)) {
      CHECK(pmf.is_distribution());
      CHECK(coupling_mismatches(pmf, spec).empty());
      CHECK(delta_of_coupling(pmf) >= floor);
    }
  }
}

TEST_CASE("reflection is an involution and preserves validity") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto spec = random_spec(rng, 2 + trial % 5, SpecStyle::kGrid);
    const auto mirrored = reflected(spec);
    CHECK(validate_system(mirrored).empty());
    const auto back = reflected(mirrored);
    REQUIRE(back.size() == spec.size());
    for (int i = 0; i < spec.size(); ++i) {
      CHECK(back.bunch(i).v_mean == spec.bunch(i).v_mean);
      CHECK(back.bunch(i).w_next_mean == spec.bunch(i).w_next_mean);
      CHECK(back.bunch(i).product_mean == spec.bunch(i).product_mean);
    }
  }
}

TEST_CASE("rotation relabels contexts cyclically") {
  const auto spec = SystemSpec({{r(1, 8), 0, 0}, {r(2, 8), 0, 0}, {r(3, 8), 0, 0}});
  const auto shifted = rotated(spec, 1);
  CHECK(shifted.bunch(0).v_mean == r(2, 8));
  CHECK(shifted.bunch(2).v_mean == r(1, 8));
  CHECK(rotated(spec, 3).bunch(0).v_mean == r(1, 8));
}

TEST_CASE("sign flips transform bunch statistics consistently") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto spec = random_spec(rng, 3, SpecStyle::kGrid);
    const std::vector<int> signs{1, -1, -1};
    const auto flipped = sign_flipped(spec, signs);
    CHECK(validate_system(flipped).empty());
    CHECK(flipped.bunch(0).v_mean == spec.bunch(0).v_mean);
    CHECK(flipped.bunch(0).w_next_mean == -spec.bunch(0).w_next_mean);
    CHECK(flipped.bunch(0).product_mean == -spec.bunch(0).product_mean);
    CHECK(flipped.bunch(1).product_mean == spec.bunch(1).product_mean);
  }
}

TEST_CASE("connection vectors are checked against their pair bounds") {
  const auto spec = zero_marginal_system({1, 1, 1, -1});
  CHECK(validate_connections(ConnectionVector{{1, 1, 1, 1}}, spec).empty());
  const auto bad = validate_connections(ConnectionVector{{r(3, 2), 1, 1, 1}}, spec);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].context == 1);
  CHECK(!validate_connections(ConnectionVector{{1, 1}}, spec).empty());
}

TEST_CASE("systems need at least two contexts") {
  CHECK_THROWS_AS(SystemSpec({{0, 0, 0}}), DomainError);
}

}  // TEST_SUITE
