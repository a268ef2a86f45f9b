#include "cyclex/verify.hpp"

#include <random>
#include <span>
#include <vector>

#include "cyclex/errors.hpp"
#include "cyclex/generate.hpp"
#include "cyclex/ingest.hpp"
#include "cyclex/smax.hpp"

namespace cyclex {

const char* connection_case_name(ConnectionCase dispatch) {
  switch (dispatch) {
    case ConnectionCase::kMaximal:
      return "maximal";
    case ConnectionCase::kCase1:
      return "case1";
    case ConnectionCase::kCase2:
      return "case2";
    case ConnectionCase::kCase3:
      return "case3";
    case ConnectionCase::kCase4:
      return "case4";
  }
  return "unknown";
}

namespace {

struct TrialChecker {
  VerifySummary& summary;
  int trial;
  const SystemSpec& spec;
  bool ok = true;

  void expect(bool condition, const char* check, const std::string& detail) {
    if (!ok || condition) return;
    ok = false;
    if (!summary.first_failure) {
      summary.first_failure = VerifyFailure{trial, check, detail, emit_spec(spec)};
    }
  }
};

Rational product_criterion_lhs_shifted(const SystemSpec& spec) {
  // s1(products) - sum|<V_i>-<W_i>| + n, comparable against 2n-2.
  std::vector<Rational> products;
  Rational gap = 0;
  for (int i = 0; i < spec.size(); ++i) {
    products.push_back(spec.product_mean(i));
    gap += abs(spec.v_mean(i) - spec.w_mean(i));
  }
  return s_one(products).value - gap + spec.size();
}

}  // namespace

VerifySummary run_verify(const VerifyOptions& options) {
  if (options.n < 2) throw DomainError("verify: n must be at least 2");
  if (options.n > options.limits.max_system_n) {
    throw ResourceError("verify: n exceeds the oracle limit");
  }
  if (options.trials < 1) throw DomainError("verify: trials must be positive");

  VerifySummary summary;
  summary.n = options.n;
  summary.trials = options.trials;
  summary.seed = options.seed;
  for (const char* name : {"maximal", "case1", "case2", "case3", "case4"}) {
    summary.case_counts[name] = 0;
  }

  constexpr SpecStyle kStyleCycle[] = {SpecStyle::kGrid, SpecStyle::kContextualLean,
                                       SpecStyle::kBoundary, SpecStyle::kSignaling};
  std::mt19937_64 rng(options.seed);
  for (int trial = 0; trial < options.trials; ++trial) {
    const SystemSpec spec = random_spec(rng, options.n, kStyleCycle[trial % 4]);
    TrialChecker check{summary, trial, spec};

    const AnalysisReport report = analyze(spec);
    if (report.contextual) ++summary.contextual_count;

    const MinDeltaResult oracle = min_delta(spec, options.limits);
    check.expect(report.delta_min == oracle.delta_min, "formula_oracle_equality",
                 "formula " + fraction_string(report.delta_min) + " vs oracle " +
                     fraction_string(oracle.delta_min));
    check.expect(delta_of_coupling(oracle.witness) == oracle.delta_min, "witness_delta",
                 "witness disagreement total differs from the reported minimum");
    check.expect(coupling_mismatches(oracle.witness, spec).empty(), "witness_marginals",
                 "witness does not reproduce the bunch statistics");

    const bool conjectured = criterion_conjectured(spec);
    const bool main = criterion_main(spec);
    check.expect(conjectured == main, "criteria_equivalence",
                 std::string("product criterion ") + (conjectured ? "true" : "false") +
                     " vs main criterion " + (main ? "true" : "false"));
    check.expect(main == report.contextual, "criterion_measure_agreement",
                 "criterion and positive measure disagree");

    for (int shift = 1; shift < spec.size(); ++shift) {
      check.expect(analyze(rotated(spec, shift)).cntx == report.cntx, "rotation_invariance",
                   "rotation by " + std::to_string(shift) + " changed the measure");
    }
    check.expect(analyze(reflected(spec)).cntx == report.cntx, "reflection_invariance",
                 "reflection changed the measure");
    for (int round = 0; round < 3; ++round) {
      std::vector<int> signs(spec.size());
      for (auto& s : signs) s = rng() % 2 == 0 ? 1 : -1;
      check.expect(analyze(sign_flipped(spec, signs)).cntx == report.cntx,
                   "signflip_invariance", "sign flip changed the measure");
    }

    const OptimalConnections optimal = optimal_connection_vector(spec);
    ++summary.case_counts[connection_case_name(optimal.dispatch)];
    const ConnectionFeasibility feasibility =
        feasible_with_connections(spec, optimal.vector, options.limits);
    check.expect(feasibility.feasible, "optimal_connections_feasible",
                 "no coupling realizes the optimal connection vector");
    if (feasibility.feasible) {
      check.expect(delta_of_coupling(*feasibility.witness) == report.delta_min,
                   "optimal_connections_delta",
                   "coupling at the optimal connections misses delta_min");
    }

    if (product_criterion_lhs_shifted(spec) != report.main_criterion_lhs) {
      ++summary.nonidentity_count;
    }

    if (check.ok) {
      ++summary.passed;
    } else {
      ++summary.failed;
    }
  }
  return summary;
}

}  // namespace cyclex
