#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "cyclex/criteria.hpp"
#include "cyclex/lp_oracle.hpp"

namespace cyclex {

struct VerifyOptions {
  int n = 4;
  int trials = 100;
  std::uint64_t seed = 0;
  OracleLimits limits;
};

struct VerifyFailure {
  int trial = 0;
  std::string check;
  std::string detail;
  std::string spec_json;
};

struct VerifySummary {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  int passed = 0;
  int failed = 0;
  int contextual_count = 0;
  // Systems where s1(products) - sum|<V_i>-<W_i>| + n differs from the
  // 2n-argument criterion value even though the two criteria agree.
  int nonidentity_count = 0;
  std::map<std::string, int> case_counts;
  std::optional<VerifyFailure> first_failure;
};

/// Randomized confirmation campaign over `trials` random valid systems:
/// closed-form delta_min against the exact LP minimum, equivalence of the
/// two criteria, measure invariance under rotation/reflection/sign flips,
/// and feasibility of the optimal connection vector with the matching
/// disagreement total. Deterministic for a fixed seed.
VerifySummary run_verify(const VerifyOptions& options);

const char* connection_case_name(ConnectionCase dispatch);

}  // namespace cyclex
