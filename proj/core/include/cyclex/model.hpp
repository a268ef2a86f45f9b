#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclex/rational.hpp"

namespace cyclex {

/// Observed statistics of one context: the means of the two measurements
/// made together and the mean of their product. Bunch i pairs V_i with
/// W_{i+1} (cyclically), so `w_next_mean` belongs to the next property.
struct BunchStats {
  Rational v_mean;
  Rational w_next_mean;
  Rational product_mean;
};

/// One broken invariant, attributed to a context (1-based) and field.
struct Violation {
  int context = 0;
  std::string field;
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// A cyclic system of n >= 2 binary properties, one bunch per context.
/// Properties and contexts are indexed 0-based in this API; serialized
/// documents use 1-based context labels.
class SystemSpec {
 public:
  explicit SystemSpec(std::vector<BunchStats> bunches);

  int size() const noexcept { return static_cast<int>(bunches_.size()); }
  const BunchStats& bunch(int i) const { return bunches_.at(i); }

  int next(int i) const noexcept { return (i + 1) % size(); }
  int prev(int i) const noexcept { return (i + size() - 1) % size(); }

  /// Mean of V_i (property i measured in context i).
  const Rational& v_mean(int i) const { return bunches_.at(i).v_mean; }
  /// Mean of W_i (property i measured in context i-1).
  const Rational& w_mean(int i) const { return bunches_.at(prev(i)).w_next_mean; }
  /// Mean of the context-i product V_i * W_{i+1}.
  const Rational& product_mean(int i) const { return bunches_.at(i).product_mean; }

 private:
  std::vector<BunchStats> bunches_;
};

/// All range and pair-consistency violations; empty means every bunch
/// describes a realizable pair distribution. Violations are data, not
/// failures.
std::vector<Violation> validate_system(const SystemSpec& spec);

/// Throws ValidationError when validate_system is non-empty.
void require_valid(const SystemSpec& spec);

// Relabelings used by the invariance suites: all preserve the measure.
SystemSpec rotated(const SystemSpec& spec, int shift);
SystemSpec reflected(const SystemSpec& spec);
SystemSpec sign_flipped(const SystemSpec& spec, std::span<const int> signs);

/// Hypothetical same-property product expectations <V_i W_i>, one per
/// property.
struct ConnectionVector {
  std::vector<Rational> values;

  int size() const noexcept { return static_cast<int>(values.size()); }
};

/// Per-coordinate pair-bound check of a connection vector against its host
/// system.
std::vector<Violation> validate_connections(const ConnectionVector& conns,
                                            const SystemSpec& spec);

/// Dense joint pmf over m binary (+1/-1 valued) variables. Atom index bit v
/// gives the outcome of variable v (set bit = +1). System couplings use the
/// cycle variable order V_1, W_2, V_2, W_3, ..., V_n, W_1.
class JointPmf {
 public:
  JointPmf() : JointPmf(0) {}
  explicit JointPmf(int num_vars);

  int num_vars() const noexcept { return num_vars_; }
  size_t num_atoms() const noexcept { return probs_.size(); }

  const Rational& prob(size_t atom) const { return probs_.at(atom); }
  Rational& prob(size_t atom) { return probs_.at(atom); }

  static int outcome(size_t atom, int var) { return (atom >> var) & 1 ? 1 : -1; }

  Rational total() const;
  bool is_distribution() const;

  Rational mean(int var) const;
  Rational pair_mean(int var_a, int var_b) const;
  /// Pr[X_a != X_b].
  Rational disagree_prob(int var_a, int var_b) const;

  bool operator==(const JointPmf&) const = default;

 private:
  int num_vars_;
  std::vector<Rational> probs_;
};

/// Variable index of V_i / W_i (0-based property) in a system coupling.
constexpr int var_of_v(int property, int /*n*/) { return 2 * property; }
constexpr int var_of_w(int property, int n) {
  return 2 * ((property + n - 1) % n) + 1;
}

/// Total connection disagreement sum(Pr[V_i != W_i]) of a system coupling
/// over 2n variables. Throws ValidationError when the pmf is not a
/// distribution or has an odd variable count.
Rational delta_of_coupling(const JointPmf& pmf);

/// Exact mismatches between a coupling's bunch 2-marginals and the system's
/// observed statistics; empty means the coupling reproduces the system.
std::vector<Violation> coupling_mismatches(const JointPmf& pmf, const SystemSpec& spec);

/// Everything the analyzer reports about one system.
struct AnalysisReport {
  enum class Branch { kMarginals, kS1Excess };

  int n = 0;
  Rational delta0;
  Rational delta_min;
  Rational cntx;
  bool contextual = false;
  Rational s1_bunches;          // s1 of the bunch product expectations
  Rational main_criterion_lhs;  // s1 of products and connection maxima
  Branch argmax_branch = Branch::kMarginals;
  std::vector<int> canonical_signs;
  ConnectionVector optimal_connections;
};

}  // namespace cyclex
