#include "cyclex/model.hpp"

#include <sstream>

#include "cyclex/errors.hpp"

namespace cyclex {

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid system (" << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << ")";
  for (const auto& v : violations) {
    out << "; context " << v.context << " " << v.field << ": " << v.message;
  }
  return out.str();
}

void check_range(std::vector<Violation>& out, int context, const char* field,
                 const Rational& value) {
  if (value < -1 || value > 1) {
    out.push_back({context, field,
                   "value " + fraction_string(value) + " outside [-1, 1]"});
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

SystemSpec::SystemSpec(std::vector<BunchStats> bunches) : bunches_(std::move(bunches)) {
  if (bunches_.size() < 2) {
    throw DomainError("a cyclic system needs at least two contexts");
  }
}

std::vector<Violation> validate_system(const SystemSpec& spec) {
  std::vector<Violation> out;
  for (int i = 0; i < spec.size(); ++i) {
    const auto& b = spec.bunch(i);
    const int context = i + 1;
    const size_t before = out.size();
    check_range(out, context, "v_mean", b.v_mean);
    check_range(out, context, "w_next_mean", b.w_next_mean);
    const bool means_ok = out.size() == before;
    check_range(out, context, "product_mean", b.product_mean);
    if (!means_ok) continue;  // pair bounds only meaningful for in-range means
    const Rational lo = abs(b.v_mean + b.w_next_mean) - 1;
    const Rational hi = 1 - abs(b.v_mean - b.w_next_mean);
    if (b.product_mean < lo || b.product_mean > hi) {
      out.push_back({context, "product_mean",
                     "value " + fraction_string(b.product_mean) + " outside pair bounds [" +
                         fraction_string(lo) + ", " + fraction_string(hi) + "]"});
    }
  }
  return out;
}

void require_valid(const SystemSpec& spec) {
  auto violations = validate_system(spec);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

SystemSpec rotated(const SystemSpec& spec, int shift) {
  const int n = spec.size();
  shift = ((shift % n) + n) % n;
  std::vector<BunchStats> bunches;
  bunches.reserve(n);
  for (int i = 0; i < n; ++i) bunches.push_back(spec.bunch((i + shift) % n));
  return SystemSpec(std::move(bunches));
}

SystemSpec reflected(const SystemSpec& spec) {
  // Reverse the cycle orientation: property i of the mirror is property
  // n-1-i of the original, and the V/W roles inside each context swap.
  const int n = spec.size();
  std::vector<BunchStats> bunches;
  bunches.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto& src = spec.bunch((2 * n - 1 - i) % n);
    bunches.push_back({src.w_next_mean, src.v_mean, src.product_mean});
  }
  return SystemSpec(std::move(bunches));
}

SystemSpec sign_flipped(const SystemSpec& spec, std::span<const int> signs) {
  const int n = spec.size();
  if (static_cast<int>(signs.size()) != n) {
    throw DomainError("sign_flipped: need one sign per property");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw DomainError("sign_flipped: signs must be +1 or -1");
  }
  std::vector<BunchStats> bunches;
  bunches.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto& b = spec.bunch(i);
    const int mi = signs[i];
    const int mnext = signs[spec.next(i)];
    bunches.push_back({mi * b.v_mean, mnext * b.w_next_mean, mi * mnext * b.product_mean});
  }
  return SystemSpec(std::move(bunches));
}

std::vector<Violation> validate_connections(const ConnectionVector& conns,
                                            const SystemSpec& spec) {
  std::vector<Violation> out;
  if (conns.size() != spec.size()) {
    out.push_back({0, "connections", "expected " + std::to_string(spec.size()) +
                                         " entries, got " + std::to_string(conns.size())});
    return out;
  }
  for (int i = 0; i < spec.size(); ++i) {
    const Rational lo = abs(spec.v_mean(i) + spec.w_mean(i)) - 1;
    const Rational hi = 1 - abs(spec.v_mean(i) - spec.w_mean(i));
    if (conns.values[i] < lo || conns.values[i] > hi) {
      out.push_back({i + 1, "connection",
                     "value " + fraction_string(conns.values[i]) + " outside [" +
                         fraction_string(lo) + ", " + fraction_string(hi) + "]"});
    }
  }
  return out;
}

JointPmf::JointPmf(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 0 || num_vars > 24) {
    throw DomainError("JointPmf: variable count out of supported range");
  }
  probs_.assign(size_t{1} << num_vars, Rational(0));
}

Rational JointPmf::total() const {
  Rational sum = 0;
  for (const auto& p : probs_) sum += p;
  return sum;
}

bool JointPmf::is_distribution() const {
  for (const auto& p : probs_) {
    if (p < 0) return false;
  }
  return total() == 1;
}

Rational JointPmf::mean(int var) const {
  Rational sum = 0;
  for (size_t atom = 0; atom < probs_.size(); ++atom) {
    sum += outcome(atom, var) * probs_[atom];
  }
  return sum;
}

Rational JointPmf::pair_mean(int var_a, int var_b) const {
  Rational sum = 0;
  for (size_t atom = 0; atom < probs_.size(); ++atom) {
    sum += outcome(atom, var_a) * outcome(atom, var_b) * probs_[atom];
  }
  return sum;
}

Rational JointPmf::disagree_prob(int var_a, int var_b) const {
  Rational sum = 0;
  for (size_t atom = 0; atom < probs_.size(); ++atom) {
    if (outcome(atom, var_a) != outcome(atom, var_b)) sum += probs_[atom];
  }
  return sum;
}

Rational delta_of_coupling(const JointPmf& pmf) {
  if (pmf.num_vars() % 2 != 0 || pmf.num_vars() < 4) {
    throw ValidationError({{0, "coupling", "a system coupling needs an even number (>= 4) of variables"}});
  }
  if (!pmf.is_distribution()) {
    throw ValidationError({{0, "coupling", "probabilities must be nonnegative and sum to 1"}});
  }
  const int n = pmf.num_vars() / 2;
  Rational delta = 0;
  for (int i = 0; i < n; ++i) {
    delta += pmf.disagree_prob(var_of_v(i, n), var_of_w(i, n));
  }
  return delta;
}

std::vector<Violation> coupling_mismatches(const JointPmf& pmf, const SystemSpec& spec) {
  std::vector<Violation> out;
  const int n = spec.size();
  if (pmf.num_vars() != 2 * n) {
    out.push_back({0, "coupling", "variable count does not match the system"});
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const int v = var_of_v(i, n);
    const int w_next = var_of_w(spec.next(i), n);
    const auto& b = spec.bunch(i);
    if (pmf.mean(v) != b.v_mean) {
      out.push_back({i + 1, "v_mean", "marginal mean mismatch"});
    }
    if (pmf.mean(w_next) != b.w_next_mean) {
      out.push_back({i + 1, "w_next_mean", "marginal mean mismatch"});
    }
    if (pmf.pair_mean(v, w_next) != b.product_mean) {
      out.push_back({i + 1, "product_mean", "product expectation mismatch"});
    }
  }
  return out;
}

}  // namespace cyclex
