#include "cyclex/criteria.hpp"

#include <algorithm>
#include <vector>

#include "cyclex/errors.hpp"
#include "cyclex/feasibility.hpp"
#include "cyclex/smax.hpp"

namespace cyclex {

namespace {

std::vector<Rational> products_of(const SystemSpec& spec) {
  std::vector<Rational> out;
  out.reserve(spec.size());
  for (int i = 0; i < spec.size(); ++i) out.push_back(spec.product_mean(i));
  return out;
}

Rational marginal_gap_sum(const SystemSpec& spec) {
  Rational sum = 0;
  for (int i = 0; i < spec.size(); ++i) sum += abs(spec.v_mean(i) - spec.w_mean(i));
  return sum;
}

/// Connection maxima u_i = 1 - |<V_i> - <W_i>| (sign-flip invariant).
std::vector<Rational> connection_maxima(const SystemSpec& spec) {
  std::vector<Rational> out;
  out.reserve(spec.size());
  for (int i = 0; i < spec.size(); ++i) {
    out.push_back(1 - abs(spec.v_mean(i) - spec.w_mean(i)));
  }
  return out;
}

/// Connection floors l_i = |<V_i> + <W_i>| - 1 (sign-flip invariant).
std::vector<Rational> connection_floors(const SystemSpec& spec) {
  std::vector<Rational> out;
  out.reserve(spec.size());
  for (int i = 0; i < spec.size(); ++i) {
    out.push_back(abs(spec.v_mean(i) + spec.w_mean(i)) - 1);
  }
  return out;
}

Rational main_criterion_lhs(const SystemSpec& spec) {
  std::vector<Rational> args = products_of(spec);
  const auto maxima = connection_maxima(spec);
  args.insert(args.end(), maxima.begin(), maxima.end());
  return s_one(args).value;
}

}  // namespace

Rational delta_zero(const SystemSpec& spec) {
  require_valid(spec);
  return marginal_gap_sum(spec) / 2;
}

DeltaMin delta_min_formula(const SystemSpec& spec) {
  require_valid(spec);
  const Rational top = s_one(products_of(spec)).value - (spec.size() - 2);
  const Rational bottom = marginal_gap_sum(spec);
  if (top > bottom) return {top / 2, AnalysisReport::Branch::kS1Excess};
  return {bottom / 2, AnalysisReport::Branch::kMarginals};
}

bool criterion_conjectured(const SystemSpec& spec) {
  require_valid(spec);
  return s_one(products_of(spec)).value > marginal_gap_sum(spec) + (spec.size() - 2);
}

bool criterion_main(const SystemSpec& spec) {
  require_valid(spec);
  return main_criterion_lhs(spec) > 2 * spec.size() - 2;
}

Canonicalization canonicalize_signs(const SystemSpec& spec) {
  require_valid(spec);
  const int n = spec.size();
  const auto products = products_of(spec);

  int pivot = 0;
  for (int i = 1; i < n; ++i) {
    if (abs(products[i]) < abs(products[pivot])) pivot = i;
  }

  // Walk the cycle once from the pivot, flipping each next property so the
  // current product comes out nonnegative; only the pivot product may end
  // negative.
  std::vector<int> signs(n, 0);
  signs[(pivot + 1) % n] = 1;
  for (int step = 1; step < n; ++step) {
    const int i = (pivot + step) % n;
    signs[(i + 1) % n] = signs[i] * products[i] >= 0 ? 1 : -1;
  }

  SystemSpec transformed = sign_flipped(spec, signs);
  for (int i = 0; i < n; ++i) {
    if (i != pivot && transformed.product_mean(i) < abs(transformed.product_mean(pivot))) {
      throw std::logic_error("canonicalize_signs: pivot condition not established");
    }
  }
  return {std::move(signs), std::move(transformed), pivot};
}

namespace {

/// Refinement shared by the contextual cases: move the start vector toward
/// the maximal vector until the coordinate sum reaches `target`. The sum is
/// affine along the segment, so the stopping point is one exact division.
void raise_to_target(std::vector<Rational>& conns, const std::vector<Rational>& maxima,
                     const Rational& target) {
  Rational sum = 0;
  for (const auto& c : conns) sum += c;
  if (sum > target) {
    throw std::logic_error("optimal_connection_vector: start sum above target");
  }
  if (sum == target) return;
  Rational max_sum = 0;
  for (const auto& u : maxima) max_sum += u;
  if (max_sum <= sum) {
    throw std::logic_error("optimal_connection_vector: no room to raise the sum");
  }
  const Rational t = (target - sum) / (max_sum - sum);
  for (size_t i = 0; i < conns.size(); ++i) {
    conns[i] += t * (maxima[i] - conns[i]);
  }
}

}  // namespace

OptimalConnections optimal_connection_vector(const SystemSpec& spec) {
  require_valid(spec);
  const int n = spec.size();
  const auto maxima = connection_maxima(spec);
  const auto floors = connection_floors(spec);

  if (!criterion_main(spec)) {
    return {ConnectionVector{maxima}, ConnectionCase::kMaximal};
  }

  const auto canon = canonicalize_signs(spec);
  const auto products = products_of(canon.transformed);
  const Rational target = 2 * n - 2 - s_one(products).value;

  // Pivot of the connection maxima: u_i >= |u_k| for every i != k. A
  // contextual system always has one (no two maxima can sum <= 0).
  int k = -1;
  for (int candidate = 0; candidate < n && k < 0; ++candidate) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (i != candidate && maxima[i] < abs(maxima[candidate])) ok = false;
    }
    if (ok) k = candidate;
  }
  if (k < 0) {
    throw std::logic_error("optimal_connection_vector: no connection pivot");
  }

  int tall_floor = -1;  // lowest j with floor_j > |u_k|
  for (int j = 0; j < n && tall_floor < 0; ++j) {
    if (floors[j] > abs(maxima[k])) tall_floor = j;
  }

  ConnectionCase dispatch;
  std::vector<Rational> conns = maxima;
  if (tall_floor >= 0) {
    dispatch = ConnectionCase::kCase1;
    // Cut the 2n-cycle at connection tall_floor; all bunch products plus the
    // other connections form the chain whose closing range constrains it.
    std::vector<Rational> chain = products;
    for (int i = 0; i < n; ++i) {
      if (i != tall_floor) chain.push_back(maxima[i]);
    }
    const Rational slack = 2 * n - 2;
    const Rational lo =
        std::max(Rational(signed_sum_max(chain, 1).value - slack), floors[tall_floor]);
    const Rational hi =
        std::min(Rational(slack - signed_sum_max(chain, -1).value), maxima[tall_floor]);
    if (lo > hi) {
      throw std::logic_error("optimal_connection_vector: empty closing interval");
    }
    conns[tall_floor] = (lo + hi) / 2;
  } else if (maxima[k] < 0) {
    dispatch = ConnectionCase::kCase2;
    const int j = k == 0 ? 1 : 0;
    conns[j] = -maxima[k];
  } else if (products[canon.pivot] > maxima[k]) {
    dispatch = ConnectionCase::kCase3;
    std::fill(conns.begin(), conns.end(), maxima[k]);
  } else {
    dispatch = ConnectionCase::kCase4;
    std::fill(conns.begin(), conns.end(), maxima[k]);
    std::vector<Rational> rest = products;
    for (int i = 0; i < n; ++i) {
      if (i != k) rest.push_back(conns[i]);
    }
    conns[k] = std::min(Rational(Rational(2 * n - 2) - signed_sum_max(rest, -1).value), maxima[k]);
  }

  raise_to_target(conns, maxima, target);

  // The result must sit inside every pair bound and keep the full cycle
  // realizable; violations here would be construction bugs.
  Rational sum = 0;
  for (int i = 0; i < n; ++i) {
    if (conns[i] < floors[i] || conns[i] > maxima[i]) {
      throw std::logic_error("optimal_connection_vector: coordinate escaped its bounds");
    }
    sum += conns[i];
  }
  if (sum != target) {
    throw std::logic_error("optimal_connection_vector: sum missed the target");
  }
  std::vector<Rational> cycle = products;
  cycle.insert(cycle.end(), conns.begin(), conns.end());
  if (s_one(cycle).value > 2 * n - 2) {
    throw std::logic_error("optimal_connection_vector: cycle condition violated");
  }
  return {ConnectionVector{std::move(conns)}, dispatch};
}

AnalysisReport analyze(const SystemSpec& spec) {
  require_valid(spec);
  AnalysisReport report;
  report.n = spec.size();
  report.delta0 = delta_zero(spec);
  const DeltaMin dm = delta_min_formula(spec);
  report.delta_min = dm.value;
  report.argmax_branch = dm.branch;
  report.cntx = report.delta_min - report.delta0;
  report.contextual = report.cntx > 0;
  report.s1_bunches = s_one(products_of(spec)).value;
  report.main_criterion_lhs = main_criterion_lhs(spec);
  report.canonical_signs = canonicalize_signs(spec).signs;
  report.optimal_connections = optimal_connection_vector(spec).vector;
  return report;
}

}  // namespace cyclex
