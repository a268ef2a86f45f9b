#include "cyclex/presets.hpp"

#include "cyclex/errors.hpp"

namespace cyclex {

namespace {

SystemSpec zero_marginal_system(std::vector<Rational> products) {
  std::vector<BunchStats> bunches;
  bunches.reserve(products.size());
  for (auto& p : products) bunches.push_back({0, 0, std::move(p)});
  return SystemSpec(std::move(bunches));
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"chsh-classical", "chsh-tsirelson", "kcbs-max", "leggett-garg-max", "pr-box"};
}

SystemSpec preset_spec(std::string_view name) {
  const Rational tsirelson = make_rational(7071, 10000);
  if (name == "leggett-garg-max") return zero_marginal_system({1, 1, -1});
  if (name == "chsh-classical") return zero_marginal_system({1, 1, 1, 1});
  if (name == "chsh-tsirelson") {
    return zero_marginal_system({tsirelson, tsirelson, tsirelson, -tsirelson});
  }
  if (name == "pr-box") return zero_marginal_system({1, 1, 1, -1});
  if (name == "kcbs-max") return zero_marginal_system({-1, -1, -1, -1, -1});
  throw DomainError("unknown preset '" + std::string(name) + "'");
}

}  // namespace cyclex
