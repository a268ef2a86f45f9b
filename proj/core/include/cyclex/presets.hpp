#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cyclex/model.hpp"

namespace cyclex {

/// Built-in reference systems, all with zero marginals:
///   leggett-garg-max  n=3, products (1, 1, -1)
///   chsh-classical    n=4, products (1, 1, 1, 1)
///   chsh-tsirelson    n=4, products (7071/10000, ..., -7071/10000)
///   pr-box            n=4, products (1, 1, 1, -1)
///   kcbs-max          n=5, products (-1, -1, -1, -1, -1)
/// The Tsirelson entry uses a rational stand-in for 1/sqrt(2).
std::vector<std::string> preset_names();

/// Throws DomainError for unknown names.
SystemSpec preset_spec(std::string_view name);

}  // namespace cyclex
