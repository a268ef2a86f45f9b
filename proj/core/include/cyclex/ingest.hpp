#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cyclex/model.hpp"

namespace cyclex {

/// Parses a system document:
///   {"n": 4, "bunches": [{"context": 1, "v_mean": "0",
///    "w_next_mean": "0", "product_mean": "1"}, ...]}
/// Values are decimal or "p/q" strings, parsed exactly. Throws ParseError on
/// schema problems and ValidationError when the parsed system breaks its
/// pair bounds.
SystemSpec parse_spec(std::string_view text);

/// Canonical serialization: sorted keys, no insignificant whitespace,
/// values as "p/q". parse_spec(emit_spec(s)) reproduces identical rationals.
std::string emit_spec(const SystemSpec& spec);

/// One cell of an empirical contingency table for a context.
struct CountsRecord {
  int context = 0;  // 1-based
  int v_outcome = 0;
  int w_outcome = 0;
  long long count = 0;
};

/// Parses comma-delimited counts with the header
/// "context,v_outcome,w_outcome,count"; outcomes are "+1"/"-1".
std::vector<CountsRecord> parse_counts(std::string_view text);

/// Relative-frequency expectations from raw counts. Every context 1..n must
/// appear with a positive total. The result always satisfies the pair
/// bounds.
SystemSpec counts_to_spec(std::span<const CountsRecord> records, int n);

/// Report document: every rational appears both exactly ("p/q") and as a
/// 12-significant-digit decimal.
std::string emit_report(const AnalysisReport& report);
AnalysisReport parse_report(std::string_view text);

/// Witness document: {"n": ..., "atoms": {"+-+-": "p/q", ...}} in the
/// cycle variable order V_1, W_2, ..., V_n, W_1; zero-probability atoms are
/// omitted.
std::string emit_witness(const JointPmf& pmf);
JointPmf parse_witness(std::string_view text);

}  // namespace cyclex
