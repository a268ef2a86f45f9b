#include "cyclex/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <sstream>

#include "cyclex/errors.hpp"

namespace cyclex {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what(),
                     "byte " + std::to_string(e.byte));
  }
}

Rational rational_field(const json& node, const std::string& where) {
  if (!node.is_string()) {
    throw ParseError("expected a rational string at " + where, where);
  }
  try {
    return parse_rational(node.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " at " + where, where);
  }
}

const json& required(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError("missing field '" + std::string(key) + "' in " + where, where);
  }
  return *it;
}

std::string atom_key(size_t atom, int num_vars) {
  std::string key(num_vars, '-');
  for (int v = 0; v < num_vars; ++v) {
    if (JointPmf::outcome(atom, v) > 0) key[v] = '+';
  }
  return key;
}

json rational_array(std::span<const Rational> values, bool decimal) {
  json out = json::array();
  for (const auto& v : values) {
    out.push_back(decimal ? decimal_string(v) : fraction_string(v));
  }
  return out;
}

}  // namespace

SystemSpec parse_spec(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("top level must be an object", "$");
  const json& n_node = required(doc, "n", "$");
  if (!n_node.is_number_integer()) throw ParseError("'n' must be an integer", "n");
  const int n = n_node.get<int>();
  if (n < 2) throw ParseError("'n' must be at least 2", "n");
  const json& bunches = required(doc, "bunches", "$");
  if (!bunches.is_array() || bunches.size() != static_cast<size_t>(n)) {
    throw ParseError("'bunches' must be an array of exactly n entries", "bunches");
  }
  std::vector<BunchStats> stats(n);
  std::vector<bool> seen(n, false);
  for (size_t idx = 0; idx < bunches.size(); ++idx) {
    const std::string where = "bunches[" + std::to_string(idx) + "]";
    const json& entry = bunches[idx];
    if (!entry.is_object()) throw ParseError("bunch entry must be an object", where);
    const json& ctx_node = required(entry, "context", where);
    if (!ctx_node.is_number_integer()) {
      throw ParseError("'context' must be an integer", where);
    }
    const int context = ctx_node.get<int>();
    if (context < 1 || context > n) {
      throw ParseError("context " + std::to_string(context) + " outside 1.." +
                           std::to_string(n),
                       where);
    }
    if (seen[context - 1]) {
      throw ParseError("duplicated context " + std::to_string(context), where);
    }
    seen[context - 1] = true;
    stats[context - 1] = {
        rational_field(required(entry, "v_mean", where), where + ".v_mean"),
        rational_field(required(entry, "w_next_mean", where), where + ".w_next_mean"),
        rational_field(required(entry, "product_mean", where), where + ".product_mean")};
  }
  SystemSpec spec(std::move(stats));
  require_valid(spec);
  return spec;
}

std::string emit_spec(const SystemSpec& spec) {
  json doc;
  doc["n"] = spec.size();
  json bunches = json::array();
  for (int i = 0; i < spec.size(); ++i) {
    const auto& b = spec.bunch(i);
    bunches.push_back({{"context", i + 1},
                       {"v_mean", fraction_string(b.v_mean)},
                       {"w_next_mean", fraction_string(b.w_next_mean)},
                       {"product_mean", fraction_string(b.product_mean)}});
  }
  doc["bunches"] = std::move(bunches);
  return doc.dump();
}

std::vector<CountsRecord> parse_counts(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty counts file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "context,v_outcome,w_outcome,count") {
    throw ParseError("expected header 'context,v_outcome,w_outcome,count'", "line 1");
  }
  std::vector<CountsRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (std::count(line.begin(), line.end(), ',') != 3) {
      throw ParseError("expected 4 comma-separated fields", where);
    }
    std::array<std::string, 4> fields;
    size_t pos = 0;
    for (int f = 0; f < 4; ++f) {
      const size_t comma = line.find(',', pos);
      fields[f] = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      pos = comma + 1;
    }
    CountsRecord record;
    try {
      record.context = std::stoi(fields[0]);
      record.count = std::stoll(fields[3]);
    } catch (const std::exception&) {
      throw ParseError("malformed integer field", where);
    }
    auto outcome = [&](const std::string& s) {
      if (s == "+1" || s == "1") return 1;
      if (s == "-1") return -1;
      throw ParseError("outcome must be +1 or -1, got '" + s + "'", where);
    };
    record.v_outcome = outcome(fields[1]);
    record.w_outcome = outcome(fields[2]);
    if (record.count < 0) throw ParseError("negative count", where);
    if (record.context < 1) throw ParseError("context must be positive", where);
    records.push_back(record);
  }
  return records;
}

SystemSpec counts_to_spec(std::span<const CountsRecord> records, int n) {
  if (n < 2) throw DomainError("counts_to_spec: n must be at least 2");
  struct Cell {
    long long total = 0;
    long long v_sum = 0;
    long long w_sum = 0;
    long long vw_sum = 0;
  };
  std::vector<Cell> cells(n);
  for (const auto& r : records) {
    if (r.context < 1 || r.context > n) {
      throw ParseError("context " + std::to_string(r.context) + " outside 1.." +
                       std::to_string(n));
    }
    auto& cell = cells[r.context - 1];
    cell.total += r.count;
    cell.v_sum += r.count * r.v_outcome;
    cell.w_sum += r.count * r.w_outcome;
    cell.vw_sum += r.count * r.v_outcome * r.w_outcome;
  }
  std::vector<BunchStats> stats;
  stats.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (cells[i].total == 0) {
      throw ParseError("context " + std::to_string(i + 1) + " has no observations");
    }
    stats.push_back({make_rational(cells[i].v_sum, cells[i].total),
                     make_rational(cells[i].w_sum, cells[i].total),
                     make_rational(cells[i].vw_sum, cells[i].total)});
  }
  return SystemSpec(std::move(stats));
}

std::string emit_report(const AnalysisReport& report) {
  json doc;
  doc["n"] = report.n;
  doc["delta0"] = fraction_string(report.delta0);
  doc["delta0_decimal"] = decimal_string(report.delta0);
  doc["delta_min"] = fraction_string(report.delta_min);
  doc["delta_min_decimal"] = decimal_string(report.delta_min);
  doc["cntx"] = fraction_string(report.cntx);
  doc["cntx_decimal"] = decimal_string(report.cntx);
  doc["contextual"] = report.contextual;
  doc["s1_bunches"] = fraction_string(report.s1_bunches);
  doc["s1_bunches_decimal"] = decimal_string(report.s1_bunches);
  doc["main_criterion_lhs"] = fraction_string(report.main_criterion_lhs);
  doc["main_criterion_lhs_decimal"] = decimal_string(report.main_criterion_lhs);
  doc["argmax_branch"] =
      report.argmax_branch == AnalysisReport::Branch::kS1Excess ? "s1_excess" : "marginals";
  doc["canonical_signs"] = report.canonical_signs;
  doc["optimal_connections"] = rational_array(report.optimal_connections.values, false);
  doc["optimal_connections_decimal"] = rational_array(report.optimal_connections.values, true);
  return doc.dump();
}

AnalysisReport parse_report(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("top level must be an object", "$");
  AnalysisReport report;
  const json& n_node = required(doc, "n", "$");
  if (!n_node.is_number_integer()) throw ParseError("'n' must be an integer", "n");
  report.n = n_node.get<int>();
  report.delta0 = rational_field(required(doc, "delta0", "$"), "delta0");
  report.delta_min = rational_field(required(doc, "delta_min", "$"), "delta_min");
  report.cntx = rational_field(required(doc, "cntx", "$"), "cntx");
  const json& contextual = required(doc, "contextual", "$");
  if (!contextual.is_boolean()) throw ParseError("'contextual' must be a boolean", "contextual");
  report.contextual = contextual.get<bool>();
  report.s1_bunches = rational_field(required(doc, "s1_bunches", "$"), "s1_bunches");
  report.main_criterion_lhs =
      rational_field(required(doc, "main_criterion_lhs", "$"), "main_criterion_lhs");
  const json& branch = required(doc, "argmax_branch", "$");
  if (branch == "s1_excess") {
    report.argmax_branch = AnalysisReport::Branch::kS1Excess;
  } else if (branch == "marginals") {
    report.argmax_branch = AnalysisReport::Branch::kMarginals;
  } else {
    throw ParseError("unknown argmax_branch", "argmax_branch");
  }
  const json& signs = required(doc, "canonical_signs", "$");
  if (!signs.is_array()) throw ParseError("'canonical_signs' must be an array", "canonical_signs");
  for (const auto& s : signs) report.canonical_signs.push_back(s.get<int>());
  const json& conns = required(doc, "optimal_connections", "$");
  if (!conns.is_array()) {
    throw ParseError("'optimal_connections' must be an array", "optimal_connections");
  }
  for (size_t i = 0; i < conns.size(); ++i) {
    report.optimal_connections.values.push_back(
        rational_field(conns[i], "optimal_connections[" + std::to_string(i) + "]"));
  }
  return report;
}

std::string emit_witness(const JointPmf& pmf) {
  if (pmf.num_vars() % 2 != 0) {
    throw DomainError("emit_witness: system couplings have an even variable count");
  }
  json atoms = json::object();
  for (size_t atom = 0; atom < pmf.num_atoms(); ++atom) {
    if (pmf.prob(atom) == 0) continue;  // zero atoms omitted by policy
    atoms[atom_key(atom, pmf.num_vars())] = fraction_string(pmf.prob(atom));
  }
  json doc;
  doc["n"] = pmf.num_vars() / 2;
  doc["atoms"] = std::move(atoms);
  return doc.dump();
}

JointPmf parse_witness(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("top level must be an object", "$");
  const json& n_node = required(doc, "n", "$");
  if (!n_node.is_number_integer() || n_node.get<int>() < 1) {
    throw ParseError("'n' must be a positive integer", "n");
  }
  const int num_vars = 2 * n_node.get<int>();
  JointPmf pmf(num_vars);
  const json& atoms = required(doc, "atoms", "$");
  if (!atoms.is_object()) throw ParseError("'atoms' must be an object", "atoms");
  for (const auto& [key, value] : atoms.items()) {
    if (static_cast<int>(key.size()) != num_vars) {
      throw ParseError("atom key '" + key + "' must have " + std::to_string(num_vars) +
                           " characters",
                       "atoms");
    }
    size_t atom = 0;
    for (int v = 0; v < num_vars; ++v) {
      if (key[v] == '+') {
        atom |= size_t{1} << v;
      } else if (key[v] != '-') {
        throw ParseError("atom key characters must be '+' or '-'", "atoms");
      }
    }
    pmf.prob(atom) = rational_field(value, "atoms['" + key + "']");
  }
  return pmf;
}

}  // namespace cyclex
