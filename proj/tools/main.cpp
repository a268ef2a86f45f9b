#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cyclex/criteria.hpp"
#include "cyclex/errors.hpp"
#include "cyclex/ingest.hpp"
#include "cyclex/lp_oracle.hpp"
#include "cyclex/model.hpp"
#include "cyclex/presets.hpp"
#include "cyclex/verify.hpp"

namespace {

// Stable scripting contract.
constexpr int kExitNoncontextual = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitResourceLimit = 3;
constexpr int kExitContextual = 10;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cyclex::ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

cyclex::SystemSpec load_spec(const std::string& path, bool counts) {
  const std::string text = read_file(path);
  if (!counts) return cyclex::parse_spec(text);
  const auto records = cyclex::parse_counts(text);
  int n = 0;
  for (const auto& r : records) n = std::max(n, r.context);
  auto spec = cyclex::counts_to_spec(records, std::max(n, 2));
  cyclex::require_valid(spec);
  return spec;
}

void print_report_text(const cyclex::AnalysisReport& report, std::ostream& out) {
  auto line = [&out](const char* label, const cyclex::Rational& value) {
    out << label << cyclex::decimal_string(value) << " (= " << cyclex::fraction_string(value)
        << ")\n";
  };
  out << "n:                   " << report.n << "\n";
  out << "contextual:          " << (report.contextual ? "yes" : "no") << "\n";
  line("cntx:                ", report.cntx);
  line("delta0:              ", report.delta0);
  line("delta_min:           ", report.delta_min);
  line("s1_bunches:          ", report.s1_bunches);
  line("main_criterion_lhs:  ", report.main_criterion_lhs);
  out << "argmax_branch:       "
      << (report.argmax_branch == cyclex::AnalysisReport::Branch::kS1Excess ? "s1_excess"
                                                                            : "marginals")
      << "\n";
  out << "canonical_signs:    ";
  for (int s : report.canonical_signs) out << (s > 0 ? " +1" : " -1");
  out << "\noptimal_connections:";
  for (const auto& v : report.optimal_connections.values) {
    out << " " << cyclex::fraction_string(v);
  }
  out << "\n";
}

int run_analyze(const std::string& path, bool counts, const std::string& format) {
  const auto spec = load_spec(path, counts);
  const auto report = cyclex::analyze(spec);
  if (format == "text") {
    print_report_text(report, std::cout);
  } else {
    std::cout << cyclex::emit_report(report) << "\n";
  }
  return report.contextual ? kExitContextual : kExitNoncontextual;
}

int run_witness(const std::string& path, bool counts, int limit) {
  const auto spec = load_spec(path, counts);
  const cyclex::OracleLimits limits{limit};
  const auto result = cyclex::min_delta(spec, limits);

  nlohmann::json doc;
  doc["delta"] = cyclex::fraction_string(result.delta_min);
  doc["delta_decimal"] = cyclex::decimal_string(result.delta_min);
  doc["delta_min"] = cyclex::fraction_string(result.delta_min);
  doc["delta_min_decimal"] = cyclex::decimal_string(result.delta_min);
  nlohmann::json achieved = nlohmann::json::array();
  nlohmann::json achieved_decimal = nlohmann::json::array();
  for (int i = 0; i < spec.size(); ++i) {
    const auto conn = result.witness.pair_mean(cyclex::var_of_v(i, spec.size()),
                                               cyclex::var_of_w(i, spec.size()));
    achieved.push_back(cyclex::fraction_string(conn));
    achieved_decimal.push_back(cyclex::decimal_string(conn));
  }
  doc["achieved_connections"] = std::move(achieved);
  doc["achieved_connections_decimal"] = std::move(achieved_decimal);
  doc["witness"] = nlohmann::json::parse(cyclex::emit_witness(result.witness));
  std::cout << doc.dump() << "\n";

  const auto delta0 = cyclex::delta_zero(spec);
  return result.delta_min > delta0 ? kExitContextual : kExitNoncontextual;
}

int run_verify_command(int n, int trials, std::uint64_t seed, int limit,
                       const std::string& format) {
  cyclex::VerifyOptions options;
  options.n = n;
  options.trials = trials;
  options.seed = seed;
  options.limits.max_system_n = limit;
  const auto summary = cyclex::run_verify(options);

  if (format == "text") {
    std::cout << "n=" << summary.n << " trials=" << summary.trials << " seed=" << summary.seed
              << "\npassed: " << summary.passed << "/" << summary.trials
              << "\ncontextual: " << summary.contextual_count
              << "\nnonidentity specs: " << summary.nonidentity_count << "\ncases:";
    for (const auto& [name, count] : summary.case_counts) {
      std::cout << " " << name << "=" << count;
    }
    std::cout << "\n";
    if (summary.first_failure) {
      std::cout << "first failure: trial " << summary.first_failure->trial << " check "
                << summary.first_failure->check << "\n  " << summary.first_failure->detail
                << "\n  " << summary.first_failure->spec_json << "\n";
    }
  } else {
    nlohmann::json doc;
    doc["n"] = summary.n;
    doc["trials"] = summary.trials;
    doc["seed"] = summary.seed;
    doc["passed"] = summary.passed;
    doc["failed"] = summary.failed;
    doc["contextual_count"] = summary.contextual_count;
    doc["nonidentity_count"] = summary.nonidentity_count;
    doc["case_counts"] = summary.case_counts;
    if (summary.first_failure) {
      doc["first_failure"] = {{"trial", summary.first_failure->trial},
                              {"check", summary.first_failure->check},
                              {"detail", summary.first_failure->detail},
                              {"spec", nlohmann::json::parse(summary.first_failure->spec_json)}};
    } else {
      doc["first_failure"] = nullptr;
    }
    std::cout << doc.dump() << "\n";
  }
  if (summary.first_failure) {
    std::cerr << "verify: FAILED check '" << summary.first_failure->check << "' on trial "
              << summary.first_failure->trial << "; offending system:\n"
              << summary.first_failure->spec_json << "\n";
    return kExitVerifyFailure;
  }
  return kExitNoncontextual;
}

int run_preset(const std::string& name) {
  const auto spec = cyclex::preset_spec(name);
  if (name == "chsh-tsirelson") {
    std::cerr << "note: products use the rational stand-in 7071/10000 for 1/sqrt(2)\n";
  }
  std::cout << cyclex::emit_spec(spec) << "\n";
  return kExitNoncontextual;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact contextuality analysis for cyclic systems of binary measurements"};
  app.require_subcommand(1);

  std::string path;
  std::string format = "json";
  std::string preset_name;
  bool counts = false;
  int limit = 7;
  int verify_n = 4;
  int verify_trials = 0;
  std::uint64_t verify_seed = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a system document");
  analyze_cmd->add_option("file", path, "system document (JSON)")->required();
  analyze_cmd->add_flag("--counts", counts, "parse the file as a counts table (CSV)");
  analyze_cmd->add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* witness_cmd = app.add_subcommand("witness", "Emit an optimal coupling");
  witness_cmd->add_option("file", path, "system document (JSON)")->required();
  witness_cmd->add_flag("--counts", counts, "parse the file as a counts table (CSV)");
  witness_cmd->add_option("--limit", limit, "largest system size the solver accepts");

  auto* verify_cmd = app.add_subcommand("verify", "Randomized formula-vs-solver campaign");
  verify_cmd->add_option("--n", verify_n, "system size")->required();
  verify_cmd->add_option("--trials", verify_trials, "number of random systems")->required();
  verify_cmd->add_option("--seed", verify_seed, "rng seed");
  verify_cmd->add_option("--limit", limit, "largest system size the solver accepts");
  verify_cmd->add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* preset_cmd = app.add_subcommand("preset", "Emit a built-in system document");
  preset_cmd->add_option("name", preset_name, "preset name")
      ->required()
      ->check(CLI::IsMember(cyclex::preset_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (*analyze_cmd) return run_analyze(path, counts, format);
    if (*witness_cmd) return run_witness(path, counts, limit);
    if (*verify_cmd) {
      if (verify_trials < 1) {
        std::cerr << "verify: --trials must be at least 1\n";
        return kExitInvalidInput;
      }
      if (verify_n < 2 || verify_n > limit) {
        std::cerr << "verify: --n must be between 2 and the solver limit\n";
        return kExitInvalidInput;
      }
      return run_verify_command(verify_n, verify_trials, verify_seed, limit, format);
    }
    if (*preset_cmd) return run_preset(preset_name);
  } catch (const cyclex::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const cyclex::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const cyclex::ParseError& e) {
    std::cerr << "error: " << e.what();
    if (!e.location().empty()) std::cerr << " (" << e.location() << ")";
    std::cerr << "\n";
    return kExitInvalidInput;
  } catch (const cyclex::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
