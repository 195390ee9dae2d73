#pragma once

// Command-line front end: check, eval, classify, laws. Exit codes are
// 0 = success, 1 = a check failed, 2 = usage, parse or input error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzproc/engine.hpp"
#include "fuzzproc/proclang.hpp"
#include "fuzzproc/report.hpp"

namespace fuzzproc::cli {

enum ExitStatus : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string set_text(const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out += ", ";
    out += labels[i];
  }
  return out + "}";
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct LawsOptions {
  std::size_t universe_size = 1;
  std::string grid = "0,1/2,1";
  std::string laws;
  std::string modes;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::string search = "auto";
  std::string expect_path;
  unsigned threads = 0;
  std::uint64_t budget = EngineConfig{}.budget;
  bool timing = false;
};

inline int cmd_check(const std::string& path, bool json, std::ostream& out) {
  auto report = lang::evaluate(lang::parse_script(read_file(path)));
  if (json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    std::size_t failed = 0;
    for (const auto& a : report.assertions) {
      out << "assertion " << a.index << " (" << lang::to_string(a.relation) << "): ";
      if (a.holds) {
        out << "holds\n";
      } else {
        ++failed;
        out << "FAILS at " << a.witness_label.value_or("?") << '\n';
      }
    }
    out << report.assertions.size() << " assertion(s), " << failed << " failed\n";
  }
  return report.all_hold() ? kOk : kCheckFailed;
}

inline int cmd_eval(const std::string& path, const std::string& expr_text, bool json,
                    std::ostream& out) {
  auto report = lang::evaluate(lang::parse_script(read_file(path)));
  auto expr = lang::parse_expression(expr_text, report.names());
  auto value = lang::evaluate_expr(*expr, report);
  if (json) {
    out << to_json(value).dump(2) << '\n';
  } else {
    out << lang::format_process("result", value) << '\n';
  }
  return kOk;
}

inline int cmd_classify(const std::string& path, const std::string& name, bool json,
                        std::ostream& out) {
  auto report = lang::evaluate(lang::parse_script(read_file(path)));
  const auto* p = report.find(name);
  if (p == nullptr) throw Error(ErrorKind::UnknownIdentifier, "'" + name + "' is not defined");
  auto c = classify(*p);
  auto flags = process_flags(*p);
  if (json) {
    Json doc = to_json(c);
    doc["robust"] = flags.is_robust;
    doc["chaotic"] = flags.is_chaotic;
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "process " << name << '\n'
      << "  goals:      " << set_text(c.goals) << '\n'
      << "  escapes:    " << set_text(c.escapes) << '\n'
      << "  rejects:    " << set_text(c.rejects) << '\n'
      << "  blockings:  " << set_text(c.blockings) << '\n'
      << "  violations: " << set_text(c.violations) << '\n'
      << "robust: " << (flags.is_robust ? "yes" : "no")
      << ", chaotic: " << (flags.is_chaotic ? "yes" : "no") << '\n';
  return kOk;
}

/// Expected verdict kind per law and mode. The file maps a law name either
/// to a kind ("verified" / "counterexample") for every mode, or to an object
/// keyed by "value", "support" or "n/a". Unlisted entries expect "verified".
class Expectations {
 public:
  static Expectations load(const std::string& path) {
    Expectations e;
    Json doc;
    try {
      doc = Json::parse(read_file(path));
    } catch (const Json::exception& ex) {
      throw Error(ErrorKind::InvalidArgument, "expectations file: " + std::string(ex.what()));
    }
    if (!doc.is_object()) throw Error(ErrorKind::InvalidArgument, "expectations must be an object");
    for (const auto& [key, value] : doc.items()) {
      auto law = parse_law(key);
      if (!law) throw Error(ErrorKind::InvalidArgument, "expectations: unknown law '" + key + "'");
      if (value.is_string()) {
        e.all_modes_[*law] = kind(value.get<std::string>());
      } else if (value.is_object()) {
        for (const auto& [mode, k] : value.items()) {
          if (mode != "value" && mode != "support" && mode != "n/a") {
            throw Error(ErrorKind::InvalidArgument, "expectations: unknown mode '" + mode + "'");
          }
          if (!k.is_string()) throw Error(ErrorKind::InvalidArgument, "expectations: kind must be a string");
          e.per_mode_[{*law, mode}] = kind(k.get<std::string>());
        }
      } else {
        throw Error(ErrorKind::InvalidArgument, "expectations: bad entry for '" + key + "'");
      }
    }
    return e;
  }

  /// true when a counterexample is expected.
  bool expects_counterexample(LawId law, const std::string& mode) const {
    if (auto it = per_mode_.find({law, mode}); it != per_mode_.end()) return it->second;
    if (auto it = all_modes_.find(law); it != all_modes_.end()) return it->second;
    return false;
  }

 private:
  static bool kind(const std::string& text) {
    if (text == "verified") return false;
    if (text == "counterexample") return true;
    throw Error(ErrorKind::InvalidArgument, "expectations: unknown verdict kind '" + text + "'");
  }

  std::map<LawId, bool> all_modes_;
  std::map<std::pair<LawId, std::string>, bool> per_mode_;
};

inline void print_verdict_text(const LawVerdict& v, std::ostream& out) {
  out << std::left << std::setw(24) << law_name(v.law) << std::setw(9) << mode_name(v.mode);
  if (const auto* ok = std::get_if<Verified>(&v.result)) {
    out << "verified        " << ok->cases_checked << " cases ("
        << (v.scope.exhaustive() ? "exhaustive" : "randomized") << ")\n";
    return;
  }
  const auto& cex = std::get<Counterexample>(v.result);
  out << "COUNTEREXAMPLE  at " << cex.first_differing_label << ": " << cex.note << '\n';
  static constexpr const char* kNames[] = {"p", "q", "r"};
  out << "    " << lang::format_universe(cex.lhs.universe()) << '\n';
  for (std::size_t i = 0; i < cex.witnesses.size(); ++i) {
    out << "    " << lang::format_process(kNames[i], cex.witnesses[i]) << '\n';
  }
  out << "    " << lang::format_process("lhs", cex.lhs) << '\n';
  out << "    " << lang::format_process("rhs", cex.rhs) << '\n';
}

inline int cmd_laws(const LawsOptions& opt, bool json, std::ostream& out, std::ostream& err) {
  if (opt.universe_size == 0) throw Error(ErrorKind::InvalidArgument, "universe size must be positive");
  Grid grid = Grid::parse(opt.grid);

  std::vector<LawId> laws;
  if (opt.laws.empty()) {
    laws = all_laws();
  } else {
    for (const auto& name : split_list(opt.laws)) {
      auto law = parse_law(name);
      if (!law) throw Error(ErrorKind::InvalidArgument, "unknown law '" + name + "'");
      laws.push_back(*law);
    }
  }

  std::vector<EqualityMode> modes;
  if (opt.modes.empty()) {
    modes = {EqualityMode::ValueLevel, EqualityMode::SupportLevel};
  } else {
    for (const auto& m : split_list(opt.modes)) {
      if (m == "value") modes.push_back(EqualityMode::ValueLevel);
      else if (m == "support") modes.push_back(EqualityMode::SupportLevel);
      else throw Error(ErrorKind::InvalidArgument, "unknown mode '" + m + "' (value, support)");
    }
  }

  if (opt.search != "auto" && opt.search != "exhaustive" && opt.search != "randomized") {
    throw Error(ErrorKind::InvalidArgument, "search must be auto, exhaustive or randomized");
  }
  if (opt.samples && *opt.samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be positive");

  std::optional<Expectations> expectations;
  if (!opt.expect_path.empty()) expectations = Expectations::load(opt.expect_path);

  EngineConfig config;
  config.budget = opt.budget;
  config.threads = opt.threads;
  const Randomized randomized{opt.samples.value_or(10000), opt.seed};

  SuiteReport report;
  const auto started = std::chrono::steady_clock::now();
  for (auto law : laws) {
    Scope scope{opt.universe_size, grid, Exhaustive{}};
    bool fits = exhaustive_work(law, scope, config.budget).has_value();
    if (opt.search == "randomized" || (opt.search == "auto" && (opt.samples || !fits))) {
      scope.mode = randomized;
    }
    SuiteConfig suite{{scope}, {law}, modes};
    auto part = run_suite(suite, config);
    for (auto& v : part.verdicts) report.verdicts.push_back(std::move(v));
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  std::size_t mismatches = 0;
  Json mismatch_list = Json::array();
  if (expectations) {
    for (const auto& v : report.verdicts) {
      bool expected_cex = expectations->expects_counterexample(v.law, mode_name(v.mode));
      if (expected_cex == v.verified()) {
        ++mismatches;
        std::string line = std::string(law_name(v.law)) + " [" + mode_name(v.mode) + "]: expected " +
                           (expected_cex ? "counterexample" : "verified") + ", got " +
                           (v.verified() ? "verified" : "counterexample");
        err << "expectation mismatch: " << line << '\n';
        mismatch_list.push_back(line);
      }
    }
  }

  if (json) {
    Json doc = to_json(report, opt.timing);
    if (expectations) doc["expectation_mismatches"] = std::move(mismatch_list);
    out << doc.dump(2) << '\n';
  } else {
    out << std::left << std::setw(24) << "law" << std::setw(9) << "mode" << "verdict\n";
    for (const auto& v : report.verdicts) print_verdict_text(v, out);
    out << report.verdicts.size() << " verdict(s), " << report.counterexamples()
        << " counterexample(s)";
    if (opt.timing) out << ", " << report.elapsed.count() << " ms";
    out << '\n';
  }

  if (expectations) return mismatches == 0 ? kOk : kCheckFailed;
  return report.counterexamples() == 0 ? kOk : kCheckFailed;
}

}  // namespace detail

/// Runs the command line. Reports go to `out`, diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for the algebra of fuzzy processes", "fuzzproc"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  std::string file, expr, name;
  auto* check = app.add_subcommand("check", "Evaluate a script and report its assertions");
  check->add_option("file", file, "Script file")->required();
  check->fallthrough();

  auto* eval = app.add_subcommand("eval", "Evaluate an expression over a script's bindings");
  eval->add_option("file", file, "Script file")->required();
  eval->add_option("expr", expr, "Expression, e.g. \"p * q\"")->required();
  eval->fallthrough();

  auto* cls = app.add_subcommand("classify", "Classify the executions of a named process");
  cls->add_option("file", file, "Script file")->required();
  cls->add_option("name", name, "Process or let-binding name")->required();
  cls->fallthrough();

  detail::LawsOptions lo;
  auto* laws = app.add_subcommand("laws", "Check the law catalogue over a finite scope");
  laws->add_option("--universe-size", lo.universe_size, "Number of executions")->capture_default_str();
  laws->add_option("--grid", lo.grid, "Comma-separated grades containing 0 and 1")->capture_default_str();
  laws->add_option("--laws", lo.laws, "Comma-separated law ids (default: all)");
  laws->add_option("--modes", lo.modes, "Comma-separated equality modes: value,support");
  laws->add_option("--samples", lo.samples, "Randomized samples per law");
  laws->add_option("--seed", lo.seed, "Seed for randomized search")->capture_default_str();
  laws->add_option("--search", lo.search, "auto, exhaustive or randomized")->capture_default_str();
  laws->add_option("--expect", lo.expect_path, "JSON file of expected verdicts");
  laws->add_option("--threads", lo.threads, "Worker threads (0 = all cores)")->capture_default_str();
  laws->add_option("--budget", lo.budget, "Exhaustive work limit")->capture_default_str();
  laws->add_flag("--timing", lo.timing, "Report elapsed time");
  laws->fallthrough();

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (check->parsed()) return detail::cmd_check(file, json, out);
    if (eval->parsed()) return detail::cmd_eval(file, expr, json, out);
    if (cls->parsed()) return detail::cmd_classify(file, name, json, out);
    return detail::cmd_laws(lo, json, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace fuzzproc::cli
