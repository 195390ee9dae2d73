// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "fuzzproc/fuzzproc.hpp"
#include "oracle.hpp"

using namespace fuzzproc;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

int failures = 0;

void report(const char* id, const char* title, const Outcome& o, const std::string& summary) {
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << "  " << title << ": " << summary << '\n';
  for (const auto& n : o.notes) std::cout << "         - " << n << '\n';
  if (!o.pass) ++failures;
}

Scope exhaustive(std::size_t n, const std::string& grid = "0,1/2,1") {
  return Scope{n, Grid::parse(grid), Exhaustive{}};
}

std::string mode_label(std::optional<EqualityMode> m) { return m ? std::string(to_string(*m)) : "n/a"; }

/// Pinned verdict shape: only the associativity of product and sum and the
/// support-only absorption by TOP / BOT fail, and only at value level.
bool expect_counterexample(LawId law, std::optional<EqualityMode> mode) {
  if (mode != EqualityMode::ValueLevel) return false;
  return law == LawId::P1_ii || law == LawId::P1_ii_dual || law == LawId::P3_iii ||
         law == LawId::P3_iii_dual;
}

oracle::Mode oracle_mode(std::optional<EqualityMode> m) {
  if (!m) return oracle::Mode::None;
  return *m == EqualityMode::ValueLevel ? oracle::Mode::Value : oracle::Mode::Support;
}

std::vector<Counterexample> collected;

// ------------------------------------------------------------------- AC1

void ac1() {
  Outcome o;
  const auto u = fixtures::abc();
  const auto p = fixtures::P(), q = fixtures::Q();
  const auto op = oracle::from(p), oq = oracle::from(q);
  struct Row {
    const char* name;
    FuzzyProcess got;
    FuzzyProcess table;
    oracle::Proc reference;
  };
  using fixtures::proc;
  std::vector<Row> rows = {
      {"product", product(p, q), proc(u, {{"a", "3/5"}}, {{"a", "2/5"}, {"b", "3/10"}, {"c", "7/10"}}),
       oracle::product(op, oq)},
      {"sum", sum(p, q), proc(u, {{"a", "3/5"}, {"b", "3/10"}, {"c", "7/10"}}, {{"a", "2/5"}}),
       oracle::sum(op, oq)},
      {"meet", meet(p, q), proc(u, {{"a", "4/5"}, {"b", "1/2"}, {"c", "9/10"}}, {{"a", "2/5"}}),
       oracle::meet(op, oq)},
      {"join", join(p, q), proc(u, {{"a", "3/5"}}, {{"a", "1"}, {"b", "3/10"}, {"c", "7/10"}}),
       oracle::join(op, oq)},
      {"reflect", reflect(p), proc(u, {{"a", "2/5"}, {"c", "7/10"}}, {{"a", "4/5"}, {"b", "1/2"}}),
       oracle::reflect(op)},
      {"product with TOP", product(p, top(u)), proc(u, {}, {{"a", "2/5"}, {"b", "1/2"}, {"c", "7/10"}}),
       oracle::product(op, oracle::top(3))},
      {"sum with BOT", sum(p, bottom(u)), proc(u, {{"a", "4/5"}, {"b", "1/2"}, {"c", "7/10"}}, {}),
       oracle::sum(op, oracle::bottom(3))},
      {"reflect of product", reflect(product(p, q)),
       proc(u, {{"a", "2/5"}, {"b", "3/10"}, {"c", "7/10"}}, {{"a", "3/5"}}),
       oracle::reflect(oracle::product(op, oq))},
  };
  for (const auto& r : rows) {
    o.require(r.got == r.table, std::string(r.name) + " differs from the table");
    o.require(oracle::from(r.got) == r.reference, std::string(r.name) + " differs from the reference evaluator");
  }
  report("AC1", "fixture algebra table", o, std::to_string(rows.size()) + " rows exact against table and reference");
}

// ------------------------------------------------------------------- AC2

void ac2() {
  Outcome o;
  std::size_t verdicts = 0;
  double ternary_seconds = 0;
  for (std::size_t n : {1u, 2u}) {
    auto procs = oracle::all_processes(static_cast<int>(n), {0, 30, 60});
    for (const auto& info : kLaws) {
      for (auto requested : {EqualityMode::ValueLevel, EqualityMode::SupportLevel}) {
        auto mode = effective_mode(info.id, requested);
        if (!mode && requested == EqualityMode::SupportLevel) continue;  // boolean: once
        const auto started = std::chrono::steady_clock::now();
        auto v = check_law(info.id, requested, exhaustive(n));
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - started;
        if (info.arity == 3 && n == 2) ternary_seconds = std::max(ternary_seconds, took.count());
        ++verdicts;

        std::string tag = std::string(info.name) + " [" + mode_label(v.mode) + "] |E|=" + std::to_string(n);
        auto ref = oracle::check(std::string(info.name), static_cast<int>(info.arity), oracle_mode(v.mode), procs);
        o.require(v.verified() == ref.holds, tag + ": engine and reference evaluator disagree");
        o.require(v.verified() != expect_counterexample(info.id, v.mode),
                  tag + (v.verified() ? ": verified, counterexample expected" : ": unexpected counterexample"));
        if (v.verified()) {
          o.require(std::get<Verified>(v.result).cases_checked == ref.cases, tag + ": case count differs");
        } else {
          collected.push_back(*v.counterexample());
        }
      }
    }
  }

  // The associativity witness over grid {0, 1/5, 1}.
  auto one = [](const char* d, const char* g) {
    return FuzzyProcess::from_dense(Universe({"x"}), {Grade::parse(d)}, {Grade::parse(g)});
  };
  const std::vector<FuzzyProcess> known = {one("1", "1/5"), one("1", "0"), one("0", "1")};
  auto v = check_law(LawId::P1_ii, EqualityMode::ValueLevel, exhaustive(1, "0,1/5,1"));
  std::string witness_note = "no counterexample";
  if (const auto* cex = v.counterexample()) {
    collected.push_back(*cex);
    bool same = cex->witnesses == known;
    bool equivalent = self_validates(*cex);
    o.require(same || equivalent, "P1.ii witness over {0,1/5,1} neither matches nor self-validates");
    witness_note = same ? "known P1.ii witness found" : "equivalent P1.ii witness found";
    auto violation = evaluate_law(LawId::P1_ii, known, EqualityMode::ValueLevel);
    o.require(violation && violation->lhs == one("0", "1/5") && violation->rhs == one("0", "1"),
              "known P1.ii witness does not give (0, 1/5) vs (0, 1)");
  } else {
    o.require(false, "P1.ii verified over {0,1/5,1}");
  }
  o.require(ternary_seconds < 10.0, "ternary law took " + std::to_string(ternary_seconds) + " s at |E|=2");

  std::ostringstream s;
  s << verdicts << " verdicts match reference and pinned shape; " << witness_note
    << "; slowest ternary law at |E|=2 " << static_cast<int>(ternary_seconds * 1000) << " ms";
  report("AC2", "exhaustive law suite", o, s.str());
}

// ------------------------------------------------------------------- AC3

void ac3() {
  Outcome o;
  const std::vector<LawId> laws = {LawId::CLOSURE_blocking_free, LawId::ORDER_reflexive,
                                   LawId::ORDER_transitive,      LawId::ORDER_antisymmetric,
                                   LawId::ORDER_bounds,          LawId::LATTICE_glb,
                                   LawId::LATTICE_lub};
  std::uint64_t exhaustive_cases = 0, sampled = 0;
  const Scope random_scope{5, Grid::parse("0,1/4,1/2,3/4,1"), Randomized{10000, 2024}};
  for (auto law : laws) {
    auto e = check_law(law, EqualityMode::ValueLevel, exhaustive(2));
    o.require(e.verified(), std::string(law_name(law)) + " failed exhaustively at |E|=2");
    if (e.verified()) exhaustive_cases += std::get<Verified>(e.result).cases_checked;
    auto r = check_law(law, EqualityMode::ValueLevel, random_scope);
    o.require(r.verified(), std::string(law_name(law)) + " failed on random samples at |E|=5");
    if (r.verified()) {
      auto n = std::get<Verified>(r.result).cases_checked;
      o.require(n >= 10000, std::string(law_name(law)) + " drew fewer than 10^4 samples");
      sampled += n;
    }
  }
  report("AC3", "closure and order properties", o,
         std::to_string(laws.size()) + " laws, " + std::to_string(exhaustive_cases) + " exhaustive cases, " +
             std::to_string(sampled) + " random samples, 0 counterexamples");
}

// ------------------------------------------------------------------- AC4

using Sides = std::pair<FuzzyProcess, FuzzyProcess>;

/// Both sides of each equational law, rebuilt from the public operators.
Sides replay(LawId law, const std::vector<FuzzyProcess>& w) {
  const auto& p = w.at(0);
  const auto u = p.universe();
  switch (law) {
    case LawId::P1_i: return {product(p, p), p};
    case LawId::P1_ii: return {product(p, product(w.at(1), w.at(2))), product(product(p, w.at(1)), w.at(2))};
    case LawId::P1_iii: return {product(p, w.at(1)), product(w.at(1), p)};
    case LawId::P1_iv: return {product(p, omega(u)), p};
    case LawId::P1_i_dual: return {sum(p, p), p};
    case LawId::P1_ii_dual: return {sum(p, sum(w.at(1), w.at(2))), sum(sum(p, w.at(1)), w.at(2))};
    case LawId::P1_iii_dual: return {sum(p, w.at(1)), sum(w.at(1), p)};
    case LawId::P1_iv_dual: return {sum(p, omega(u)), p};
    case LawId::P2_i: return {reflect(reflect(p)), p};
    case LawId::P3_i: return {meet(p, top(u)), p};
    case LawId::P3_ii: return {join(p, top(u)), top(u)};
    case LawId::P3_iii: return {product(p, top(u)), top(u)};
    case LawId::P3_iv: return {reflect(top(u)), bottom(u)};
    case LawId::P3_i_dual: return {join(p, bottom(u)), p};
    case LawId::P3_ii_dual: return {meet(p, bottom(u)), bottom(u)};
    case LawId::P3_iii_dual: return {sum(p, bottom(u)), bottom(u)};
    case LawId::P4_i: return {reflect(product(p, w.at(1))), sum(reflect(p), reflect(w.at(1)))};
    case LawId::P4_ii: return {reflect(sum(p, w.at(1))), product(reflect(p), reflect(w.at(1)))};
    case LawId::P4_iii: return {reflect(meet(p, w.at(1))), join(reflect(p), reflect(w.at(1)))};
    case LawId::P4_iv: return {reflect(join(p, w.at(1))), meet(reflect(p), reflect(w.at(1)))};
    default: throw std::logic_error("no replay for " + std::string(law_name(law)));
  }
}

bool genuine(const Counterexample& c, std::string& why) {
  if (!c.mode) {
    why = "boolean law counterexample";
    return false;
  }
  auto [lhs, rhs] = replay(c.law, c.witnesses);
  if (!(lhs == c.lhs && rhs == c.rhs)) {
    why = "stored sides differ from replay";
    return false;
  }
  auto at = first_difference(lhs, rhs, *c.mode);
  if (!at) {
    why = "sides agree on replay";
    return false;
  }
  if (lhs.universe().label(*at) != c.first_differing_label) {
    why = "first differing label is wrong";
    return false;
  }
  std::vector<oracle::Proc> w;
  for (const auto& x : c.witnesses) w.push_back(oracle::from(x));
  while (w.size() < 3) w.push_back(w.front());
  if (oracle::law_holds(std::string(law_name(c.law)), oracle_mode(c.mode), w[0], w[1], w[2])) {
    why = "reference evaluator says the law holds";
    return false;
  }
  return true;
}

void ac4() {
  Outcome o;
  std::size_t replayed = 0, shrunk_labels = 0;
  for (const auto& c : collected) {
    std::string why;
    std::string tag = std::string(law_name(c.law)) + " [" + mode_label(c.mode) + "]";
    o.require(genuine(c, why), tag + ": " + why);
    auto s = shrink_counterexample(c);
    o.require(genuine(s, why), tag + " shrunk: " + why);
    o.require(s.witnesses.front().universe().size() <= c.witnesses.front().universe().size(),
              tag + ": shrinking grew the universe");
    shrunk_labels += s.witnesses.front().universe().size();
    replayed += 2;
  }
  o.require(!collected.empty(), "no counterexamples to replay");
  report("AC4", "counterexample self-validation", o,
         std::to_string(replayed) + " counterexamples (" + std::to_string(collected.size()) +
             " reported + shrunk) replayed as genuine violations");
}

// ------------------------------------------------------------------- AC5

void ac5() {
  Outcome o;
  const auto u = Universe::generated(2);
  std::size_t round_trips = 0;
  for (const auto& p : enumerate_processes(u, Grid::standard(), true)) {
    auto text = lang::format_script(u, {{"p", p}});
    try {
      auto report = lang::evaluate(lang::parse_script(text));
      o.require(report.find("p") && *report.find("p") == p, "round trip changed " + text);
      ++round_trips;
    } catch (const std::exception& e) {
      o.require(false, "round trip threw " + std::string(e.what()));
    }
  }
  o.require(round_trips == 64, "expected 64 processes");

  std::size_t located = 0, syntax = 0;
  const auto cases = corpus::error_cases();
  for (const auto& c : cases) {
    try {
      lang::evaluate(lang::parse_script(c.text));
      o.require(false, c.name + ": accepted");
    } catch (const Error& e) {
      bool ok = e.kind() == c.kind && e.position() && e.position()->line == c.line &&
                e.position()->column == c.column;
      o.require(ok, c.name + ": got " + e.what());
      if (ok) ++located;
      if (ok && c.kind == ErrorKind::ParseError) {
        o.require(dynamic_cast<const ParseError*>(&e) != nullptr, c.name + ": not a ParseError object");
        ++syntax;
      }
    } catch (...) {
      o.require(false, c.name + ": crashed with a non-library exception");
    }
  }
  report("AC5", "parser round trip and error corpus", o,
         std::to_string(round_trips) + "/64 round trips; " + std::to_string(located) + "/" +
             std::to_string(cases.size()) + " malformed inputs rejected at the right line/column (" +
             std::to_string(syntax) + " syntax, " + std::to_string(located - syntax) + " semantic)");
}

// ------------------------------------------------------------------- AC6

std::string capture(const std::string& args) {
  std::string cmd = std::string(FUZZPROC_CLI_PATH) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return "<popen failed>";
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return out + "\n<exit " + std::to_string(status) + ">";
}

void ac6() {
  Outcome o;
  const std::vector<std::string> runs = {
      "--json laws --universe-size 2 --threads 4",
      "--json laws --universe-size 2 --threads 1",
      "--json laws --universe-size 5 --grid 0,1/4,1/2,3/4,1 --samples 10000 --seed 42 --threads 4",
      "--json laws --universe-size 5 --grid 0,1/4,1/2,3/4,1 --samples 10000 --seed 42 --threads 1",
  };
  std::vector<std::string> outputs;
  for (const auto& args : runs) {
    auto first = capture(args);
    auto second = capture(args);
    o.require(first == second, "two runs differ: " + args);
    o.require(first.find("\"verdicts\"") != std::string::npos, "no JSON report from: " + args);
    outputs.push_back(first);
  }
  o.require(outputs[0] == outputs[1], "exhaustive output depends on thread count");
  o.require(outputs[2] == outputs[3], "randomized output depends on thread count");
  report("AC6", "deterministic laws --json", o,
         std::to_string(runs.size()) + " flag sets run twice each, byte-identical, also across 1 vs 4 threads");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5}, {"AC6", ac6}};
  for (const auto& [id, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      Outcome o;
      o.require(false, std::string("aborted: ") + e.what());
      report(id, "criterion", o, "exception");
    }
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " acceptance criteria passed\n";
  return failures == 0 ? 0 : 1;
}
