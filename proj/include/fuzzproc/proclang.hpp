#pragma once

// Script language for declaring a universe and processes and asserting
// identities between operator expressions:
//
//   universe a b c
//   process p { delta: {a=4/5, b=1/2}; gamma: {a=2/5, c=7/10}; }
//   let r = -(p * q)
//   assert r == -p + -q
//
// Operators: unary "-" (reflect) binds tightest, then "*" (product) and "&"
// (meet), then "+" (sum) and "|" (join); binary levels are left-associative.
// Relations: "==" (equal grades), "~=" (equal supports), "<=" (refinement).

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzproc/algebra.hpp"
#include "fuzzproc/error.hpp"
#include "fuzzproc/grade.hpp"
#include "fuzzproc/process.hpp"

namespace fuzzproc::lang {

// ---------------------------------------------------------------- tokens

enum class Tok {
  Ident, Number,
  KwUniverse, KwProcess, KwLet, KwAssert, KwDelta, KwGamma, KwOmega, KwTop, KwBot,
  LBrace, RBrace, LParen, RParen, Colon, Semi, Comma, Assign,
  Star, Amp, Plus, Bar, Minus,
  EqEq, TildeEq, LessEq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Number: return "number '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

namespace detail {

inline std::optional<Tok> keyword(std::string_view word) {
  static constexpr std::pair<std::string_view, Tok> kKeywords[] = {
      {"universe", Tok::KwUniverse}, {"process", Tok::KwProcess}, {"let", Tok::KwLet},
      {"assert", Tok::KwAssert},     {"delta", Tok::KwDelta},     {"gamma", Tok::KwGamma},
      {"OMEGA", Tok::KwOmega},       {"TOP", Tok::KwTop},         {"BOT", Tok::KwBot},
  };
  for (const auto& [text, kind] : kKeywords) {
    if (text == word) return kind;
  }
  return std::nullopt;
}

inline bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
inline bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace detail

/// Splits UTF-8 text into tokens. Columns count code points, not bytes.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  SourcePos pos;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < src.size(); ++k, ++i) {
      unsigned char c = static_cast<unsigned char>(src[i]);
      if (c == '\n') {
        ++pos.line;
        pos.column = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++pos.column;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (detail::ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && detail::ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      out.push_back({detail::keyword(word).value_or(Tok::Ident), word, start});
      advance(j - i);
      continue;
    }
    if (detail::digit(c)) {
      std::size_t j = i;
      while (j < src.size() && detail::digit(src[j])) ++j;
      if (j < src.size() && (src[j] == '/' || src[j] == '.')) {
        std::size_t k = j + 1;
        while (k < src.size() && detail::digit(src[k])) ++k;
        if (k == j + 1) {
          throw ParseError(start, "'" + std::string(src.substr(i, k - i)) + "'",
                           {"digits after '" + std::string(1, src[j]) + "'"});
        }
        j = k;
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "==" || two == "~=" || two == "<=") {
      Tok kind = two == "==" ? Tok::EqEq : two == "~=" ? Tok::TildeEq : Tok::LessEq;
      out.push_back({kind, std::string(two), start});
      advance(2);
      continue;
    }
    std::optional<Tok> single;
    switch (c) {
      case '{': single = Tok::LBrace; break;
      case '}': single = Tok::RBrace; break;
      case '(': single = Tok::LParen; break;
      case ')': single = Tok::RParen; break;
      case ':': single = Tok::Colon; break;
      case ';': single = Tok::Semi; break;
      case ',': single = Tok::Comma; break;
      case '=': single = Tok::Assign; break;
      case '*': single = Tok::Star; break;
      case '&': single = Tok::Amp; break;
      case '+': single = Tok::Plus; break;
      case '|': single = Tok::Bar; break;
      case '-': single = Tok::Minus; break;
      default: break;
    }
    if (!single) {
      std::size_t len = 1;
      unsigned char lead = static_cast<unsigned char>(c);
      if (lead >= 0xF0) len = 4;
      else if (lead >= 0xE0) len = 3;
      else if (lead >= 0xC0) len = 2;
      throw ParseError(start, "character '" + std::string(src.substr(i, len)) + "'", {});
    }
    out.push_back({*single, std::string(1, c), start});
    advance(1);
  }
  // End of input is reported at the last real token so that a dangling
  // operator is the thing pointed at.
  out.push_back({Tok::End, "", out.empty() ? pos : out.back().pos});
  return out;
}

// ------------------------------------------------------------------- AST

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct VarRef {
  std::string name;
};
struct ConstRef {
  ConstantKind kind;
};
struct Reflect {
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<VarRef, ConstRef, Reflect, Binary> node;
  SourcePos pos;
};

enum class Relation { ValueEq, SupportEq, Refines };

inline constexpr std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::ValueEq: return "==";
    case Relation::SupportEq: return "~=";
    case Relation::Refines: return "<=";
  }
  return "?";
}

struct MembershipEntry {
  std::string label;
  Rational grade;
  SourcePos pos;
};

struct UniverseDecl {
  std::vector<std::string> labels;
  SourcePos pos;
};

struct ProcessDef {
  std::string name;
  std::vector<MembershipEntry> delta;
  std::vector<MembershipEntry> gamma;
  SourcePos pos;
};

struct LetBinding {
  std::string name;
  ExprPtr value;
  SourcePos pos;
};

/// `assert e` without a relation is stored as `e ~= OMEGA`: every execution
/// of e is a goal.
struct Assertion {
  ExprPtr lhs;
  Relation relation;
  ExprPtr rhs;
  SourcePos pos;
};

using Statement = std::variant<UniverseDecl, ProcessDef, LetBinding, Assertion>;

struct Script {
  std::vector<Statement> statements;

  const UniverseDecl& universe_decl() const { return std::get<UniverseDecl>(statements.front()); }
  Universe universe() const { return Universe(universe_decl().labels); }
};

/// Fully parenthesised prefix rendering, e.g. "(+ (- p) (- q))".
inline std::string to_sexpr(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, ConstRef>) {
          return n.kind == ConstantKind::Omega ? "OMEGA" : n.kind == ConstantKind::Top ? "TOP" : "BOT";
        } else if constexpr (std::is_same_v<T, Reflect>) {
          return "(- " + to_sexpr(*n.operand) + ")";
        } else {
          return "(" + std::string(symbol(n.op)) + " " + to_sexpr(*n.lhs) + " " + to_sexpr(*n.rhs) + ")";
        }
      },
      e.node);
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  /// Syntax only; scoping is checked by validate().
  Script parse_script() {
    Script script;
    while (peek().kind != Tok::End) {
      switch (peek().kind) {
        case Tok::KwUniverse: script.statements.emplace_back(parse_universe()); break;
        case Tok::KwProcess: script.statements.emplace_back(parse_process()); break;
        case Tok::KwLet: script.statements.emplace_back(parse_let()); break;
        case Tok::KwAssert: script.statements.emplace_back(parse_assert()); break;
        default: fail(statement_starts(true));
      }
    }
    return script;
  }

  ExprPtr parse_lone_expression() {
    auto e = parse_expr();
    if (peek().kind != Tok::End) fail({"'*'", "'&'", "'+'", "'|'", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return tokens_[cursor_]; }
  const Token& take() { return tokens_[cursor_ < tokens_.size() - 1 ? cursor_++ : cursor_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().pos, describe(peek()), std::move(expected));
  }

  const Token& expect(Tok kind, std::string what) {
    if (peek().kind != kind) fail({std::move(what)});
    return take();
  }

  static std::vector<std::string> statement_starts(bool allow_end) {
    std::vector<std::string> out{"'universe'", "'process'", "'let'", "'assert'"};
    if (allow_end) out.push_back("end of input");
    return out;
  }

  UniverseDecl parse_universe() {
    UniverseDecl decl{{}, take().pos};
    std::set<std::string> seen;
    if (peek().kind != Tok::Ident) fail({"identifier"});
    while (peek().kind == Tok::Ident) {
      const Token& label = take();
      if (!seen.insert(label.text).second) {
        throw Error(ErrorKind::DuplicateLabel, "label '" + label.text + "' declared twice",
                    label.pos);
      }
      decl.labels.push_back(label.text);
    }
    return decl;
  }

  std::vector<MembershipEntry> parse_membership() {
    std::vector<MembershipEntry> entries;
    expect(Tok::LBrace, "'{'");
    if (peek().kind == Tok::RBrace) {
      take();
      return entries;
    }
    while (true) {
      const Token& label = expect(Tok::Ident, "identifier");
      MembershipEntry entry{label.text, Rational(0), label.pos};
      expect(Tok::Assign, "'='");
      const Token& number = expect(Tok::Number, "number");
      auto value = parse_rational(number.text);
      if (!value) throw ParseError(number.pos, describe(number), {"grade"});
      entry.grade = *value;
      entries.push_back(std::move(entry));
      if (peek().kind == Tok::Comma) {
        take();
        continue;
      }
      if (peek().kind == Tok::RBrace) {
        take();
        return entries;
      }
      fail({"','", "'}'"});
    }
  }

  ProcessDef parse_process() {
    ProcessDef def;
    def.pos = take().pos;
    const Token& name = expect(Tok::Ident, "identifier");
    def.name = name.text;
    expect(Tok::LBrace, "'{'");
    expect(Tok::KwDelta, "'delta'");
    expect(Tok::Colon, "':'");
    def.delta = parse_membership();
    expect(Tok::Semi, "';'");
    expect(Tok::KwGamma, "'gamma'");
    expect(Tok::Colon, "':'");
    def.gamma = parse_membership();
    expect(Tok::Semi, "';'");
    expect(Tok::RBrace, "'}'");
    return def;
  }

  LetBinding parse_let() {
    LetBinding let;
    let.pos = take().pos;
    const Token& name = expect(Tok::Ident, "identifier");
    let.name = name.text;
    expect(Tok::Assign, "'='");
    let.value = parse_expr();
    end_statement(false);
    return let;
  }

  Assertion parse_assert() {
    Assertion a;
    a.pos = take().pos;
    a.lhs = parse_expr();
    switch (peek().kind) {
      case Tok::EqEq: a.relation = Relation::ValueEq; break;
      case Tok::TildeEq: a.relation = Relation::SupportEq; break;
      case Tok::LessEq: a.relation = Relation::Refines; break;
      default:
        end_statement(true);
        a.relation = Relation::SupportEq;
        a.rhs = std::make_shared<const Expr>(Expr{ConstRef{ConstantKind::Omega}, a.pos});
        return a;
    }
    take();
    a.rhs = parse_expr();
    end_statement(false);
    return a;
  }

  /// After an expression only an operator (or relation) or the start of the
  /// next statement may follow.
  void end_statement(bool relation_allowed) {
    switch (peek().kind) {
      case Tok::End: case Tok::KwUniverse: case Tok::KwProcess: case Tok::KwLet: case Tok::KwAssert:
        return;
      default: break;
    }
    std::vector<std::string> expected{"'*'", "'&'", "'+'", "'|'"};
    if (relation_allowed) {
      for (const char* r : {"'=='", "'~='", "'<='"}) expected.emplace_back(r);
    }
    for (auto& s : statement_starts(true)) expected.push_back(std::move(s));
    fail(std::move(expected));
  }

  ExprPtr parse_expr() {
    auto lhs = parse_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Bar) {
      const Token& op = take();
      auto rhs = parse_term();
      lhs = std::make_shared<const Expr>(
          Expr{Binary{op.kind == Tok::Plus ? BinaryOp::Sum : BinaryOp::Join, lhs, rhs}, op.pos});
    }
    return lhs;
  }

  ExprPtr parse_term() {
    auto lhs = parse_factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Amp) {
      const Token& op = take();
      auto rhs = parse_factor();
      lhs = std::make_shared<const Expr>(
          Expr{Binary{op.kind == Tok::Star ? BinaryOp::Product : BinaryOp::Meet, lhs, rhs}, op.pos});
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Minus: {
        take();
        auto operand = parse_factor();
        return std::make_shared<const Expr>(Expr{Reflect{operand}, t.pos});
      }
      case Tok::Ident: {
        take();
        return std::make_shared<const Expr>(Expr{VarRef{t.text}, t.pos});
      }
      case Tok::KwOmega: take(); return std::make_shared<const Expr>(Expr{ConstRef{ConstantKind::Omega}, t.pos});
      case Tok::KwTop: take(); return std::make_shared<const Expr>(Expr{ConstRef{ConstantKind::Top}, t.pos});
      case Tok::KwBot: take(); return std::make_shared<const Expr>(Expr{ConstRef{ConstantKind::Bottom}, t.pos});
      case Tok::LParen: {
        take();
        auto inner = parse_expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail({"'-'", "identifier", "'OMEGA'", "'TOP'", "'BOT'", "'('"});
    }
  }

  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
};

namespace detail {

using NameSet = std::set<std::string, std::less<>>;

inline void check_names(const Expr& e, const NameSet& defined) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          if (!defined.contains(n.name)) {
            throw Error(ErrorKind::UnknownIdentifier, "'" + n.name + "' is not defined", e.pos);
          }
        } else if constexpr (std::is_same_v<T, Reflect>) {
          check_names(*n.operand, defined);
        } else if constexpr (std::is_same_v<T, Binary>) {
          check_names(*n.lhs, defined);
          check_names(*n.rhs, defined);
        }
      },
      e.node);
}

inline SourcePos statement_pos(const Statement& s) {
  return std::visit([](const auto& st) { return st.pos; }, s);
}

}  // namespace detail

/// Scoping rules: exactly one universe, declared first; names defined
/// before use and never redefined.
inline void validate(const Script& script) {
  if (script.statements.empty()) {
    throw Error(ErrorKind::MissingUniverse, "script has no universe declaration", SourcePos{});
  }
  if (!std::holds_alternative<UniverseDecl>(script.statements.front())) {
    throw Error(ErrorKind::MissingUniverse, "statement before the universe declaration",
                detail::statement_pos(script.statements.front()));
  }
  detail::NameSet defined;
  auto define = [&](const std::string& name, SourcePos pos) {
    if (!defined.insert(name).second) {
      throw Error(ErrorKind::DuplicateDefinition, "'" + name + "' is already defined", pos);
    }
  };
  for (std::size_t i = 1; i < script.statements.size(); ++i) {
    const auto& stmt = script.statements[i];
    if (const auto* u = std::get_if<UniverseDecl>(&stmt)) {
      throw Error(ErrorKind::DuplicateDefinition, "a script declares exactly one universe", u->pos);
    } else if (const auto* def = std::get_if<ProcessDef>(&stmt)) {
      define(def->name, def->pos);
    } else if (const auto* let = std::get_if<LetBinding>(&stmt)) {
      detail::check_names(*let->value, defined);
      define(let->name, let->pos);
    } else if (const auto* a = std::get_if<Assertion>(&stmt)) {
      detail::check_names(*a->lhs, defined);
      detail::check_names(*a->rhs, defined);
    }
  }
}

/// Parses and validates a script. Syntax errors take precedence over
/// scoping errors.
inline Script parse_script(std::string_view text) {
  auto script = Parser(text).parse_script();
  validate(script);
  return script;
}

/// Parses a lone expression whose free names must be in `known`.
inline ExprPtr parse_expression(std::string_view text, const std::vector<std::string>& known) {
  auto e = Parser(text).parse_lone_expression();
  detail::check_names(*e, detail::NameSet(known.begin(), known.end()));
  return e;
}

// ------------------------------------------------------------- evaluator

struct AssertionResult {
  std::size_t index;  // 1-based, in script order
  Relation relation;
  bool holds;
  std::optional<std::string> witness_label;
};

struct EvalReport {
  Universe universe;
  std::vector<std::pair<std::string, FuzzyProcess>> bindings;  // definition order
  std::vector<AssertionResult> assertions;

  const FuzzyProcess* find(std::string_view name) const {
    for (const auto& [n, p] : bindings) {
      if (n == name) return &p;
    }
    return nullptr;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& b : bindings) out.push_back(b.first);
    return out;
  }

  bool all_hold() const {
    for (const auto& a : assertions) {
      if (!a.holds) return false;
    }
    return true;
  }
};

inline FuzzyProcess evaluate_expr(const Expr& e, const EvalReport& env) {
  return std::visit(
      [&](const auto& n) -> FuzzyProcess {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          if (const auto* p = env.find(n.name)) return *p;
          throw Error(ErrorKind::UnknownIdentifier, "'" + n.name + "' is not defined", e.pos);
        } else if constexpr (std::is_same_v<T, ConstRef>) {
          return constant(n.kind, env.universe);
        } else if constexpr (std::is_same_v<T, Reflect>) {
          return reflect(evaluate_expr(*n.operand, env));
        } else {
          return apply(n.op, evaluate_expr(*n.lhs, env), evaluate_expr(*n.rhs, env));
        }
      },
      e.node);
}

namespace detail {

inline GradePairs to_pairs(const Universe& u, const std::vector<MembershipEntry>& entries,
                           std::string_view channel) {
  GradePairs out;
  std::set<std::string, std::less<>> seen;
  for (const auto& e : entries) {
    if (!u.contains(e.label)) {
      throw Error(ErrorKind::UnknownLabel, "label '" + e.label + "' is not in the universe", e.pos);
    }
    if (!seen.insert(e.label).second) {
      throw Error(ErrorKind::DuplicateLabel,
                  "label '" + e.label + "' listed twice in " + std::string(channel), e.pos);
    }
    try {
      out.emplace_back(e.label, Grade(e.grade));
    } catch (const Error& err) {
      throw Error(err.kind(), err.detail(), e.pos);
    }
  }
  return out;
}

}  // namespace detail

/// Builds every process (Strict blocking policy), evaluates let bindings and
/// checks assertions in order. Failed assertions do not stop evaluation.
inline EvalReport evaluate(const Script& script) {
  EvalReport report{script.universe(), {}, {}};
  std::size_t assertion_index = 0;
  for (const auto& stmt : script.statements) {
    if (const auto* def = std::get_if<ProcessDef>(&stmt)) {
      auto delta = detail::to_pairs(report.universe, def->delta, "delta");
      auto gamma = detail::to_pairs(report.universe, def->gamma, "gamma");
      try {
        report.bindings.emplace_back(
            def->name, make_process(report.universe, delta, gamma, BlockingPolicy::Strict));
      } catch (const Error& err) {
        throw Error(err.kind(), "process '" + def->name + "': " + err.detail(), def->pos);
      }
    } else if (const auto* let = std::get_if<LetBinding>(&stmt)) {
      report.bindings.emplace_back(let->name, evaluate_expr(*let->value, report));
    } else if (const auto* a = std::get_if<Assertion>(&stmt)) {
      auto lhs = evaluate_expr(*a->lhs, report);
      auto rhs = evaluate_expr(*a->rhs, report);
      std::optional<std::size_t> at;
      switch (a->relation) {
        case Relation::ValueEq: at = first_difference(lhs, rhs, EqualityMode::ValueLevel); break;
        case Relation::SupportEq: at = first_difference(lhs, rhs, EqualityMode::SupportLevel); break;
        case Relation::Refines: at = first_refinement_failure(lhs, rhs); break;
      }
      AssertionResult result{++assertion_index, a->relation, !at.has_value(), std::nullopt};
      if (at) result.witness_label = report.universe.label(*at);
      report.assertions.push_back(std::move(result));
    }
  }
  return report;
}

// ---------------------------------------------------------------- printer

namespace detail {

inline void format_membership(std::ostringstream& os, const FuzzySubset& s) {
  os << '{';
  bool first = true;
  for (const auto& [label, grade] : s.entries()) {
    if (!first) os << ", ";
    first = false;
    os << label << '=' << grade;
  }
  os << '}';
}

}  // namespace detail

/// Canonical one-line process definition, labels in universe order and
/// grades as reduced fractions.
inline std::string format_process(std::string_view name, const FuzzyProcess& p) {
  std::ostringstream os;
  os << "process " << name << " { delta: ";
  detail::format_membership(os, p.delta());
  os << "; gamma: ";
  detail::format_membership(os, p.gamma());
  os << "; }";
  return os.str();
}

inline std::string format_universe(const Universe& u) {
  std::string out = "universe";
  for (const auto& label : u.labels()) out += " " + label;
  return out;
}

/// A complete script declaring `u` and each named process.
inline std::string format_script(const Universe& u,
                                 const std::vector<std::pair<std::string, FuzzyProcess>>& defs) {
  std::string out = format_universe(u) + "\n";
  for (const auto& [name, p] : defs) out += format_process(name, p) + "\n";
  return out;
}

}  // namespace fuzzproc::lang
